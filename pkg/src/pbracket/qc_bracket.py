"""The three-term quantum-classical bracket on hybrid observables, the
bracket computed through the universal route, the classicality gap, and the
effective Planck constant.

Term conventions.  For hybrid K1, K2 write [K1,K2] for the star commutator
and c_j for its h2^j coefficient.  The bracket is assembled as

    term1 = (1/(i h)) * c_0([K1, K2])
    term2 = (1/2) * (po(K1,K2) - po(K2,K1))      at h2 = 0
    term3 = -i * c_1([K1, K2]) - term2

where po is the ordered Poisson sum below.  The h2-linear part of the star
commutator already contains the full antisymmetrized Poisson content plus
the genuine jet correction, so term3 is that coefficient with the ordered
Poisson part split out; the three terms then sum to
(1/(i h)) c_0 - i c_1, with term2 isolated for inspection.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

from .errors import DivisionByZero, NotLocalized, SignatureMismatch, SingularTransformation
from .scalars import CR_I, CR_MINUS_I, CRat, Scalar, S_ONE, S_ZERO, scalar
from .group_algebra import Element
from .pmech import ClassicalPoly, poisson_classical, universal_bracket, weyl_symbol
from .representations import (
    HybridObservable,
    WeylOperator,
    multiply_hybrid,
    qc_algebra,
    rep_qc,
)

__all__ = [
    "poisson_ordered",
    "qc_bracket",
    "qc_bracket_terms",
    "bracket_via_universal",
    "classicality_gap",
    "h_eff",
]


def _plain_product(a: HybridObservable, b: HybridObservable) -> HybridObservable:
    """Weyl parts in written order, classical parts multiplied commutatively
    with no star correction; jet degree > 1 discarded."""
    a._check(b)
    acc: Dict = {}
    for (w1, c1, j1), v1 in a.terms.items():
        for (w2, c2, j2), v2 in b.terms.items():
            if j1 + j2 > 1:
                continue
            base = v1 * v2
            cm = tuple(x + y for x, y in zip(c1, c2))
            for wm, wc in a.algebra.mul_mono(w1, w2):
                key = (wm, cm, j1 + j2)
                got = acc.get(key, S_ZERO) + base * wc
                if got.is_zero:
                    acc.pop(key, None)
                else:
                    acc[key] = got
    return HybridObservable(a.algebra, a.dof, a.convention, acc)


def poisson_ordered(K1: HybridObservable, K2: HybridObservable) -> HybridObservable:
    """One ordering of the hybrid Poisson sum:

        sum_i dK1/dq_i * dK2/dp_i - dK1/dp_i * dK2/dq_i,

    derivatives on the classical parts only, operator factors multiplied in
    the written order."""
    K1._check(K2)
    out = HybridObservable.zero_like(K1)
    for i in range(K1.dof):
        out = out + _plain_product(K1.derivative_q(i), K2.derivative_p(i))
        out = out - _plain_product(K1.derivative_p(i), K2.derivative_q(i))
    return out


def _inv_ih() -> Scalar:
    return S_ONE / (scalar(CR_I) * Scalar.symbol("h"))


def qc_bracket_terms(K1: HybridObservable, K2: HybridObservable,
                     hbar: Optional[Union[int, Fraction]] = None,
                     ) -> Tuple[HybridObservable, HybridObservable, HybridObservable]:
    """The three bracket terms separately, each at jet degree zero."""
    comm = multiply_hybrid(K1, K2) - multiply_hybrid(K2, K1)
    term1 = comm.jet_part(0).scale(_inv_ih())
    term2 = (poisson_ordered(K1, K2) - poisson_ordered(K2, K1)).jet_part(0).scale(Fraction(1, 2))
    term3 = comm.jet_part(1).scale(CR_MINUS_I) - term2
    if hbar is not None:
        term1 = term1.substitute(h=Fraction(hbar))
        term2 = term2.substitute(h=Fraction(hbar))
        term3 = term3.substitute(h=Fraction(hbar))
    return term1, term2, term3


def qc_bracket(K1: HybridObservable, K2: HybridObservable,
               hbar: Optional[Union[int, Fraction]] = None) -> HybridObservable:
    """Sum of the three terms; the result has jet degree zero."""
    t1, t2, t3 = qc_bracket_terms(K1, K2, hbar)
    return t1 + t2 + t3


def bracket_via_universal(k1: Element, k2: Element,
                          hbar: Optional[Union[int, Fraction]] = None) -> HybridObservable:
    """Quantum-classical image of the universal bracket, evaluated at h2 = 0."""
    if k1.signature != k2.signature:
        raise SignatureMismatch("elements built over different signatures")
    out = rep_qc(universal_bracket(k1, k2)).jet_part(0)
    if hbar is not None:
        out = out.substitute(h=Fraction(hbar))
    return out


def _ordered_weyl_transport(k_sig, f: ClassicalPoly) -> WeylOperator:
    """Replace each commuting monomial q^a p^b of a sector-1 polynomial with
    the Weyl monomial in the calibrated order."""
    alg = qc_algebra(k_sig)
    conv = k_sig.convention
    anti = conv.anti_normal_order
    if not anti and conv.gamma_unit != CRat.of(-1):
        raise ValueError("ordered transport is undefined for this convention tuple")
    n = k_sig.dof
    out = WeylOperator.zero(alg)
    for mono, c in f.terms.items():
        op = WeylOperator.identity(alg)
        for i in range(n):
            a, b = mono[2 * i], mono[2 * i + 1]
            Q = WeylOperator.generator(alg, "Q", i)
            P = WeylOperator.generator(alg, "P", i)
            op = op * (P ** b * Q ** a if anti else Q ** a * P ** b)
        out = out + op.scale(c)
    return out


def classicality_gap(k1: Element, k2: Element,
                     hbar: Optional[Union[int, Fraction]] = None) -> HybridObservable:
    """Difference between the quantum-classical bracket image and the naive
    ordered transport of the classical Poisson bracket.

    Both inputs must be sector-1 localized and in the image of the symmetric
    mechanisation.  A nonzero result exhibits operator content of the
    bracket that no relabeling of commuting monomials reproduces.
    """
    if k1.signature != k2.signature:
        raise SignatureMismatch("elements built over different signatures")
    for k in (k1, k2):
        if k.uses_sector(2):
            raise NotLocalized("classicality_gap requires sector-1-only inputs")
    f1 = weyl_symbol(k1)
    f2 = weyl_symbol(k2)
    pb = poisson_classical(f1, f2)
    surrogate = HybridObservable.from_weyl(
        _ordered_weyl_transport(k1.signature, pb), k1.signature.dof, k1.signature.convention)
    out = bracket_via_universal(k1, k2) - surrogate
    if hbar is not None:
        out = out.substitute(h=Fraction(hbar))
    return out


def h_eff(h1: Union[int, Fraction], h2: Union[int, Fraction]) -> Fraction:
    """Effective Planck constant: 1/h_eff = 1/h1 + 1/h2.

    The transformation is singular when h1*h2 = 0, and the defining formula
    divides by zero when h1 + h2 = 0; both cases raise."""
    a, b = Fraction(h1), Fraction(h2)
    if a * b == 0:
        raise SingularTransformation("h_eff is singular when h1*h2 = 0")
    if a + b == 0:
        raise DivisionByZero("h_eff denominator h1 + h2 is zero")
    return a * b / (a + b)
