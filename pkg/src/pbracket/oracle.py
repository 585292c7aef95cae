"""Independent numerical checks for the convolution algebra and its
representations.

Two oracles, built on different mathematics than the symbolic engine:

* vector-field oracle: realizes each generator as a left-invariant vector
  field acting on polynomials in the group coordinates
  (s1, s2, x_{1,1}, y_{1,1}, ...).  The product of two elements must act as
  the composition of their actions.  This checks the reordering arithmetic in
  ``multiply`` against nothing but the Leibniz rule.

* matrix oracle: realizes canonical pairs as truncated harmonic-oscillator
  ladder matrices and compares operator identities entrywise on the columns
  that truncation leaves exact.

Both produce :class:`OracleReport` rows with a deterministic input hash so a
verification run is reproducible byte for byte.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from .errors import DimensionTooSmall
from .scalars import CRat, CR_ZERO, CR_ONE, CR_I, Scalar, S_ONE, scalar
from .group_algebra import Element, GroupSignature, commutator, multiply
from .representations import WeylOperator, qc_algebra
from . import sampling

__all__ = [
    "GroupPoly",
    "vector_field_action",
    "matrix_realize",
    "matrix_max_error",
    "OracleReport",
    "check_vector_field_suite",
    "check_algebra_laws",
    "check_matrix_suite",
    "oracle_check",
]


# ---------------------------------------------------------------------------
# polynomials in group coordinates


class GroupPoly:
    """Polynomial on the group: coordinates ordered like Element exponents,
    (s1, s2, x_{1,1}, y_{1,1}, ..., x_{2,n}, y_{2,n})."""

    __slots__ = ("sig", "terms")

    def __init__(self, sig: GroupSignature, terms: Dict[Tuple[int, ...], CRat]):
        self.sig = sig
        self.terms = {m: c for m, c in terms.items() if not c.is_zero}

    @classmethod
    def zero(cls, sig: GroupSignature) -> "GroupPoly":
        return cls(sig, {})

    @classmethod
    def monomial(cls, sig: GroupSignature, mono: Tuple[int, ...],
                 coeff: CRat = CR_ONE) -> "GroupPoly":
        if len(mono) != sig.width:
            raise ValueError("monomial width does not match signature")
        return cls(sig, {tuple(mono): coeff})

    def __add__(self, other: "GroupPoly") -> "GroupPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, CR_ZERO) + c
        return GroupPoly(self.sig, out)

    def __sub__(self, other: "GroupPoly") -> "GroupPoly":
        return self + other.scale(CRat.of(-1))

    def scale(self, factor: CRat) -> "GroupPoly":
        return GroupPoly(self.sig, {m: c * factor for m, c in self.terms.items()})

    def diff(self, idx: int) -> "GroupPoly":
        out: Dict[Tuple[int, ...], CRat] = {}
        for m, c in self.terms.items():
            if m[idx]:
                key = m[:idx] + (m[idx] - 1,) + m[idx + 1:]
                out[key] = out.get(key, CR_ZERO) + c * m[idx]
        return GroupPoly(self.sig, out)

    def mul_var(self, idx: int) -> "GroupPoly":
        out: Dict[Tuple[int, ...], CRat] = {}
        for m, c in self.terms.items():
            key = m[:idx] + (m[idx] + 1,) + m[idx + 1:]
            out[key] = out.get(key, CR_ZERO) + c
        return GroupPoly(self.sig, out)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupPoly):
            return NotImplemented
        return self.sig == other.sig and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.sig, tuple(sorted(self.terms.items()))))


def _act_generator(sig: GroupSignature, idx: int, f: GroupPoly) -> GroupPoly:
    """Left-invariant vector field of generator ``idx`` applied to ``f``.

    S_sigma   -> d/ds_sigma
    X_{s,i}   -> d/dx - eps*(y/2) d/ds_sigma
    Y_{s,i}   -> d/dy + eps*(x/2) d/ds_sigma
    """
    if idx < 2:
        return f.diff(idx)
    eps = sig.convention.eps_comm
    half = CRat.of(Fraction(1, 2))
    slot = (idx - 2) // 2
    sector = sig.slot_sector(slot)
    s_idx = sector - 1
    ds = f.diff(s_idx)
    if (idx - 2) % 2 == 0:
        y_idx = idx + 1
        return f.diff(idx) + ds.mul_var(y_idx).scale(CR_ZERO - eps * half)
    x_idx = idx - 1
    return f.diff(idx) + ds.mul_var(x_idx).scale(eps * half)


def vector_field_action(e: Element, f: GroupPoly) -> GroupPoly:
    """Apply the differential-operator realization of ``e`` to ``f``.

    A monomial S1^a S2^b X^c Y^d ... acts as the composition of the fields in
    written order, the rightmost generator hitting ``f`` first.  Coefficients
    must be constants (no formal Planck symbols survive numeric checking).
    """
    if e.signature != f.sig:
        raise ValueError("element and polynomial signatures differ")
    total = GroupPoly.zero(f.sig)
    for mono, coeff in e.terms.items():
        g = f
        word: List[int] = []
        for idx, power in enumerate(mono):
            word.extend([idx] * power)
        for idx in reversed(word):
            g = _act_generator(e.signature, idx, g)
        total = total + g.scale(coeff.as_crat())
    return total


# ---------------------------------------------------------------------------
# truncated ladder-matrix realization


def _ladder(n: int) -> np.ndarray:
    a = np.zeros((n, n), dtype=complex)
    for j in range(1, n):
        a[j - 1, j] = math.sqrt(j)
    return a


def _canonical_pair(gamma: complex, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Matrices Q, P with [Q, P] = gamma * I exactly on low columns.

    Requires gamma purely imaginary and nonzero; built from oscillator
    ladders scaled by |Im gamma| with the sign carried by P.
    """
    if abs(gamma.real) > 1e-14 or gamma.imag == 0:
        raise ValueError(f"canonical-pair weight must be purely imaginary, got {gamma}")
    t = gamma.imag
    a = _ladder(n)
    ad = a.conj().T
    root = math.sqrt(abs(t) / 2.0)
    q = root * (a + ad)
    p = (1.0 if t > 0 else -1.0) * 1j * root * (ad - a)
    return q, p


def matrix_realize(w: WeylOperator, hbar: float, n: int,
                   h1: Optional[float] = None, h2: Optional[float] = None) -> np.ndarray:
    """Truncated matrix of ``w`` on the oscillator basis, dimension n per
    degree of freedom.

    Each canonical pair gets an independent tensor factor; identities fill the
    others.  Raises DimensionTooSmall when the truncation cannot hold even one
    exact column for the operator degree.
    """
    deg = w.degree()
    if n < deg + 2:
        raise DimensionTooSmall(
            f"need matrix dimension >= degree + 2 = {deg + 2}, got {n}")
    hv = float(hbar)
    h1v = hv if h1 is None else float(h1)
    h2v = hv if h2 is None else float(h2)
    pairs = []
    for gamma in w.algebra.gammas:
        gval = complex(gamma.evalf(h=hv, h1=h1v, h2=h2v))
        pairs.append(_canonical_pair(gval, n))
    dofs = w.algebra.dofs
    dim = n ** dofs
    total = np.zeros((dim, dim), dtype=complex)
    eye = np.eye(n, dtype=complex)
    for mono, coeff in w.terms.items():
        factors = []
        for d in range(dofs):
            qd, pd = pairs[d]
            a, b = mono[2 * d], mono[2 * d + 1]
            m = eye
            if a:
                m = m @ np.linalg.matrix_power(qd, a)
            if b:
                m = m @ np.linalg.matrix_power(pd, b)
            factors.append(m)
        block = factors[0]
        for m in factors[1:]:
            block = np.kron(block, m)
        total = total + complex(coeff.evalf(h=hv, h1=h1v, h2=h2v)) * block
    return total


def matrix_max_error(wa: WeylOperator, wb: WeylOperator, hbar: float, n: int,
                     h1: Optional[float] = None, h2: Optional[float] = None) -> float:
    """Max entrywise deviation between the realizations of two operators,
    restricted to the columns the truncation computes exactly.

    A degree-d operator maps basis column j into levels <= j + d per factor,
    so columns with every factor index < n - d are free of truncation error.
    """
    if wa.algebra is not wb.algebra and wa.algebra != wb.algebra:
        raise ValueError("operators live in different algebras")
    deg = max(wa.degree(), wb.degree())
    if n < deg + 2:
        raise DimensionTooSmall(
            f"need matrix dimension >= degree + 2 = {deg + 2}, got {n}")
    ma = matrix_realize(wa, hbar, n, h1, h2)
    mb = matrix_realize(wb, hbar, n, h1, h2)
    dofs = wa.algebra.dofs
    keep = n - deg
    cols = [0]
    for _ in range(dofs):
        cols = [c * n + j for c in cols for j in range(keep)]
    diff = ma[:, cols] - mb[:, cols]
    return float(np.max(np.abs(diff))) if diff.size else 0.0


# ---------------------------------------------------------------------------
# reports and suites


@dataclass(frozen=True)
class OracleReport:
    check: str
    inputs_hash: str
    status: str
    max_abs_error: float

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "inputs-hash": self.inputs_hash,
            "status": self.status,
            "max-abs-error": self.max_abs_error,
        }

    @property
    def ok(self) -> bool:
        return self.status == "pass"


def _hash_inputs(*parts: object) -> str:
    digest = hashlib.sha256("|".join(repr(p) for p in parts).encode()).hexdigest()
    return digest[:16]


def check_vector_field_suite(sig: GroupSignature, seed: int, pairs: int = 100,
                             max_degree: int = 4, probes: int = 30) -> OracleReport:
    """Product-versus-composition check on random element pairs.

    Exact rational arithmetic throughout: any mismatch is a hard failure, so
    max_abs_error is 0.0 on pass and 1.0 on failure.
    """
    rng = random.Random(seed)
    failures = 0
    for _ in range(pairs):
        a = sampling.rand_element(rng, sig, max_degree=max_degree)
        b = sampling.rand_element(rng, sig, max_degree=max_degree)
        ab = multiply(a, b)
        probe_deg = a.degree() + b.degree() + 2
        for _ in range(probes):
            mono = sampling.rand_group_monomial(rng, sig, probe_deg)
            f = GroupPoly.monomial(sig, mono)
            lhs = vector_field_action(ab, f)
            rhs = vector_field_action(a, vector_field_action(b, f))
            if lhs != rhs:
                failures += 1
    status = "pass" if failures == 0 else "fail"
    return OracleReport(
        check="vector-field-composition",
        inputs_hash=_hash_inputs("vf", sig.dof, str(sig.convention), seed,
                                 pairs, max_degree, probes),
        status=status,
        max_abs_error=0.0 if failures == 0 else 1.0,
    )


def check_algebra_laws(sig: GroupSignature, seed: int, assoc: int = 80,
                       jacobi: int = 40, antisym: int = 40,
                       idem: int = 40) -> OracleReport:
    """Associativity, Jacobi, antisymmetry and normal-form idempotence on
    random elements.  Exact arithmetic; pass means every instance held."""
    rng = random.Random(seed)
    failures = 0
    for _ in range(assoc):
        a = sampling.rand_element(rng, sig, max_degree=4, terms=2)
        b = sampling.rand_element(rng, sig, max_degree=4, terms=2)
        c = sampling.rand_element(rng, sig, max_degree=4, terms=2)
        if multiply(multiply(a, b), c) != multiply(a, multiply(b, c)):
            failures += 1
    for _ in range(jacobi):
        a = sampling.rand_element(rng, sig, max_degree=3, terms=2)
        b = sampling.rand_element(rng, sig, max_degree=3, terms=2)
        c = sampling.rand_element(rng, sig, max_degree=3, terms=2)
        total = (commutator(a, commutator(b, c))
                 + commutator(b, commutator(c, a))
                 + commutator(c, commutator(a, b)))
        if not total.is_zero:
            failures += 1
    for _ in range(antisym):
        a = sampling.rand_element(rng, sig, max_degree=4, terms=2)
        b = sampling.rand_element(rng, sig, max_degree=4, terms=2)
        if not (commutator(a, b) + commutator(b, a)).is_zero:
            failures += 1
    for _ in range(idem):
        a = sampling.rand_element(rng, sig, max_degree=4, terms=3)
        if Element(sig, dict(a.terms)) != a:
            failures += 1
    status = "pass" if failures == 0 else "fail"
    return OracleReport(
        check="algebra-laws",
        inputs_hash=_hash_inputs("laws", sig.dof, str(sig.convention), seed,
                                 assoc, jacobi, antisym, idem),
        status=status,
        max_abs_error=0.0 if failures == 0 else 1.0,
    )


def check_matrix_suite(sig: GroupSignature, hbar: float = 1.0, n: int = 32,
                       tol: float = 1e-10) -> List[OracleReport]:
    """Operator identities on truncated ladder matrices.

    Checks, in the single-Planck algebra at the given hbar:
      * canonical commutation [Q, P] = gamma I
      * symbolic normal forms of short words against direct numeric
        matrix products of the untouched factors
      * the biquadratic identity (1/(i hbar))[Q^2, P^2] against its
        closed form 4*gu*QP - 2*gu^2*i*hbar, gu the commutator unit
    """
    alg = qc_algebra(sig)
    q = WeylOperator.generator(alg, "Q", 0)
    p = WeylOperator.generator(alg, "P", 0)
    ident = WeylOperator.identity(alg)
    gamma = alg.gammas[0]
    reports = []

    comm = q * p - p * q
    err = matrix_max_error(comm, ident.scale(gamma), hbar, n)
    reports.append(OracleReport(
        check="matrix-canonical-commutator",
        inputs_hash=_hash_inputs("mx-ccr", sig.dof, str(sig.convention), hbar, n, tol),
        status="pass" if err <= tol else "fail",
        max_abs_error=err,
    ))

    gval = complex(gamma.evalf(h=float(hbar), h1=float(hbar), h2=float(hbar)))
    qm, pm = _canonical_pair(gval, n)
    words = [("q", "p"), ("p", "q"), ("q", "q", "p", "p"),
             ("p", "p", "q", "q"), ("q", "p", "q", "p")]
    worst = 0.0
    for word in words:
        sym = ident
        num = np.eye(n, dtype=complex)
        for ch in word:
            sym = sym * (q if ch == "q" else p)
            num = num @ (qm if ch == "q" else pm)
        realized = matrix_realize(sym, hbar, n)
        keep = n - len(word)
        worst = max(worst, float(np.max(np.abs(realized[:, :keep] - num[:, :keep]))))
    reports.append(OracleReport(
        check="matrix-word-products",
        inputs_hash=_hash_inputs("mx-words", sig.dof, str(sig.convention),
                                 hbar, n, tol, words),
        status="pass" if worst <= tol else "fail",
        max_abs_error=worst,
    ))

    ih = scalar(CR_I) * Scalar.symbol("h")
    lhs = (q * q * p * p - p * p * q * q).scale(S_ONE / ih)
    gu = sig.convention.gamma_unit
    mono_qp = [0] * alg.width
    mono_qp[0] = mono_qp[1] = 1
    qp = WeylOperator(alg, {tuple(mono_qp): S_ONE})
    const = CRat(Fraction(0), Fraction(-2)) * gu * gu
    rhs = qp.scale(gu * CRat.of(4)) + ident.scale(scalar(const) * Scalar.symbol("h"))
    err = matrix_max_error(lhs, rhs, hbar, n)
    reports.append(OracleReport(
        check="matrix-biquadratic-identity",
        inputs_hash=_hash_inputs("mx-biq", sig.dof, str(sig.convention), hbar, n, tol),
        status="pass" if err <= tol else "fail",
        max_abs_error=err,
    ))
    return reports


def oracle_check(seed: int, dof: int = 1,
                 sig: Optional[GroupSignature] = None) -> List[OracleReport]:
    """Full oracle battery: vector-field pairs, law suite, matrix identities."""
    if sig is None:
        sig = GroupSignature(dof=dof)
    reports = [
        check_vector_field_suite(sig, seed),
        check_algebra_laws(sig, seed + 1),
    ]
    reports.extend(check_matrix_suite(sig))
    return reports
