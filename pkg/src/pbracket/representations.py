"""Representations of the group algebra.

rep_qq sends both sectors to Weyl operators over formal parameters h1, h2.
rep_qc sends sector 1 to Weyl operators over the formal parameter h and
sector 2 to a first-order jet: commutative polynomials in q_i, p_i together
with a single power of h2, truncated past first order.  Hybrid observables
multiply with a one-sided jet star product

    f * g = f g + star_unit * h2 * sum_i (df/dp_i)(dg/dq_i),

which is exactly the correction that makes the per-monomial representation a
homomorphism to first jet order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple, Union

from .errors import SignatureMismatch, ZeroPlanck
from .scalars import CR_I, CR_ONE, CRat, Scalar, S_ONE, S_ZERO, scalar
from .group_algebra import ConventionTuple, Element, GroupSignature
from .pmech import AObservable, ClassicalPoly

__all__ = [
    "WeylAlgebra",
    "WeylOperator",
    "HybridObservable",
    "qq_algebra",
    "qc_algebra",
    "rep_qq",
    "rep_qc",
    "multiply_hybrid",
    "hybrid_from_sector2_poly",
]

WMonomial = Tuple[int, ...]


@dataclass(frozen=True)
class WeylAlgebra:
    """A finite family of (Q_i, P_i) pairs with central commutators:
    Q_i P_i - P_i Q_i = gamma_i, different pairs commute."""

    labels: Tuple[str, ...]
    gammas: Tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.gammas):
            raise ValueError("labels and gammas must align")

    @property
    def dofs(self) -> int:
        return len(self.labels)

    @property
    def width(self) -> int:
        return 2 * len(self.labels)

    def mul_mono(self, m1: WMonomial, m2: WMonomial) -> List[Tuple[WMonomial, Scalar]]:
        """Normal-ordered product of two monomials.

        Per pair the cross factor P^b1 Q^a2 expands as
        sum_k k! C(b1,k) C(a2,k) (-gamma)^k Q^(a2-k) P^(b1-k).
        """
        partial: List[Tuple[Tuple[int, ...], Scalar]] = [((), S_ONE)]
        for d in range(self.dofs):
            qx, px = 2 * d, 2 * d + 1
            a1, b1 = m1[qx], m1[px]
            a2, b2 = m2[qx], m2[px]
            if b1 == 0 or a2 == 0:
                partial = [(xy + (a1 + a2, b1 + b2), u) for xy, u in partial]
                continue
            neg_gamma = -self.gammas[d]
            nxt = []
            for xy, u in partial:
                for k in range(min(b1, a2) + 1):
                    c = math.factorial(k) * math.comb(b1, k) * math.comb(a2, k)
                    coeff = u * (neg_gamma ** k) * c
                    nxt.append((xy + (a1 + a2 - k, b1 + b2 - k), coeff))
            partial = nxt
        return [(xy, u) for xy, u in partial]


class WeylOperator:
    """Noncommutative polynomial in the algebra generators, kept in normal
    form with Q before P inside each pair."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: WeylAlgebra, terms: Mapping[WMonomial, Union[Scalar, CRat, int, Fraction]]):
        clean = {}
        for mono, coeff in terms.items():
            if len(mono) != algebra.width:
                raise ValueError(f"monomial width {len(mono)} != {algebra.width}")
            if any(e < 0 for e in mono):
                raise ValueError("negative exponent in monomial")
            c = scalar(coeff)
            if not c.is_zero:
                clean[tuple(mono)] = c
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *args):
        raise AttributeError("WeylOperator is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, algebra: WeylAlgebra) -> "WeylOperator":
        return cls(algebra, {})

    @classmethod
    def identity(cls, algebra: WeylAlgebra) -> "WeylOperator":
        return cls(algebra, {(0,) * algebra.width: S_ONE})

    @classmethod
    def generator(cls, algebra: WeylAlgebra, kind: str, d: int) -> "WeylOperator":
        if kind not in ("Q", "P"):
            raise ValueError("kind must be 'Q' or 'P'")
        if not 0 <= d < algebra.dofs:
            raise ValueError(f"dof index {d} outside 0..{algebra.dofs - 1}")
        mono = [0] * algebra.width
        mono[2 * d + (0 if kind == "Q" else 1)] = 1
        return cls(algebra, {tuple(mono): S_ONE})

    # -- ring operations ----------------------------------------------------

    def _check(self, other: "WeylOperator") -> None:
        if self.algebra != other.algebra:
            raise SignatureMismatch("operators over different Weyl algebras")

    def __add__(self, other: "WeylOperator") -> "WeylOperator":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            acc = out.get(m, S_ZERO) + c
            if acc.is_zero:
                out.pop(m, None)
            else:
                out[m] = acc
        return WeylOperator(self.algebra, out)

    def __neg__(self) -> "WeylOperator":
        return WeylOperator(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "WeylOperator") -> "WeylOperator":
        return self + (-other)

    def scale(self, factor) -> "WeylOperator":
        f = scalar(factor)
        return WeylOperator(self.algebra, {m: c * f for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, WeylOperator):
            self._check(other)
            acc: Dict[WMonomial, Scalar] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    base = c1 * c2
                    for mono, u in self.algebra.mul_mono(m1, m2):
                        coeff = acc.get(mono, S_ZERO) + base * u
                        if coeff.is_zero:
                            acc.pop(mono, None)
                        else:
                            acc[mono] = coeff
            return WeylOperator(self.algebra, acc)
        if isinstance(other, (Scalar, CRat, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Scalar, CRat, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        return self.scale(S_ONE / scalar(other))

    def __pow__(self, k: int) -> "WeylOperator":
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = WeylOperator.identity(self.algebra)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, WeylOperator)
                and self.algebra == other.algebra
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.algebra, frozenset(self.terms.items())))

    # -- queries ---------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def substitute(self, **values) -> "WeylOperator":
        return WeylOperator(self.algebra,
                            {m: c.substitute(**values) for m, c in self.terms.items()})

    def to_json(self) -> dict:
        terms = []
        for mono in sorted(self.terms):
            coeff = self.terms[mono]
            names = {}
            for d in range(self.algebra.dofs):
                lab = self.algebra.labels[d]
                if mono[2 * d]:
                    names[f"Q{lab}"] = mono[2 * d]
                if mono[2 * d + 1]:
                    names[f"P{lab}"] = mono[2 * d + 1]
            num = []
            for (eh, e1, e2), c in coeff.num:
                num.append({"re": [c.re.numerator, c.re.denominator],
                            "im": [c.im.numerator, c.im.denominator],
                            "h_pow": eh, "h1_pow": e1, "h2_pow": e2})
            terms.append({
                "coeff": {"numerator": num,
                          "denominator": {"h_pow": coeff.den[0],
                                          "h1_pow": coeff.den[1],
                                          "h2_pow": coeff.den[2]}},
                "exponents": names,
            })
        return {"labels": list(self.algebra.labels), "terms": terms}

    # -- display -----------------------------------------------------------------

    def _mono_str(self, mono: WMonomial) -> str:
        parts = []
        for d in range(self.algebra.dofs):
            lab = self.algebra.labels[d]
            for off, letter in ((0, "Q"), (1, "P")):
                e = mono[2 * d + off]
                if e == 1:
                    parts.append(f"{letter}{lab}")
                elif e > 1:
                    parts.append(f"{letter}{lab}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        rendered = []
        for mono in sorted(self.terms, key=lambda m: (-sum(m), m)):
            body = self._mono_str(mono)
            cs = str(self.terms[mono])
            if " " in cs or "/" in cs:
                cs = f"({cs})"
            if not body:
                rendered.append(f"{cs}*I" if cs not in ("1", "-1") else ("I" if cs == "1" else "-I"))
            elif cs == "1":
                rendered.append(body)
            elif cs == "-1":
                rendered.append(f"-{body}")
            else:
                rendered.append(f"{cs}*{body}")
        out = rendered[0]
        for r in rendered[1:]:
            out += f" - {r[1:]}" if r.startswith("-") else f" + {r}"
        return out

    __repr__ = __str__


# ---------------------------------------------------------------------------
# Hybrid observables

class HybridObservable:
    """Sum of (Weyl operator part) x (classical polynomial part) terms.

    Terms are keyed by (weyl monomial, classical monomial, jet degree), where
    the classical monomial runs over (q_1, p_1, ..., q_n, p_n) and the jet
    degree in {0, 1} counts the power of h2.  Coefficients are Scalars free
    of the h2 symbol; the jet flag is the only carrier of h2.
    """

    __slots__ = ("algebra", "dof", "convention", "terms")

    def __init__(self, algebra: WeylAlgebra, dof: int, convention: ConventionTuple,
                 terms: Mapping[Tuple[WMonomial, WMonomial, int], Union[Scalar, CRat, int, Fraction]]):
        clean = {}
        for (wm, cm, jet), coeff in terms.items():
            if len(wm) != algebra.width:
                raise ValueError("weyl monomial width mismatch")
            if len(cm) != 2 * dof:
                raise ValueError("classical monomial width mismatch")
            if jet not in (0, 1):
                raise ValueError("jet degree must be 0 or 1")
            c = scalar(coeff)
            if c.uses_symbol("h2"):
                raise ValueError("coefficients must not use h2; the jet flag carries it")
            if not c.is_zero:
                clean[(tuple(wm), tuple(cm), jet)] = c
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "dof", dof)
        object.__setattr__(self, "convention", convention)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *args):
        raise AttributeError("HybridObservable is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero_like(cls, other: "HybridObservable") -> "HybridObservable":
        return cls(other.algebra, other.dof, other.convention, {})

    @classmethod
    def identity(cls, algebra: WeylAlgebra, dof: int, convention: ConventionTuple) -> "HybridObservable":
        key = ((0,) * algebra.width, (0,) * (2 * dof), 0)
        return cls(algebra, dof, convention, {key: S_ONE})

    @classmethod
    def from_weyl(cls, w: WeylOperator, dof: int, convention: ConventionTuple) -> "HybridObservable":
        zc = (0,) * (2 * dof)
        return cls(w.algebra, dof, convention, {(m, zc, 0): c for m, c in w.terms.items()})

    # -- structure ----------------------------------------------------------

    def _check(self, other: "HybridObservable") -> None:
        if (self.algebra != other.algebra or self.dof != other.dof
                or self.convention != other.convention):
            raise SignatureMismatch("hybrid observables over different contexts")

    def __add__(self, other: "HybridObservable") -> "HybridObservable":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            acc = out.get(k, S_ZERO) + c
            if acc.is_zero:
                out.pop(k, None)
            else:
                out[k] = acc
        return HybridObservable(self.algebra, self.dof, self.convention, out)

    def __neg__(self) -> "HybridObservable":
        return HybridObservable(self.algebra, self.dof, self.convention,
                                {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "HybridObservable") -> "HybridObservable":
        return self + (-other)

    def scale(self, factor) -> "HybridObservable":
        f = scalar(factor)
        return HybridObservable(self.algebra, self.dof, self.convention,
                                {k: c * f for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HybridObservable):
            return multiply_hybrid(self, other)
        if isinstance(other, (Scalar, CRat, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Scalar, CRat, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        return (isinstance(other, HybridObservable)
                and self.algebra == other.algebra and self.dof == other.dof
                and self.convention == other.convention and self.terms == other.terms)

    def __hash__(self):
        return hash((self.algebra, self.dof, frozenset(self.terms.items())))

    # -- queries ---------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def jet_part(self, jet: int) -> "HybridObservable":
        """Coefficient of h2^jet, returned at jet degree zero."""
        return HybridObservable(self.algebra, self.dof, self.convention,
                                {(wm, cm, 0): c for (wm, cm, j), c in self.terms.items() if j == jet})

    def weyl_degree(self) -> int:
        return max((sum(wm) for (wm, _, _) in self.terms), default=0)

    def uses_classical(self) -> bool:
        return any(any(cm) or jet for (_, cm, jet) in self.terms)

    def as_weyl(self) -> WeylOperator:
        """The pure operator content; raises if any classical part remains."""
        if self.uses_classical():
            raise ValueError("observable has classical or jet content")
        return WeylOperator(self.algebra, {wm: c for (wm, _, _), c in self.terms.items()})

    def derivative_q(self, i: int) -> "HybridObservable":
        return self._classical_derivative(2 * i)

    def derivative_p(self, i: int) -> "HybridObservable":
        return self._classical_derivative(2 * i + 1)

    def _classical_derivative(self, idx: int) -> "HybridObservable":
        out: Dict[Tuple[WMonomial, WMonomial, int], Scalar] = {}
        for (wm, cm, jet), c in self.terms.items():
            if cm[idx]:
                key = (wm, cm[:idx] + (cm[idx] - 1,) + cm[idx + 1:], jet)
                out[key] = out.get(key, S_ZERO) + c * cm[idx]
        return HybridObservable(self.algebra, self.dof, self.convention, out)

    def substitute(self, **values) -> "HybridObservable":
        return HybridObservable(self.algebra, self.dof, self.convention,
                                {k: c.substitute(**values) for k, c in self.terms.items()})

    # -- display -----------------------------------------------------------------

    def _cmono_str(self, cm: WMonomial) -> str:
        parts = []
        for i in range(self.dof):
            lab = str(i + 1) if self.dof > 1 else ""
            for off, letter in ((0, "q"), (1, "p")):
                e = cm[2 * i + off]
                if e == 1:
                    parts.append(f"{letter}{lab}" if lab else letter)
                elif e > 1:
                    parts.append(f"{letter}{lab}^{e}" if lab else f"{letter}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        rendered = []
        for (wm, cm, jet) in sorted(self.terms, key=lambda k: (k[2], -sum(k[0]) - sum(k[1]), k[0], k[1])):
            bits = []
            w = WeylOperator(self.algebra, {wm: S_ONE})._mono_str(wm)
            if w:
                bits.append(w)
            c = self._cmono_str(cm)
            if c:
                bits.append(c)
            if jet:
                bits.append("h2")
            body = "*".join(bits)
            cs = str(self.terms[(wm, cm, jet)])
            if " " in cs or "/" in cs:
                cs = f"({cs})"
            if not body:
                rendered.append(f"{cs}*I" if cs not in ("1", "-1") else ("I" if cs == "1" else "-I"))
            elif cs == "1":
                rendered.append(body)
            elif cs == "-1":
                rendered.append(f"-{body}")
            else:
                rendered.append(f"{cs}*{body}")
        out = rendered[0]
        for r in rendered[1:]:
            out += f" - {r[1:]}" if r.startswith("-") else f" + {r}"
        return out

    __repr__ = __str__

    def to_json(self) -> dict:
        terms = []
        for (wm, cm, jet) in sorted(self.terms):
            coeff = self.terms[(wm, cm, jet)]
            wnames = {}
            for d in range(self.algebra.dofs):
                lab = self.algebra.labels[d]
                if wm[2 * d]:
                    wnames[f"Q{lab}"] = wm[2 * d]
                if wm[2 * d + 1]:
                    wnames[f"P{lab}"] = wm[2 * d + 1]
            cnames = {}
            for i in range(self.dof):
                if cm[2 * i]:
                    cnames[f"q{i + 1}"] = cm[2 * i]
                if cm[2 * i + 1]:
                    cnames[f"p{i + 1}"] = cm[2 * i + 1]
            num = []
            for (eh, e1, e2), c in coeff.num:
                num.append({"re": [c.re.numerator, c.re.denominator],
                            "im": [c.im.numerator, c.im.denominator],
                            "h_pow": eh, "h1_pow": e1, "h2_pow": e2})
            terms.append({
                "weyl": {"exponents": wnames},
                "classical": {
                    "coeffs": {"monomial": cnames,
                               "numerator": num,
                               "denominator": {"h_pow": coeff.den[0],
                                               "h1_pow": coeff.den[1],
                                               "h2_pow": coeff.den[2]}},
                    "h2_deg": jet,
                },
            })
        return {"terms": terms}


# ---------------------------------------------------------------------------
# The representations

def qq_algebra(sig: GroupSignature) -> WeylAlgebra:
    """Two-sector Weyl algebra: gamma = rep_s_sign * eps_comm * i * h_sector."""
    unit = scalar(sig.convention.gamma_unit * CR_I)
    labels, gammas = [], []
    for sector, sym in ((1, "h1"), (2, "h2")):
        for i in range(1, sig.dof + 1):
            labels.append(f"{sector}" if sig.dof == 1 else f"{sector}_{i}")
            gammas.append(unit * Scalar.symbol(sym))
    return WeylAlgebra(tuple(labels), tuple(gammas))


def qc_algebra(sig: GroupSignature) -> WeylAlgebra:
    """Sector-1 Weyl algebra over the generic symbol h."""
    unit = scalar(sig.convention.gamma_unit * CR_I)
    labels = tuple(str(i) for i in range(1, sig.dof + 1))
    return WeylAlgebra(labels, tuple(unit * Scalar.symbol("h") for _ in labels))


def _central_scalar(conv: ConventionTuple, symbol: str, power: int) -> Scalar:
    """(rep_s_sign * i * h_sym)^power."""
    unit = CRat.of(conv.rep_s_sign) * CR_I
    return scalar(unit ** power) * Scalar.symbol(symbol, power)


def _antiderivative_factor(conv: ConventionTuple, symbol: str) -> Scalar:
    """1 / (rep_s_sign * i * h_sym), the right inverse of the central image."""
    return S_ONE / _central_scalar(conv, symbol, 1)


def _as_aobservable(k: Union[Element, AObservable]) -> AObservable:
    return k if isinstance(k, AObservable) else AObservable.of(k)


def rep_qq(k: Union[Element, AObservable],
           h1: Optional[Union[int, Fraction]] = None,
           h2: Optional[Union[int, Fraction]] = None) -> WeylOperator:
    """Quantum-quantum representation.

    X_{s,i} -> Q^(s)_i, Y_{s,i} -> P^(s)_i, S_s -> rep_s_sign*i*h_s, and a
    formal antiderivative factor maps to the inverse scalar.  h1, h2 stay
    formal unless numeric values are supplied.
    """
    a = _as_aobservable(k)
    sig = a.signature
    conv = sig.convention
    for name, val in (("h1", h1), ("h2", h2)):
        if val is not None and Fraction(val) == 0:
            raise ZeroPlanck(f"{name} must be nonzero")
    alg = qq_algebra(sig)

    def image(e: Element, extra: Scalar) -> WeylOperator:
        acc: Dict[WMonomial, Scalar] = {}
        for mono, coeff in e.terms.items():
            c = coeff * extra
            c = c * _central_scalar(conv, "h1", mono[0]) * _central_scalar(conv, "h2", mono[1])
            wm = tuple(mono[2:])
            got = acc.get(wm, S_ZERO) + c
            if got.is_zero:
                acc.pop(wm, None)
            else:
                acc[wm] = got
        return WeylOperator(alg, acc)

    out = image(a.plain, S_ONE)
    out = out + image(a.a1_part, _antiderivative_factor(conv, "h1"))
    out = out + image(a.a2_part, _antiderivative_factor(conv, "h2"))
    subs = {}
    if h1 is not None:
        subs["h1"] = Fraction(h1)
    if h2 is not None:
        subs["h2"] = Fraction(h2)
    return out.substitute(**subs) if subs else out


def rep_qc(k: Union[Element, AObservable]) -> HybridObservable:
    """Quantum-classical representation to first jet order.

    Sector 1 maps as in rep_qq with the generic symbol h.  Sector 2 maps
    X -> q, Y -> p and S2 -> rep_s_sign*i*h2 with h2 treated as a jet
    variable: squares and higher powers are truncated to zero.  Formal A2
    factors map to zero; formal A1 factors map to the inverse scalar.
    """
    a = _as_aobservable(k)
    sig = a.signature
    conv = sig.convention
    alg = qc_algebra(sig)
    n = sig.dof
    unit_s2 = CRat.of(conv.rep_s_sign) * CR_I

    def image(e: Element, extra: Scalar) -> Dict[Tuple[WMonomial, WMonomial, int], Scalar]:
        acc: Dict[Tuple[WMonomial, WMonomial, int], Scalar] = {}
        for mono, coeff in e.terms.items():
            if mono[1] >= 2:
                continue
            jet = mono[1]
            c = coeff * extra * _central_scalar(conv, "h", mono[0])
            if jet:
                c = c * unit_s2
            wm = tuple(mono[2:2 + 2 * n])
            cm = tuple(mono[2 + 2 * n:])
            key = (wm, cm, jet)
            got = acc.get(key, S_ZERO) + c
            if got.is_zero:
                acc.pop(key, None)
            else:
                acc[key] = got
        return acc

    terms = image(a.plain, S_ONE)
    for key, c in image(a.a1_part, _antiderivative_factor(conv, "h")).items():
        got = terms.get(key, S_ZERO) + c
        if got.is_zero:
            terms.pop(key, None)
        else:
            terms[key] = got
    return HybridObservable(alg, n, conv, terms)


def multiply_hybrid(a: HybridObservable, b: HybridObservable) -> HybridObservable:
    """Product of hybrid observables: Weyl parts multiply noncommutatively,
    classical parts with the one-sided jet star product, jet degree > 1 is
    discarded."""
    a._check(b)
    kappa = a.convention.star_unit
    acc: Dict[Tuple[WMonomial, WMonomial, int], Scalar] = {}

    def put(key, val):
        got = acc.get(key, S_ZERO) + val
        if got.is_zero:
            acc.pop(key, None)
        else:
            acc[key] = got

    for (w1, c1, j1), v1 in a.terms.items():
        for (w2, c2, j2), v2 in b.terms.items():
            base = v1 * v2
            wterms = a.algebra.mul_mono(w1, w2)
            star: List[Tuple[WMonomial, int, Union[CRat, int]]] = []
            if j1 + j2 <= 1:
                star.append((tuple(x + y for x, y in zip(c1, c2)), j1 + j2, CR_ONE))
            if j1 + j2 == 0:
                for i in range(a.dof):
                    qx, px = 2 * i, 2 * i + 1
                    if c1[px] and c2[qx]:
                        cm = list(x + y for x, y in zip(c1, c2))
                        cm[px] -= 1
                        cm[qx] -= 1
                        star.append((tuple(cm), 1, kappa * (c1[px] * c2[qx])))
            for wm, wc in wterms:
                for cm, jet, sf in star:
                    put((wm, cm, jet), base * wc * sf)
    return HybridObservable(a.algebra, a.dof, a.convention, acc)


def hybrid_from_sector2_poly(template: HybridObservable, f: ClassicalPoly) -> HybridObservable:
    """Embed a sector-2-only classical polynomial into the hybrid context of
    an existing observable (trivial Weyl part, jet degree zero)."""
    if f.uses_sector(1):
        raise ValueError("polynomial must use sector-2 variables only")
    if f.dof != template.dof:
        raise SignatureMismatch("polynomial dof does not match hybrid context")
    zw = (0,) * template.algebra.width
    n = template.dof
    terms = {}
    for mono, c in f.terms.items():
        cm = tuple(mono[2 * n:])
        terms[(zw, cm, 0)] = scalar(c)
    return HybridObservable(template.algebra, n, template.convention, terms)
