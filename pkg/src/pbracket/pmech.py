"""Classical observables, Weyl mechanisation, antiderivative operators and
the universal bracket.

A classical polynomial in q_{s,i}, p_{s,i} is mechanised into the group
algebra by full symmetrization: each monomial becomes the average over all
distinct orderings of its generator multiset, with one kappa factor per
generator.  The universal bracket is the commutator followed by the two
antiderivative operators, which strip one central factor per monomial where
possible and retain a formal linear A1/A2 factor where not.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Tuple, Union

from .errors import AObservableProductError, NotMechanised, SignatureMismatch, UnknownRule
from .scalars import CR_ONE, CR_ZERO, CRat, Scalar, S_ZERO
from .group_algebra import Element, GroupSignature, commutator, delta_str, element_to_json, multiply

__all__ = [
    "ClassicalPoly",
    "poisson_classical",
    "AObservable",
    "apply_antiderivative",
    "universal_bracket",
    "mechanise_weyl",
    "mechanise_plugin",
    "register_rule",
    "registered_rules",
    "weyl_symbol",
]

CMonomial = Tuple[int, ...]


class ClassicalPoly:
    """Commutative polynomial in q_{s,i}, p_{s,i} with CRat coefficients.

    Exponent vectors run over (q_11, p_11, ..., q_1n, p_1n, q_21, ..., p_2n).
    """

    __slots__ = ("dof", "terms")

    def __init__(self, dof: int, terms: Mapping[CMonomial, Union[CRat, int, Fraction]]):
        if dof < 1:
            raise ValueError("dof must be a positive integer")
        width = 4 * dof
        clean = {}
        for mono, coeff in terms.items():
            if len(mono) != width:
                raise ValueError(f"monomial width {len(mono)} != {width}")
            if any(e < 0 for e in mono):
                raise ValueError("negative exponent in monomial")
            c = CRat.of(coeff)
            if not c.is_zero:
                clean[tuple(mono)] = c
        object.__setattr__(self, "dof", dof)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *args):
        raise AttributeError("ClassicalPoly is immutable")

    @property
    def width(self) -> int:
        return 4 * self.dof

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, dof: int) -> "ClassicalPoly":
        return cls(dof, {})

    @classmethod
    def constant(cls, dof: int, value: Union[CRat, int, Fraction]) -> "ClassicalPoly":
        return cls(dof, {(0,) * (4 * dof): CRat.of(value)})

    @classmethod
    def var(cls, dof: int, kind: str, sector: int, i: int = 1) -> "ClassicalPoly":
        mono = [0] * (4 * dof)
        mono[cls.var_index(dof, kind, sector, i)] = 1
        return cls(dof, {tuple(mono): CR_ONE})

    @staticmethod
    def var_index(dof: int, kind: str, sector: int, i: int = 1) -> int:
        if kind not in ("q", "p"):
            raise ValueError("kind must be 'q' or 'p'")
        if sector not in (1, 2):
            raise ValueError("sector must be 1 or 2")
        if not 1 <= i <= dof:
            raise ValueError(f"dof index {i} outside 1..{dof}")
        slot = (sector - 1) * dof + (i - 1)
        return 2 * slot + (0 if kind == "q" else 1)

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "ClassicalPoly") -> None:
        if self.dof != other.dof:
            raise SignatureMismatch("classical polynomials over different dof counts")

    def __add__(self, other: "ClassicalPoly") -> "ClassicalPoly":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            acc = out.get(m, CR_ZERO) + c
            if acc.is_zero:
                out.pop(m, None)
            else:
                out[m] = acc
        return ClassicalPoly(self.dof, out)

    def __neg__(self) -> "ClassicalPoly":
        return ClassicalPoly(self.dof, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "ClassicalPoly") -> "ClassicalPoly":
        return self + (-other)

    def scale(self, factor: Union[CRat, int, Fraction]) -> "ClassicalPoly":
        f = CRat.of(factor)
        return ClassicalPoly(self.dof, {m: c * f for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, ClassicalPoly):
            return self.scale(other)
        self._check(other)
        out: Dict[CMonomial, CRat] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(m1, m2))
                acc = out.get(key, CR_ZERO) + c1 * c2
                if acc.is_zero:
                    out.pop(key, None)
                else:
                    out[key] = acc
        return ClassicalPoly(self.dof, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "ClassicalPoly":
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = ClassicalPoly.constant(self.dof, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, ClassicalPoly)
                and self.dof == other.dof and self.terms == other.terms)

    def __hash__(self):
        return hash((self.dof, frozenset(self.terms.items())))

    # -- queries ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def uses_sector(self, sector: int) -> bool:
        lo = (sector - 1) * 2 * self.dof
        hi = lo + 2 * self.dof
        return any(any(m[lo:hi]) for m in self.terms)

    def derivative(self, idx: int) -> "ClassicalPoly":
        out = {}
        for m, c in self.terms.items():
            if m[idx]:
                key = m[:idx] + (m[idx] - 1,) + m[idx + 1:]
                out[key] = out.get(key, CR_ZERO) + c * m[idx]
        return ClassicalPoly(self.dof, out)

    # -- display --------------------------------------------------------------

    def _var_name(self, idx: int) -> str:
        slot, off = divmod(idx, 2)
        sector = 1 if slot < self.dof else 2
        i = slot % self.dof + 1
        letter = "q" if off == 0 else "p"
        return f"{letter}{sector}" if self.dof == 1 else f"{letter}{sector}{i}"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        rendered = []
        for mono in sorted(self.terms, key=lambda m: (-sum(m), m)):
            c = self.terms[mono]
            parts = []
            for idx, e in enumerate(mono):
                if e == 1:
                    parts.append(self._var_name(idx))
                elif e > 1:
                    parts.append(f"{self._var_name(idx)}^{e}")
            body = "*".join(parts)
            cs = str(c)
            if not body:
                rendered.append(cs)
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


def poisson_classical(f: ClassicalPoly, g: ClassicalPoly) -> ClassicalPoly:
    """Canonical Poisson bracket sum_i (df/dq_i dg/dp_i - df/dp_i dg/dq_i)
    over every sector and degree of freedom."""
    f._check(g)
    out = ClassicalPoly.zero(f.dof)
    for slot in range(2 * f.dof):
        qi, pi = 2 * slot, 2 * slot + 1
        out = out + f.derivative(qi) * g.derivative(pi) - f.derivative(pi) * g.derivative(qi)
    return out


# ---------------------------------------------------------------------------
# Mechanisation

_sym_cache: Dict[Tuple[GroupSignature, Tuple[int, ...]], Element] = {}


def _symmetrized_word(sig: GroupSignature, word: Tuple[int, ...]) -> Element:
    """Average of all distinct orderings of the generator index multiset."""
    key = (sig, tuple(sorted(word)))
    cached = _sym_cache.get(key)
    if cached is not None:
        return cached
    orderings = set(itertools.permutations(sorted(word)))
    total = Element.zero(sig)
    for order in sorted(orderings):
        prod = Element.one(sig)
        for idx in order:
            mono = [0] * sig.width
            mono[idx] = 1
            prod = multiply(prod, Element.monomial(sig, mono))
        total = total + prod
    result = total.scale(Fraction(1, len(orderings)))
    _sym_cache[key] = result
    return result


def mechanise_weyl(sig: GroupSignature, f: ClassicalPoly) -> Element:
    """Symmetric (Weyl) mechanisation of a classical polynomial.

    q_{s,i} contributes kappa_x * X_{s,i} and p_{s,i} contributes
    kappa_y * Y_{s,i}; a monomial maps to the kappa-weighted average over all
    distinct orderings of its generators, and the map extends linearly.
    """
    if f.dof != sig.dof:
        raise SignatureMismatch("polynomial dof does not match signature")
    conv = sig.convention
    out = Element.zero(sig)
    for mono, coeff in f.terms.items():
        word: List[int] = []
        kappa = CR_ONE
        for idx, e in enumerate(mono):
            if not e:
                continue
            slot, off = divmod(idx, 2)
            gen_idx = 2 + 2 * slot + off
            word.extend([gen_idx] * e)
            kappa = kappa * (conv.kappa_x if off == 0 else conv.kappa_y) ** e
        if not word:
            out = out + Element.one(sig).scale(coeff)
            continue
        out = out + _symmetrized_word(sig, tuple(word)).scale(coeff * kappa)
    return out


_RULES: Dict[str, Callable[[GroupSignature, ClassicalPoly], Element]] = {}


def register_rule(name: str, fn: Callable[[GroupSignature, ClassicalPoly], Element]) -> None:
    """Register a named mechanisation rule for mechanise_plugin."""
    _RULES[name] = fn


def registered_rules() -> Tuple[str, ...]:
    return tuple(sorted(_RULES))


def mechanise_plugin(sig: GroupSignature, f: ClassicalPoly, rule: str = "weyl") -> Element:
    """Dispatch to a registered mechanisation rule; 'weyl' is built in."""
    try:
        fn = _RULES[rule]
    except KeyError:
        known = ", ".join(registered_rules())
        raise UnknownRule(f"no mechanisation rule named {rule!r} (registered: {known})") from None
    return fn(sig, f)


register_rule("weyl", mechanise_weyl)


def weyl_symbol(e: Element) -> ClassicalPoly:
    """Inverse of mechanise_weyl.

    Peels monomials from the top degree down: the leading monomial of
    mechanise_weyl(q^a p^b) is the directly transported one, and every
    correction carries a central factor and strictly lower degree, so the
    system is triangular.  Raises NotMechanised when the input is not in the
    image (a leading monomial carries a central factor, or a coefficient is
    not constant).
    """
    sig = e.signature
    conv = sig.convention
    residue = e
    out = ClassicalPoly.zero(sig.dof)
    while not residue.is_zero:
        top = max(sum(m) for m in residue.terms)
        mono = min(m for m in residue.terms if sum(m) == top)
        if mono[0] or mono[1]:
            raise NotMechanised(
                f"leading monomial {mono} carries a central generator")
        kappa = CR_ONE
        cmono = [0] * (4 * sig.dof)
        for t in range(sig.slots):
            a, b = mono[2 + 2 * t], mono[3 + 2 * t]
            cmono[2 * t], cmono[2 * t + 1] = a, b
            kappa = kappa * conv.kappa_x ** a * conv.kappa_y ** b
        try:
            c = residue.terms[mono].as_crat() / kappa
        except ValueError:
            raise NotMechanised(
                "coefficient with formal parameters is outside the mechanisation image") from None
        piece = ClassicalPoly(sig.dof, {tuple(cmono): c})
        out = out + piece
        residue = residue - mechanise_weyl(sig, piece)
    return out


# ---------------------------------------------------------------------------
# Antiderivatives and the universal bracket

@dataclass(frozen=True)
class AObservable:
    """Element extended with at-most-linear formal antiderivative factors:
    plain + a1_part * A1 + a2_part * A2.

    The antiderivatives are applied greedily, so a1_part never carries an S1
    factor and a2_part never carries an S2 factor.
    """

    plain: Element
    a1_part: Element
    a2_part: Element

    def __post_init__(self):
        if (self.plain.signature != self.a1_part.signature
                or self.plain.signature != self.a2_part.signature):
            raise SignatureMismatch("AObservable parts over different signatures")
        if any(m[0] for m in self.a1_part.terms):
            raise ValueError("a1_part must have zero S1 degree")
        if any(m[1] for m in self.a2_part.terms):
            raise ValueError("a2_part must have zero S2 degree")

    @classmethod
    def of(cls, e: Element) -> "AObservable":
        z = Element.zero(e.signature)
        return cls(e, z, z)

    @property
    def signature(self) -> GroupSignature:
        return self.plain.signature

    @property
    def is_zero(self) -> bool:
        return self.plain.is_zero and self.a1_part.is_zero and self.a2_part.is_zero

    def __add__(self, other: "AObservable") -> "AObservable":
        return AObservable(self.plain + other.plain,
                           self.a1_part + other.a1_part,
                           self.a2_part + other.a2_part)

    def __neg__(self) -> "AObservable":
        return AObservable(-self.plain, -self.a1_part, -self.a2_part)

    def __sub__(self, other: "AObservable") -> "AObservable":
        return self + (-other)

    def scale(self, factor) -> "AObservable":
        return AObservable(self.plain.scale(factor),
                           self.a1_part.scale(factor),
                           self.a2_part.scale(factor))

    def __mul__(self, other):
        if isinstance(other, (AObservable, Element)):
            raise AObservableProductError(
                "products of antiderivative-carrying observables are undefined; "
                "the antiderivative factors are applied exactly once")
        return self.scale(other)

    __rmul__ = __mul__

    def __str__(self) -> str:
        parts = []
        if not self.plain.is_zero:
            parts.append(delta_str(self.plain))
        if not self.a1_part.is_zero:
            parts.append(f"({delta_str(self.a1_part)})*A1")
        if not self.a2_part.is_zero:
            parts.append(f"({delta_str(self.a2_part)})*A2")
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__

    def to_json(self) -> dict:
        return {"plain": element_to_json(self.plain),
                "a1": element_to_json(self.a1_part),
                "a2": element_to_json(self.a2_part)}


def apply_antiderivative(e: Element, sector: int) -> AObservable:
    """Antiderivative along the chosen sector, per monomial: strip one S
    factor when present, otherwise keep the monomial behind a formal factor.
    """
    if sector not in (1, 2):
        raise ValueError("sector must be 1 or 2")
    sig = e.signature
    idx = sector - 1
    plain: Dict[Tuple[int, ...], Scalar] = {}
    formal: Dict[Tuple[int, ...], Scalar] = {}
    for mono, coeff in e.terms.items():
        if mono[idx] >= 1:
            key = mono[:idx] + (mono[idx] - 1,) + mono[idx + 1:]
            plain[key] = plain.get(key, S_ZERO) + coeff
        else:
            formal[mono] = formal.get(mono, S_ZERO) + coeff
    z = Element.zero(sig)
    fe = Element(sig, formal)
    return AObservable(Element(sig, plain),
                       fe if sector == 1 else z,
                       fe if sector == 2 else z)


def universal_bracket(k1: Element, k2: Element) -> AObservable:
    """Commutator followed by the sum of both antiderivative operators."""
    c = commutator(k1, k2)
    return apply_antiderivative(c, 1) + apply_antiderivative(c, 2)
