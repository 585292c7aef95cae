"""Exact scalar arithmetic: complex rationals and rational functions in the
formal parameters h, h1, h2.

Everything downstream of this module stays exact; floating point enters only
in the numerical oracle, through :meth:`Scalar.evalf`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = [
    "CRat",
    "Scalar",
    "CR_ZERO",
    "CR_ONE",
    "CR_MINUS_ONE",
    "CR_I",
    "CR_MINUS_I",
    "UNIT_VALUES",
    "unit_from_str",
    "unit_to_str",
    "S_ZERO",
    "S_ONE",
    "scalar",
]

RatLike = Union[int, Fraction]
CRatLike = Union[int, Fraction, "CRat"]


@dataclass(frozen=True)
class CRat:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(value: CRatLike) -> "CRat":
        if isinstance(value, CRat):
            return value
        if isinstance(value, (int, Fraction)):
            return CRat(Fraction(value))
        raise TypeError(f"cannot build CRat from {type(value).__name__}")

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> "CRat":
        return CRat(self.re, -self.im)

    def __add__(self, other: CRatLike) -> "CRat":
        if not isinstance(other, (int, Fraction, CRat)):
            return NotImplemented
        o = CRat.of(other)
        return CRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "CRat":
        return CRat(-self.re, -self.im)

    def __sub__(self, other: CRatLike) -> "CRat":
        if not isinstance(other, (int, Fraction, CRat)):
            return NotImplemented
        return self + (-CRat.of(other))

    def __rsub__(self, other: CRatLike) -> "CRat":
        if not isinstance(other, (int, Fraction, CRat)):
            return NotImplemented
        return CRat.of(other) + (-self)

    def __mul__(self, other: CRatLike) -> "CRat":
        if not isinstance(other, (int, Fraction, CRat)):
            return NotImplemented
        o = CRat.of(other)
        return CRat(self.re * o.re - self.im * o.im,
                    self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other: CRatLike) -> "CRat":
        if not isinstance(other, (int, Fraction, CRat)):
            return NotImplemented
        o = CRat.of(other)
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero CRat")
        return CRat((self.re * o.re + self.im * o.im) / norm,
                    (self.im * o.re - self.re * o.im) / norm)

    def __rtruediv__(self, other: CRatLike) -> "CRat":
        return CRat.of(other) / self

    def __pow__(self, k: int) -> "CRat":
        if k < 0:
            return CR_ONE / (self ** (-k))
        out = CR_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            if self.im.denominator == 1:
                return f"{self.im}i"
            return f"({self.im})i"
        im_abs = abs(self.im)
        im_str = "i" if im_abs == 1 else (f"{im_abs}i" if im_abs.denominator == 1 else f"({im_abs})i")
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{im_str})"


CR_ZERO = CRat()
CR_ONE = CRat(Fraction(1))
CR_MINUS_ONE = CRat(Fraction(-1))
CR_I = CRat(Fraction(0), Fraction(1))
CR_MINUS_I = CRat(Fraction(0), Fraction(-1))

# Canonical order used when convention tuples are enumerated and compared.
UNIT_VALUES = (CR_ONE, CR_MINUS_ONE, CR_I, CR_MINUS_I)

_UNIT_TO_STR = {CR_ONE: "+1", CR_MINUS_ONE: "-1", CR_I: "+i", CR_MINUS_I: "-i"}
_STR_TO_UNIT = {v: k for k, v in _UNIT_TO_STR.items()}
_STR_TO_UNIT["1"] = CR_ONE
_STR_TO_UNIT["i"] = CR_I


def unit_to_str(u: CRat) -> str:
    try:
        return _UNIT_TO_STR[u]
    except KeyError:
        raise ValueError(f"{u} is not a unit scalar") from None


def unit_from_str(s: str) -> CRat:
    try:
        return _STR_TO_UNIT[s]
    except KeyError:
        raise ValueError(f"unknown unit scalar {s!r}") from None


# Exponent triples index the formal parameters in the fixed order (h, h1, h2).
Expo = "tuple[int, int, int]"
_SYMS = ("h", "h1", "h2")
_ZERO_EXP = (0, 0, 0)


@dataclass(frozen=True)
class Scalar:
    """Rational function in h, h1, h2 with CRat coefficients.

    Stored as a polynomial numerator over a single monomial denominator:
    num is a sorted tuple of ((e_h, e_h1, e_h2), CRat) pairs, den an exponent
    triple.  The form is canonical: no zero coefficients, and the common
    monomial factor between numerator and denominator is cancelled, so
    structural equality is mathematical equality.
    """

    num: tuple = ()
    den: tuple = _ZERO_EXP

    @staticmethod
    def make(num: Mapping[tuple, CRat], den: tuple = _ZERO_EXP) -> "Scalar":
        clean = {e: c for e, c in num.items() if not c.is_zero}
        if not clean:
            return S_ZERO
        red = tuple(min(den[j], min(e[j] for e in clean)) for j in range(3))
        if any(red):
            den = tuple(den[j] - red[j] for j in range(3))
            clean = {tuple(e[j] - red[j] for j in range(3)): c for e, c in clean.items()}
        return Scalar(tuple(sorted(clean.items())), tuple(den))

    @staticmethod
    def of(value: Union["Scalar", CRatLike]) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        c = CRat.of(value)
        return Scalar.make({_ZERO_EXP: c})

    @staticmethod
    def symbol(name: str, power: int = 1) -> "Scalar":
        idx = _SYMS.index(name)
        e = [0, 0, 0]
        if power >= 0:
            e[idx] = power
            return Scalar.make({tuple(e): CR_ONE})
        e[idx] = -power
        return Scalar.make({_ZERO_EXP: CR_ONE}, tuple(e))

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_one(self) -> bool:
        return self == S_ONE

    def is_monomial(self) -> bool:
        return len(self.num) <= 1

    def _num_dict(self) -> dict:
        return dict(self.num)

    def __add__(self, other) -> "Scalar":
        o = Scalar.of(other)
        if self.is_zero:
            return o
        if o.is_zero:
            return self
        den = tuple(max(self.den[j], o.den[j]) for j in range(3))
        out: dict = {}
        for part in (self, o):
            lift = tuple(den[j] - part.den[j] for j in range(3))
            for e, c in part.num:
                key = tuple(e[j] + lift[j] for j in range(3))
                out[key] = out.get(key, CR_ZERO) + c
        return Scalar.make(out, den)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(tuple((e, -c) for e, c in self.num), self.den)

    def __sub__(self, other) -> "Scalar":
        return self + (-Scalar.of(other))

    def __rsub__(self, other) -> "Scalar":
        return Scalar.of(other) + (-self)

    def __mul__(self, other) -> "Scalar":
        o = Scalar.of(other)
        if self.is_zero or o.is_zero:
            return S_ZERO
        out: dict = {}
        for e1, c1 in self.num:
            for e2, c2 in o.num:
                key = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[key] = out.get(key, CR_ZERO) + c1 * c2
        den = tuple(self.den[j] + o.den[j] for j in range(3))
        return Scalar.make(out, den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero Scalar")
        if len(self.num) != 1:
            raise ZeroDivisionError(
                "can only invert a single-term Scalar (monomial denominator)")
        (e, c), = self.num
        return Scalar.make({self.den: CR_ONE / c}, e)

    def __truediv__(self, other) -> "Scalar":
        return self * Scalar.of(other).inverse()

    def __rtruediv__(self, other) -> "Scalar":
        return Scalar.of(other) * self.inverse()

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return self.inverse() ** (-k)
        out = S_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- queries ---------------------------------------------------------

    def coefficient(self, e_h: int, e_h1: int, e_h2: int) -> CRat:
        """Numerator coefficient at the given exponent triple."""
        for e, c in self.num:
            if e == (e_h, e_h1, e_h2):
                return c
        return CR_ZERO

    def uses_symbol(self, name: str) -> bool:
        idx = _SYMS.index(name)
        return self.den[idx] != 0 or any(e[idx] != 0 for e, _ in self.num)

    def as_crat(self) -> CRat:
        """The value of a constant Scalar; raises if any symbol is present."""
        if self.is_zero:
            return CR_ZERO
        if self.den != _ZERO_EXP or len(self.num) != 1 or self.num[0][0] != _ZERO_EXP:
            raise ValueError(f"Scalar {self} is not constant")
        return self.num[0][1]

    def substitute(self, **values: CRatLike) -> "Scalar":
        """Substitute exact values for symbols, e.g. substitute(h1=Fraction(1,2)).

        Substituting 0 for a symbol appearing in the denominator raises
        ZeroDivisionError.
        """
        vals = {}
        for name, v in values.items():
            if name not in _SYMS:
                raise ValueError(f"unknown symbol {name!r}")
            vals[_SYMS.index(name)] = CRat.of(v)
        num: dict = {}
        for e, c in self.num:
            key = list(e)
            for idx, v in vals.items():
                c = c * v ** key[idx]
                key[idx] = 0
            k = tuple(key)
            num[k] = num.get(k, CR_ZERO) + c
        den = list(self.den)
        den_scale = CR_ONE
        for idx, v in vals.items():
            if den[idx]:
                if v.is_zero:
                    raise ZeroDivisionError(f"substituting 0 for {_SYMS[idx]} in denominator")
                den_scale = den_scale * v ** den[idx]
                den[idx] = 0
        result = Scalar.make(num, tuple(den))
        if den_scale != CR_ONE:
            result = result / den_scale
        return result

    def evalf(self, h: complex = 1.0, h1: complex = 1.0, h2: complex = 1.0) -> complex:
        vals = (complex(h), complex(h1), complex(h2))
        total = 0j
        for e, c in self.num:
            term = c.to_complex()
            for j in range(3):
                term *= vals[j] ** e[j]
            total += term
        d = 1.0 + 0j
        for j in range(3):
            d *= vals[j] ** self.den[j]
        return total / d

    # -- display ---------------------------------------------------------

    @staticmethod
    def _mono_str(e: tuple) -> str:
        parts = []
        for j, s in enumerate(_SYMS):
            if e[j] == 1:
                parts.append(s)
            elif e[j] > 1:
                parts.append(f"{s}^{e[j]}")
        return "*".join(parts)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for e, c in sorted(self.num, reverse=True):
            mono = self._mono_str(e)
            cs = str(c)
            if mono:
                if cs == "1":
                    terms.append(mono)
                elif cs == "-1":
                    terms.append(f"-{mono}")
                else:
                    terms.append(f"{cs}*{mono}")
            else:
                terms.append(cs)
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        dstr = self._mono_str(self.den)
        if dstr:
            if len(self.num) > 1 or " " in out or "*" in out:
                out = f"({out})"
            if "*" in dstr:
                dstr = f"({dstr})"
            out = f"{out}/{dstr}"
        return out

    __repr__ = __str__


S_ZERO = Scalar()
S_ONE = Scalar(((_ZERO_EXP, CR_ONE),))


def scalar(value: Union[Scalar, CRatLike]) -> Scalar:
    """Convenience coercion used throughout the package."""
    return Scalar.of(value)
