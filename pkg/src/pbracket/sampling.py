"""Seeded random generators for elements, classical polynomials and probe
monomials.  All draws go through an explicit random.Random so every suite is
reproducible from its seed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence, Tuple

from .scalars import CRat
from .group_algebra import Element, GroupSignature
from .pmech import ClassicalPoly

__all__ = [
    "rand_crat",
    "rand_group_monomial",
    "rand_element",
    "rand_classical",
]


def rand_crat(rng: random.Random, allow_imag: bool = True) -> CRat:
    """Small nonzero exact complex rational."""
    while True:
        re = Fraction(rng.randint(-3, 3))
        im = Fraction(rng.choice((-1, 0, 0, 1))) if allow_imag else Fraction(0)
        c = CRat(re, im)
        if not c.is_zero:
            return c


def _allowed_indices(sig: GroupSignature, sectors: Sequence[int], allow_s: bool) -> list:
    idxs = []
    for sector in sectors:
        if allow_s:
            idxs.append(sector - 1)
        for i in range(1, sig.dof + 1):
            idxs.append(sig.x_index(sector, i))
            idxs.append(sig.y_index(sector, i))
    return idxs


def rand_group_monomial(rng: random.Random, sig: GroupSignature, max_degree: int,
                        sectors: Sequence[int] = (1, 2), allow_s: bool = True,
                        min_degree: int = 0) -> Tuple[int, ...]:
    idxs = _allowed_indices(sig, sectors, allow_s)
    mono = [0] * sig.width
    for _ in range(rng.randint(min_degree, max_degree)):
        mono[rng.choice(idxs)] += 1
    return tuple(mono)


def rand_element(rng: random.Random, sig: GroupSignature, max_degree: int = 4,
                 terms: int = 3, sectors: Sequence[int] = (1, 2),
                 allow_s: bool = True) -> Element:
    acc = Element.zero(sig)
    for _ in range(terms):
        mono = rand_group_monomial(rng, sig, max_degree, sectors, allow_s)
        acc = acc + Element.monomial(sig, mono, rand_crat(rng))
    return acc


def rand_classical(rng: random.Random, dof: int, max_degree: int = 4,
                   terms: int = 3, sectors: Sequence[int] = (1, 2),
                   allow_imag: bool = False) -> ClassicalPoly:
    """Random classical polynomial; real coefficients by default since
    classical observables in the suites are real."""
    width = 4 * dof
    acc = ClassicalPoly.zero(dof)
    allowed = []
    for sector in sectors:
        for i in range(1, dof + 1):
            allowed.append(ClassicalPoly.var_index(dof, "q", sector, i))
            allowed.append(ClassicalPoly.var_index(dof, "p", sector, i))
    for _ in range(terms):
        mono = [0] * width
        for _ in range(rng.randint(0, max_degree)):
            mono[rng.choice(allowed)] += 1
        acc = acc + ClassicalPoly(dof, {tuple(mono): rand_crat(rng, allow_imag)})
    return acc
