"""Algebraic laws checked as random properties."""

from fractions import Fraction

from hypothesis import given, settings
import hypothesis.strategies as st

from pbracket.scalars import CRat, CR_ONE, S_ONE
from pbracket.group_algebra import (Element, GroupSignature, commutator,
                                    delta_to_element, element_to_delta)
from pbracket.pmech import (ClassicalPoly, mechanise_weyl, universal_bracket,
                            weyl_symbol)
from pbracket.qc_bracket import qc_bracket
from pbracket.representations import rep_qc, rep_qq

SIG = GroupSignature(dof=1)

nonzero_coeffs = st.builds(
    lambda re, im: CRat(Fraction(re), Fraction(im)),
    st.integers(-3, 3), st.integers(-1, 1),
).filter(lambda c: not c.is_zero)


@st.composite
def monomials(draw, max_degree=2):
    mono = [0] * SIG.width
    for _ in range(draw(st.integers(0, max_degree))):
        mono[draw(st.integers(0, SIG.width - 1))] += 1
    return tuple(mono)


@st.composite
def elements(draw, max_degree=2, max_terms=2):
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        terms[draw(monomials(max_degree))] = draw(nonzero_coeffs)
    return Element(SIG, terms)


def sector_only(e: Element, sector: int) -> Element:
    other = 2 if sector == 1 else 1
    return Element(SIG, {m: c for m, c in e.terms.items()
                         if not Element(SIG, {m: CR_ONE}).uses_sector(other)})


@st.composite
def classicals(draw, max_degree=3, max_terms=2):
    out = ClassicalPoly.constant(SIG.dof, 0)
    for _ in range(draw(st.integers(1, max_terms))):
        term = ClassicalPoly.constant(SIG.dof, draw(st.integers(-3, 3)))
        for _ in range(draw(st.integers(0, max_degree))):
            kind = draw(st.sampled_from("qp"))
            sector = draw(st.sampled_from((1, 2)))
            term = term * ClassicalPoly.var(SIG.dof, kind, sector)
        out = out + term
    return out


@settings(max_examples=40, deadline=None)
@given(elements(), elements(), elements())
def test_convolution_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@settings(max_examples=30, deadline=None)
@given(elements(max_degree=1), elements(max_degree=1), elements(max_degree=1))
def test_commutator_jacobi(a, b, c):
    total = (commutator(commutator(a, b), c)
             + commutator(commutator(b, c), a)
             + commutator(commutator(c, a), b))
    assert total.is_zero


@settings(max_examples=40, deadline=None)
@given(elements(), elements())
def test_commutator_antisymmetric(a, b):
    assert commutator(a, b) == commutator(b, a).scale(-1)


@settings(max_examples=40, deadline=None)
@given(elements(), st.integers(0, 2), st.integers(0, 2))
def test_central_generators_commute(a, k1, k2):
    s = Element(SIG, {(k1, k2) + (0,) * (SIG.width - 2): CR_ONE})
    assert s * a == a * s


@settings(max_examples=40, deadline=None)
@given(elements(), elements())
def test_sectors_commute(a, b):
    a1 = sector_only(a, 1)
    b2 = sector_only(b, 2)
    assert a1 * b2 == b2 * a1


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(
    st.sampled_from(["s1", "s2", "x1", "y1", "x2", "y2"]),
    st.integers(1, 3), min_size=1, max_size=3))
def test_delta_correspondence_round_trips(alpha):
    e = delta_to_element(SIG, alpha)
    coeff, back = element_to_delta(e)
    assert coeff == S_ONE
    assert back == alpha


@settings(max_examples=40, deadline=None)
@given(classicals(), classicals(), st.integers(-3, 3))
def test_mechanisation_linear(f, g, n):
    lhs = mechanise_weyl(SIG, f + g.scale(n))
    assert lhs == mechanise_weyl(SIG, f) + mechanise_weyl(SIG, g).scale(n)


@settings(max_examples=40, deadline=None)
@given(classicals())
def test_weyl_symbol_round_trips(f):
    assert weyl_symbol(mechanise_weyl(SIG, f)) == f


@settings(max_examples=20, deadline=None)
@given(classicals(max_degree=2), classicals(max_degree=2))
def test_universal_bracket_antisymmetric(f, g):
    k1, k2 = mechanise_weyl(SIG, f), mechanise_weyl(SIG, g)
    ab = universal_bracket(k1, k2)
    ba = universal_bracket(k2, k1)
    assert ab.plain == ba.plain.scale(-1)
    assert ab.a1_part == ba.a1_part.scale(-1)
    assert ab.a2_part == ba.a2_part.scale(-1)


@settings(max_examples=20, deadline=None)
@given(elements(max_degree=2), elements(max_degree=2))
def test_rep_qq_respects_products(a, b):
    assert rep_qq(a * b) == rep_qq(a) * rep_qq(b)


@settings(max_examples=15, deadline=None)
@given(elements(max_degree=2), elements(max_degree=2))
def test_rep_qc_respects_products_to_first_jet(a, b):
    assert rep_qc(a * b) == rep_qc(a) * rep_qc(b)


@settings(max_examples=15, deadline=None)
@given(classicals(max_degree=2), classicals(max_degree=2))
def test_qc_bracket_antisymmetric(f, g):
    K1 = rep_qc(mechanise_weyl(SIG, f))
    K2 = rep_qc(mechanise_weyl(SIG, g))
    assert qc_bracket(K1, K2) == -qc_bracket(K2, K1)
