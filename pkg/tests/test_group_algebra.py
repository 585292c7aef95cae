"""Convolution algebra on the two-sector group: normal ordering, commutators
and the delta-kernel correspondence."""

from fractions import Fraction

import pytest

from pbracket.errors import SignatureMismatch
from pbracket.scalars import CRat, CR_I, CR_MINUS_ONE, CR_ONE
from pbracket.group_algebra import (ConventionTuple, Element, GroupSignature,
                                    commutator, delta_str, delta_to_element,
                                    element_from_json, element_to_delta,
                                    element_to_json, multiply,
                                    parse_group_var)

SIG = GroupSignature(dof=1)
SIG2 = GroupSignature(dof=2)


def gen(name, sig=SIG):
    return Element.generator(sig, name)


def test_convention_tuple_validation():
    with pytest.raises(ValueError):
        ConventionTuple(CRat.of(2), CR_ONE, CR_ONE, CR_ONE, 1, 1)
    with pytest.raises(ValueError):
        ConventionTuple(CR_ONE, CR_ONE, CR_ONE, CR_ONE, 0, 1)
    std = ConventionTuple.standard()
    assert ConventionTuple.from_json(std.to_json()) == std


def test_standard_tuple_units():
    std = ConventionTuple.standard()
    # [Q, P] carries +i*hbar under the standard tuple
    assert std.gamma_unit == CR_ONE
    assert std.anti_normal_order


def test_signature_layout():
    assert SIG.width == 6
    assert SIG2.width == 10
    assert SIG2.generator_names() == [
        "S1", "S2", "X_1_1", "Y_1_1", "X_1_2", "Y_1_2",
        "X_2_1", "Y_2_1", "X_2_2", "Y_2_2",
    ]
    assert SIG2.slot_sector(0) == 1
    assert SIG2.slot_sector(3) == 2


def test_multiply_identity_and_ordered_pair():
    x, y = gen("X_1_1"), gen("Y_1_1")
    assert multiply(Element.one(SIG), y) == y
    assert multiply(x, y) == Element.monomial(SIG, (0, 0, 1, 1, 0, 0))


def test_multiply_reorders_swapped_pair():
    x, y, s = gen("X_1_1"), gen("Y_1_1"), gen("S1")
    eps = SIG.convention.eps_comm
    assert multiply(y, x) == multiply(x, y) - s.scale(eps)


def test_commutator_of_generators():
    x, y, s = gen("X_1_1"), gen("Y_1_1"), gen("S1")
    c = commutator(x, y)
    orient = SIG.convention.orient
    eps = SIG.convention.eps_comm
    assert c == s.scale(eps * CRat.of(orient))
    # standard tuple: orient * eps = +1
    assert c == s


def test_commutator_antisymmetry_and_self():
    x, y = gen("X_1_1"), gen("Y_1_1")
    a = multiply(x, x) + y.scale(CRat(Fraction(1), Fraction(2)))
    b = multiply(x, y) - Element.one(SIG).scale(3)
    assert commutator(a, a).is_zero
    assert (commutator(a, b) + commutator(b, a)).is_zero


def test_central_generators_commute():
    s1, s2 = gen("S1"), gen("S2")
    x = gen("X_1_1")
    word = multiply(multiply(x, x), multiply(s1, s2))
    assert commutator(s1, word).is_zero
    assert commutator(s2, x).is_zero


def test_cross_sector_generators_commute():
    x1, y2 = gen("X_1_1"), gen("Y_2_1")
    assert commutator(x1, y2).is_zero


def test_biquadratic_reordering():
    """x^2 y^2 - y^2 x^2 collapses to two terms, degree 3 and 2."""
    x, y, s = gen("X_1_1"), gen("Y_1_1"), gen("S1")
    eps = SIG.convention.eps_comm
    lhs = multiply(x ** 2, y ** 2) - multiply(y ** 2, x ** 2)
    xy = multiply(x, y)
    rhs = multiply(s, xy).scale(eps * CRat.of(4)) - (s ** 2).scale(eps * eps * CRat.of(2))
    assert lhs == rhs


def test_signature_mismatch_raises():
    with pytest.raises(SignatureMismatch):
        multiply(Element.one(SIG), Element.one(SIG2))


def test_degree_and_uses_sector():
    x1, y2, s2 = gen("X_1_1"), gen("Y_2_1"), gen("S2")
    e = multiply(x1, x1) + y2.scale(2)
    assert e.degree() == 2
    assert e.uses_sector(1)
    assert e.uses_sector(2)
    assert not multiply(x1, x1).uses_sector(2)
    assert s2.uses_sector(2)


def test_delta_correspondence_roundtrip():
    from pbracket.scalars import S_ONE
    e = delta_to_element(SIG, {"x1": 2, "s1": 1})
    coeff, alpha = element_to_delta(e)
    assert alpha == {"x1": 2, "s1": 1}
    # kappa factors cancel: the delta-side coefficient is exactly one
    assert coeff == S_ONE


def test_delta_to_element_kappa_factors():
    conv = SIG.convention
    assert delta_to_element(SIG, {}) == Element.one(SIG)
    assert delta_to_element(SIG, {"x1": 1}) == gen("X_1_1").scale(conv.kappa_x)
    assert delta_to_element(SIG, {"x1": 2}) == (gen("X_1_1") ** 2).scale(conv.kappa_x ** 2)
    # iterable form counts repetitions
    assert delta_to_element(SIG, ["x1", "x1"]) == delta_to_element(SIG, {"x1": 2})


def test_parse_group_var_forms():
    assert parse_group_var(SIG, "s1") == 0
    assert parse_group_var(SIG, "s2") == 1
    assert parse_group_var(SIG, "x1") == 2
    assert parse_group_var(SIG, "y1") == 3
    assert parse_group_var(SIG2, "x21") == SIG2.x_index(2, 1)
    assert parse_group_var(SIG2, "x_2_2") == SIG2.x_index(2, 2)
    with pytest.raises(ValueError):
        parse_group_var(SIG, "z1")
    with pytest.raises(ValueError):
        parse_group_var(SIG, "x12")


def test_delta_str_rendering():
    e = delta_to_element(SIG, {"x1": 1, "y1": 1}).scale(4) + delta_to_element(SIG, {"s1": 1}).scale(2)
    assert delta_str(e) == "4*delta[x1,y1] + 2*delta[s1]"
    assert str(Element.zero(SIG)) == "0"


def test_element_json_roundtrip():
    x, y = gen("X_1_1"), gen("Y_1_1")
    e = multiply(y, x).scale(CRat(Fraction(3, 2), Fraction(-1)))
    data = element_to_json(e)
    assert element_from_json(data) == e
    term_keys = {frozenset(t["exponents"]) for t in data["terms"]}
    assert frozenset({"X_1_1", "Y_1_1"}) in term_keys


def test_element_json_carries_planck_powers():
    from pbracket.scalars import Scalar
    e = Element.one(SIG).scale(Scalar.symbol("h1"))
    data = element_to_json(e)
    assert data["terms"][0]["coeff"]["h1_pow"] == 1
    assert element_from_json(data) == e


def test_element_json_rejects_unencodable_coefficients():
    from pbracket.scalars import S_ONE, Scalar
    # denominators have no place in the schema
    with pytest.raises(ValueError):
        element_to_json(Element.one(SIG).scale(S_ONE / Scalar.symbol("h1")))
    # the single-Planck symbol belongs to the represented side
    with pytest.raises(ValueError):
        element_to_json(Element.one(SIG).scale(Scalar.symbol("h")))


def test_monomial_constructor_width_check():
    with pytest.raises(ValueError):
        Element.monomial(SIG, (1, 0, 0))
