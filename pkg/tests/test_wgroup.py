"""
Tests for group enumeration and characteristic polynomials

Run with: pytest tests/
"""

import pytest

from eigenflats.cyclo import CycloNum
from eigenflats.errors import GroupTooLarge
from eigenflats.rootsys import TypeLabel, build_root_system
from eigenflats.wgroup import (
    admits_primitive_eigenvalue,
    characteristic_polynomial,
    count_reflections,
    coxeter_element,
    coxeter_exponents,
    enumerate_group,
    simple_reflection,
    stream_group,
)

ENUMERABLE = ["A1", "A2", "A3", "A4", "B2", "B3", "D4", "G2", "H3", "I2(5)", "I2(8)"]


@pytest.mark.parametrize("text", ENUMERABLE)
def test_order_matches_degrees(groups, text):
    """Test |W| = product of the degrees."""
    rs, enumeration = groups(text)
    assert len(enumeration) == rs.order


@pytest.mark.parametrize("text", ["A3", "B3", "H3"])
def test_reflection_count(groups, text):
    """Test the number of reflections is |Phi| / 2."""
    rs, enumeration = groups(text)
    assert count_reflections(enumeration) == rs.num_positive


def test_words_are_reduced(groups):
    """Test breadth-first words reproduce the matrices."""
    rs, enumeration = groups("A3")
    for g in list(enumeration)[:40]:
        product = enumeration.elements[0]
        for i in g.word:
            product = product * simple_reflection(rs, i)
        assert product == g
    assert enumeration.elements[0].is_identity()
    assert max(len(g.word) for g in enumeration) == rs.num_positive


def test_parabolic_selection(groups):
    """Test W_I read from words has the parabolic order."""
    rs, enumeration = groups("A3")
    assert len(enumeration.parabolic([0, 1])) == 6
    assert len(enumeration.parabolic([0, 2])) == 4
    assert len(enumeration.parabolic([])) == 1


def test_cap_is_enforced():
    """Test groups above the cap are refused upfront."""
    rs = build_root_system(TypeLabel.parse("A4"))
    with pytest.raises(GroupTooLarge) as info:
        enumerate_group(rs, cap=100)
    assert info.value.required == 120
    assert info.value.exit_code == 3


def test_stream_matches_enumeration(groups):
    """Test the digest-level stream yields the same elements in order."""
    rs, enumeration = groups("B3")
    streamed = list(stream_group(rs, cap=1000))
    assert len(streamed) == len(enumeration)
    assert [g.key() for g in streamed] == [g.key() for g in enumeration]


@pytest.mark.parametrize("text", ["A4", "B3", "D4", "H3", "G2", "I2(7)"])
def test_coxeter_element_order(text):
    """Test the Coxeter element has order h."""
    rs = build_root_system(TypeLabel.parse(text))
    assert coxeter_element(rs).order() == rs.coxeter_number


@pytest.mark.parametrize("text", ["A3", "B3", "D4", "H3", "G2", "I2(5)", "F4"])
def test_coxeter_exponents(text):
    """Test exponents of the Coxeter element are d_i - 1."""
    rs = build_root_system(TypeLabel.parse(text))
    assert sorted(coxeter_exponents(rs)) == [d - 1 for d in rs.degrees]


def test_characteristic_polynomial_of_reflection():
    """Test det(x - s) = (x + 1)(x - 1)^(n - 1)."""
    rs = build_root_system(TypeLabel.parse("A3"))
    poly = characteristic_polynomial(simple_reflection(rs, 0))
    # (x + 1)(x - 1)^2 = x^3 - x^2 - x + 1
    assert [c.to_fraction() for c in poly] == [1, -1, -1, 1]


def test_charpoly_irrational_entries():
    """Test H3 Coxeter element has zeta_10 as an eigenvalue."""
    rs = build_root_system(TypeLabel.parse("H3"))
    c = coxeter_element(rs)
    poly = characteristic_polynomial(c)
    assert poly[-1] == 1
    assert admits_primitive_eigenvalue(c, 10)
    assert not admits_primitive_eigenvalue(c, 3)
    assert isinstance(poly[0], CycloNum)


def test_primitive_eigenvalue_over_q(groups):
    """Test exactly the 3-cycles of S4 admit zeta_3 in A3."""
    rs, enumeration = groups("A3")
    admitting = [g for g in enumeration if admits_primitive_eigenvalue(g, 3)]
    assert len(admitting) == 8
    assert all(g.order() == 3 for g in admitting)


def check_group_invariants(rs, enumeration):
    for g in enumeration:
        assert g.matrix.transpose() @ rs.gram @ g.matrix == rs.gram
        images = {rs.root_index(g.apply(root)) for root in rs.roots}
        assert None not in images
        assert len(images) == rs.num_roots
        # eigenvalues come in pairs lambda, 1/lambda
        poly = characteristic_polynomial(g)
        mirrored = poly[::-1]
        scale = mirrored[0] / poly[0]
        assert all(m == scale * c for m, c in zip(mirrored, poly))
    assert count_reflections(enumeration) == rs.num_positive


@pytest.mark.parametrize("text", ENUMERABLE + ["I2(3)", "I2(4)", "I2(7)", "I2(12)"])
def test_elements_preserve_form_and_roots(groups, text):
    """Test every element is an isometry permuting Phi with a self-reciprocal charpoly."""
    rs, enumeration = groups(text)
    check_group_invariants(rs, enumeration)


@pytest.mark.slow
@pytest.mark.parametrize("text", ["A5", "A6", "B4", "B5", "D5", "D6", "F4", "H4", "E6"])
def test_elements_preserve_form_and_roots_desk_scale(groups, text):
    """Test the isometry, root and reflection-count invariants on larger groups."""
    rs, enumeration = groups(text)
    check_group_invariants(rs, enumeration)
