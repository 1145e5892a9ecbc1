"""
Tests for invariant polynomials, coordinate models and V(b) membership

Run with: pytest tests/
"""

import pytest

from eigenflats.cyclo import CycloNum, common_conductor, parse_literal
from eigenflats.eigenstab import N_of, eigenspace, sample_points
from eigenflats.errors import (
    DimensionMismatch,
    PreconditionError,
    QuadraticOnly,
    ZeroVector,
)
from eigenflats.linalg import lift_vector, make_vector
from eigenflats.rootsys import TypeLabel, degrees
from eigenflats.springer import (
    evaluate,
    in_Vb_by_invariants,
    in_Vb_by_search,
    invariant_polynomials,
    membership_agrees,
    quadratic_form,
    quadratic_rank_check,
    root_point,
)
from eigenflats.wgroup import simple_reflection


def literals(*texts):
    values = [parse_literal(t) for t in texts]
    return lift_vector(tuple(values), common_conductor(values))


def invariants(text):
    return invariant_polynomials(TypeLabel.parse(text))


@pytest.mark.parametrize("text,expected", [
    ("A3", (2, 3, 4)),
    ("B2", (2, 4)),
    ("B3", (2, 4, 6)),
    ("D4", (2, 4, 4, 6)),
    ("D5", (2, 4, 5, 6, 8)),
])
def test_invariant_degrees(text, expected):
    """Test the classical invariant sets carry the degrees of the group."""
    inv = invariants(text)
    assert inv.complete
    assert inv.degrees == expected
    assert inv.degrees == degrees(TypeLabel.parse(text))


def test_model_dimensions():
    """Test A_{n-1} uses n coordinates while B_n and D_n use their rank."""
    assert invariants("A3").dimension == 4
    assert invariants("B3").dimension == 3
    assert invariants("D4").dimension == 4


@pytest.mark.parametrize("text", ["E6", "F4", "H3", "G2", "I2(7)"])
def test_quadratic_only(text):
    """Test exceptional types expose only the quadratic invariant."""
    inv = invariants(text)
    assert not inv.complete
    assert inv.degrees == (2,)
    with pytest.raises(QuadraticOnly):
        in_Vb_by_invariants(inv, make_vector([1] * inv.dimension), 2)


def test_power_sums_at_coxeter_eigenvector():
    """Test p2 and p3 vanish at (1, i, -1, -i) while p4 does not."""
    inv = invariants("A3")
    x = literals("1", "z4", "-1", "-z4")
    assert evaluate(inv, 0, x).is_zero()
    assert evaluate(inv, 1, x).is_zero()
    assert evaluate(inv, 2, x) == CycloNum.rational(4).lift(4)
    assert in_Vb_by_invariants(inv, x, 4)
    assert not in_Vb_by_invariants(inv, x, 2)


def test_elementary_of_squares():
    """Test e1(x^2) and e2(x^2) at (1, 1) in B2."""
    inv = invariants("B2")
    x = make_vector([1, 1])
    assert evaluate(inv, 0, x) == CycloNum.rational(2)
    assert evaluate(inv, 1, x) == CycloNum.rational(1)


def test_d_product_invariant():
    """Test the degree-n invariant of D4 is the coordinate product."""
    inv = invariants("D4")
    x = make_vector([1, 2, 3, 4])
    values = {p.name: evaluate(inv, i, x) for i, p in enumerate(inv.polys)}
    assert values["x1...xn"] == CycloNum.rational(24)
    assert values["e1(x^2)"] == CycloNum.rational(30)


def test_evaluate_errors():
    """Test wrong model lengths and invariant indices are rejected."""
    inv = invariants("A3")
    with pytest.raises(DimensionMismatch):
        evaluate(inv, 0, make_vector([1, 2, 3]))
    with pytest.raises(DimensionMismatch):
        evaluate(inv, 7, make_vector([1, 2, 3, -6]))


@pytest.mark.parametrize("text", ["A3", "B3", "D4"])
def test_roots_round_trip(groups, text):
    """Test every root survives the trip to model coordinates and back."""
    rs, _ = groups(text)
    inv = invariants(text)
    for root in rs.roots:
        model = inv.to_model(root)
        assert len(model) == inv.dimension
        assert root_point(inv, model) == lift_vector(root, model[0].conductor)


def test_a_roots_are_coordinate_differences(groups):
    """Test type A roots land on e_i - e_j in the sum-zero model."""
    rs, _ = groups("A3")
    inv = invariants("A3")
    one = CycloNum.one()
    for root in rs.roots:
        nonzero = sorted((c for c in inv.to_model(root) if not c.is_zero()), key=str)
        assert nonzero == sorted([one, -one], key=str)


def test_a_model_needs_sum_zero():
    """Test type A model coordinates off the sum-zero hyperplane are rejected."""
    inv = invariants("A3")
    with pytest.raises(PreconditionError):
        root_point(inv, make_vector([1, 0, 0, 0]))
    with pytest.raises(DimensionMismatch):
        root_point(inv, make_vector([1, -1, 0]))


@pytest.mark.parametrize("text", ["A3", "B3", "D4"])
def test_invariants_are_invariant(groups, rng, text):
    """Test each invariant takes the same value at x and at s_i.x."""
    rs, _ = groups(text)
    inv = invariants(text)
    for _ in range(3):
        x = make_vector(rng.integers(-4, 5, size=rs.rank).tolist())
        before = inv.to_model(x)
        for i in range(rs.rank):
            after = inv.to_model(simple_reflection(rs, i).apply(lift_vector(x, rs.conductor)))
            for k in range(len(inv.polys)):
                lifted = lift_vector(before, after[0].conductor)
                assert evaluate(inv, k, after) == evaluate(inv, k, lifted)


@pytest.mark.parametrize("text,b_values", [
    ("A3", (2, 3, 4)),
    ("B3", (3, 4, 6)),
    ("D4", (2, 3, 4)),
])
def test_membership_on_eigenvectors(groups, rng, text, b_values):
    """Test invariants and eigen-search both accept sampled eigenvectors."""
    rs, enumeration = groups(text)
    inv = invariants(text)
    for b in b_values:
        seen = 0
        for g in enumeration:
            space = eigenspace(g, b)
            if space.is_zero():
                continue
            for point in sample_points(space, 2, rng):
                model = inv.to_model(point)
                assert membership_agrees(rs, enumeration, inv, model, b) == (True, True)
            seen += 1
            if seen == 3:
                break
        assert seen


def test_membership_rejects_generic_point(groups):
    """Test a generic vector lies in V(1) only."""
    rs, enumeration = groups("A3")
    inv = invariants("A3")
    x = make_vector([1, 2, -3, 0])
    for b in (2, 3, 4):
        assert membership_agrees(rs, enumeration, inv, x, b) == (False, False)
    assert membership_agrees(rs, enumeration, inv, x, 1) == (True, True)


def test_search_returns_witness(groups):
    """Test the eigen-search witness really scales x by zeta_b."""
    rs, enumeration = groups("A3")
    inv = invariants("A3")
    x = root_point(inv, literals("1", "z4", "-1", "-z4"))
    w = in_Vb_by_search(rs, enumeration, x, 4)
    assert w is not None
    assert w.order() == 4
    with pytest.raises(DimensionMismatch):
        in_Vb_by_search(rs, enumeration, make_vector([1, 0]), 4)


def test_quadratic_form_on_roots(groups):
    """Test Q takes the value 1 on every root."""
    rs, _ = groups("H3")
    q = quadratic_form(rs)
    for root in rs.roots:
        assert q(root) == CycloNum.one(rs.conductor)
    e6 = invariants("E6")
    assert evaluate(e6, 0, make_vector([1, 0, 0, 0, 0, 0])) == CycloNum.one()


def test_quadratic_rank_check(groups):
    """Test isotropic vectors have Phi_x of rank at most n - 2."""
    rs, _ = groups("A3")
    inv = invariants("A3")
    regular = root_point(inv, literals("1", "z4", "-1", "-z4"))
    assert quadratic_rank_check(rs, regular)
    # (1, 1, -1 + sqrt(-2), -1 - sqrt(-2)) sums to zero with p2 = 0
    nonregular = root_point(inv, literals("1", "1", "-1+z8+z8^3", "-1-z8-z8^3"))
    assert len(N_of(rs, nonregular).phi_x) == 2
    assert quadratic_rank_check(rs, nonregular)


def test_quadratic_rank_check_preconditions(groups):
    """Test zero, non-isotropic and rank-two inputs are refused."""
    rs, _ = groups("A3")
    with pytest.raises(ZeroVector):
        quadratic_rank_check(rs, make_vector([0, 0, 0]))
    with pytest.raises(PreconditionError):
        quadratic_rank_check(rs, make_vector([1, 0, 0]))
    a2, _ = groups("A2")
    with pytest.raises(PreconditionError):
        quadratic_rank_check(a2, literals("1", "z3"))


@pytest.mark.slow
@pytest.mark.parametrize("text", ["A4", "A5", "B4"])
def test_membership_hundred_samples(groups, rng, text):
    """Test both membership tests agree on 100 vectors per b, inside and outside V(b)."""
    rs, enumeration = groups(text)
    inv = invariants(text)
    for b in range(2, rs.coxeter_number + 1):
        spaces = []
        for g in enumeration:
            space = eigenspace(g, b)
            if not space.is_zero():
                spaces.append(space)
            if len(spaces) == 10:
                break
        for space in spaces:
            for point in sample_points(space, 10, rng):
                model = inv.to_model(point)
                by_invariants, by_search = membership_agrees(rs, enumeration, inv, model, b)
                assert by_invariants and by_search
        for _ in range(20):
            x = make_vector(rng.integers(-5, 6, size=rs.rank).tolist())
            if all(c.is_zero() for c in x):
                continue
            by_invariants, by_search = membership_agrees(rs, enumeration, inv, inv.to_model(x), b)
            assert by_invariants == by_search
