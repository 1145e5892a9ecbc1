"""
Tests for exact cyclotomic arithmetic

Run with: pytest tests/
"""

from fractions import Fraction

import pytest
import sympy

from eigenflats.cyclo import (
    CycloNum,
    arith,
    cyclotomic_polynomial,
    euler_phi,
    invert,
    parse_literal,
    poly_eval,
)
from eigenflats.errors import (
    ConductorMismatch,
    DivisionByZero,
    LiteralParseError,
    PreconditionError,
)

CONDUCTORS = (1, 3, 4, 5, 8, 12, 15, 24)


def random_element(rng, conductor):
    degree = euler_phi(conductor)
    coeffs = [
        Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 4))) for _ in range(degree)
    ]
    return CycloNum(coeffs, conductor)


def test_zeta_relation():
    """Test 1 + z3 + z3^2 = 0."""
    z = CycloNum.zeta(3)
    assert z * z + z + 1 == 0


def test_cyclotomic_polynomial_matches_sympy():
    """Test Phi_n coefficients against sympy."""
    x = sympy.Symbol("x")
    for n in (1, 2, 4, 8, 12, 15, 24):
        coeffs = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()
        expected = [int(c) for c in reversed(coeffs)]
        assert list(cyclotomic_polynomial(n)) == expected
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert euler_phi(12) == 4


@pytest.mark.parametrize("conductor", CONDUCTORS)
def test_field_axioms(rng, conductor):
    """Test ring axioms and inverses on random elements."""
    for _ in range(40):
        a, b, c = (random_element(rng, conductor) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == 0
        if not a.is_zero():
            assert a * a.inverse() == 1
            assert (b / a) * a == b


@pytest.mark.slow
@pytest.mark.parametrize("conductor", CONDUCTORS)
def test_field_axioms_thousand(rng, conductor):
    """Test associativity, distributivity and inverses on 1000 random triples."""
    for _ in range(1000):
        a, b, c = (random_element(rng, conductor) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        if not a.is_zero():
            assert a * a.inverse() == 1


def test_division_by_zero():
    """Test inverting zero raises a ZeroDivisionError subclass."""
    with pytest.raises(DivisionByZero):
        CycloNum.zero(5).inverse()
    with pytest.raises(ZeroDivisionError):
        CycloNum.one(3) / CycloNum.zero(3)


def test_arith_and_invert():
    """Test the named field operations on one conductor."""
    z3, z4 = CycloNum.zeta(3), CycloNum.zeta(4)
    assert arith("mul", z4, z4) == -1
    assert arith("add", z3, z3 ** 2) == -1
    assert arith("mul", parse_literal("1 + z3"), -z3) == 1
    assert arith("sub", z3, z3).is_zero()
    assert invert(parse_literal("1 + z3")) == -z3
    with pytest.raises(ConductorMismatch):
        arith("add", z3, z4)
    with pytest.raises(PreconditionError):
        arith("div", z3, z3)


def test_conductor_mismatch():
    """Test mixing irrational elements of different fields."""
    with pytest.raises(ConductorMismatch):
        CycloNum.zeta(3) + CycloNum.zeta(4)
    # rationals embed everywhere
    assert CycloNum.zeta(4) + CycloNum.rational(1, 1) == parse_literal("1 + z4")


def test_lift_and_equality_across_conductors():
    """Test zeta_3 = zeta_12^4 and zeta_4 = zeta_8^2."""
    assert CycloNum.zeta(3).lift(12) == CycloNum.zeta(12) ** 4
    assert CycloNum.zeta(4) == CycloNum.zeta(8) ** 2
    assert CycloNum.zeta(2) == -1
    assert hash(CycloNum.rational(3, 8)) == hash(CycloNum.rational(3))


def test_hash_agrees_across_conductors():
    """Test equal scalars from different fields hash alike and work as dict keys."""
    z3 = CycloNum.zeta(3)
    assert hash(CycloNum.zeta(4)) == hash(CycloNum.zeta(8) ** 2)
    assert hash(z3.lift(12)) == hash(z3)
    assert hash(z3.lift(24) + 1) == hash(z3 + 1)
    table = {CycloNum.zeta(4): "i", z3: "w"}
    assert table[CycloNum.zeta(8) ** 2] == "i"
    assert table[CycloNum.zeta(12) ** 4] == "w"
    assert len({CycloNum.zeta(4), CycloNum.zeta(8) ** 2, CycloNum.zeta(24) ** 6}) == 1


def test_hash_separates_field_elements():
    """Test distinct elements of one field do not all collide."""
    values = [CycloNum.zeta(7, k) + k for k in range(1, 7)]
    assert len(set(values)) == 6
    assert len({hash(v) for v in values}) == 6


def test_normalized_trace():
    """Test Tr(x) / phi(L) on roots of unity and rationals."""
    assert CycloNum.zeta(5).normalized_trace() == Fraction(-1, 4)
    assert parse_literal("z8 + z8^-1").normalized_trace() == 0
    assert CycloNum.rational(Fraction(3, 2)).normalized_trace() == Fraction(3, 2)
    assert CycloNum.zeta(3).lift(12).normalized_trace() == Fraction(-1, 2)


@pytest.mark.parametrize("conductor", (7, 15, 21, 24))
def test_inverse_large_conductor(rng, conductor):
    """Test inverses in fields of degree 6 to 12 multiply back to one."""
    for _ in range(20):
        a = random_element(rng, conductor)
        if a.is_zero():
            continue
        inv = a.inverse()
        assert inv.conductor == conductor
        assert a * inv == 1
        assert inv.inverse() == a
    assert (1 + CycloNum.zeta(3)).inverse() == -CycloNum.zeta(3)


def test_negative_powers():
    """Test z5^-1 = z5^4."""
    z = CycloNum.zeta(5)
    assert z ** -1 == z ** 4
    assert z ** 5 == 1


def test_sqrt2():
    """Test (z8 + z8^-1)^2 = 2."""
    root2 = parse_literal("z8 + z8^-1")
    assert root2 * root2 == 2
    assert not root2.is_rational()


def test_parse_and_format():
    """Test literal parsing and canonical printing."""
    value = parse_literal("z5^2 + 1/2")
    assert str(value) == "z5^2 + 1/2"
    assert parse_literal(str(value)) == value
    assert parse_literal("-z4") == -CycloNum.zeta(4)
    expected = CycloNum.rational(Fraction(-3, 4)) * (1 + CycloNum.zeta(8))
    assert parse_literal("-3/4*(1 + z8)") == expected
    assert parse_literal("7") == 7
    assert parse_literal("z3", conductor=12) == CycloNum.zeta(12) ** 4


@pytest.mark.parametrize("text", ["", "z", "1 +", "(1 + z4", "1/0", "z0", "2 ^ z3", "x"])
def test_parse_errors(text):
    """Test malformed literals."""
    with pytest.raises(LiteralParseError):
        parse_literal(text)


def test_parse_conductor_mismatch():
    """Test requesting a field that does not contain the literal."""
    with pytest.raises(ConductorMismatch):
        parse_literal("z5", conductor=8)


def test_poly_eval():
    """Test x^2 + x + 1 vanishes at zeta_3 and not at zeta_4."""
    coeffs = [CycloNum.one(), CycloNum.one(), CycloNum.one()]
    assert poly_eval(coeffs, CycloNum.zeta(3)).is_zero()
    assert not poly_eval(coeffs, CycloNum.zeta(4)).is_zero()


def test_immutable():
    """Test scalars cannot be modified."""
    z = CycloNum.zeta(7)
    with pytest.raises(AttributeError):
        z.den = 2
