"""
Tests for exact matrices and subspaces

Run with: pytest tests/
"""

import pytest

from eigenflats.cyclo import CycloNum, parse_literal
from eigenflats.errors import ConductorMismatch, DimensionMismatch
from eigenflats.linalg import Matrix, Subspace, dot, intersect, kernel, make_vector, rref


def vec(*texts):
    return make_vector([parse_literal(t) for t in texts])


def random_matrix(rng, rows, cols, conductor):
    z = CycloNum.zeta(conductor)
    return Matrix.from_rows(
        [
            [z ** int(rng.integers(0, conductor)) * int(rng.integers(-2, 3)) for _ in range(cols)]
            for _ in range(rows)
        ],
        conductor,
        cols,
    )


def test_identity_and_product():
    """Test I @ M = M and transpose of a product."""
    m = Matrix.from_rows([[1, 2], [3, 4]])
    n = Matrix.from_rows([[0, 1], [1, 0]])
    assert Matrix.identity(2) @ m == m
    assert (m @ n).transpose() == n.transpose() @ m.transpose()
    assert not m.is_identity()


def test_matrix_is_read_only():
    """Test entries cannot be written."""
    m = Matrix.identity(2)
    with pytest.raises(ValueError):
        m.entries[0, 0] = CycloNum.zero()


def test_conductor_mismatch():
    """Test adding matrices over different fields."""
    a = Matrix.identity(2, 3)
    b = Matrix.identity(2, 4)
    with pytest.raises(ConductorMismatch):
        a + b


def test_rref_rank():
    """Test rank of a rank-deficient matrix."""
    m = Matrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    rank, reduced = rref(m)
    assert rank == 2
    assert reduced.to_rows()[0][0] == 1


CONDUCTORS = (1, 3, 4, 5, 8)


def random_subspace(rng, ambient, conductor):
    rows = random_matrix(rng, int(rng.integers(1, ambient + 1)), ambient, conductor).to_rows()
    return Subspace.span(rows, ambient, conductor)


def check_kernel(rng, conductor):
    m = random_matrix(rng, 2, 4, conductor)
    rank, _ = rref(m)
    space = kernel(m)
    assert space.dim == 4 - rank
    for v in space.vectors():
        assert all(c.is_zero() for c in m.apply(v))


def check_subspace_identities(rng, conductor):
    s = random_subspace(rng, 4, conductor)
    t = random_subspace(rng, 4, conductor)
    assert intersect(s, t).dim + s.sum(t).dim == s.dim + t.dim
    assert s.contains_subspace(intersect(s, t))
    # a triangular change of spanning set keeps the canonical basis
    rows = s.vectors()
    if not rows:
        return
    c = CycloNum.zeta(conductor) * int(rng.integers(1, 4))
    mixed = [rows[0]] + [
        tuple(x + c * y for x, y in zip(rows[i], rows[i - 1])) for i in range(1, len(rows))
    ]
    same = Subspace.span(mixed[::-1], 4, conductor)
    assert same == s
    assert same.key() == s.key()


@pytest.mark.parametrize("conductor", CONDUCTORS)
def test_kernel_is_annihilated(rng, conductor):
    """Test m v = 0 for every kernel vector, with rank-nullity."""
    for _ in range(10):
        check_kernel(rng, conductor)


@pytest.mark.parametrize("conductor", CONDUCTORS)
def test_rref_is_idempotent(rng, conductor):
    """Test reducing a reduced matrix changes nothing."""
    for _ in range(10):
        m = random_matrix(rng, 3, 4, conductor)
        rank, reduced = rref(m)
        assert rref(reduced) == (rank, reduced)


@pytest.mark.parametrize("conductor", CONDUCTORS)
def test_subspace_identities(rng, conductor):
    """Test dim(s & t) + dim(s + t) = dim s + dim t and canonical equality."""
    for _ in range(10):
        check_subspace_identities(rng, conductor)


@pytest.mark.slow
@pytest.mark.parametrize("conductor", CONDUCTORS)
def test_linear_algebra_thousand(rng, conductor):
    """Test kernels, rref and subspace identities on 1000 random inputs."""
    for _ in range(200):
        check_kernel(rng, conductor)
        check_subspace_identities(rng, conductor)
        rank, reduced = rref(random_matrix(rng, 3, 4, conductor))
        assert rref(reduced) == (rank, reduced)


def test_canonical_basis():
    """Test different spanning sets give equal keys."""
    a = Subspace.span([vec("1", "z3", "0"), vec("0", "1", "1")], 3)
    b = Subspace.span([vec("1", "z3 + 1", "1"), vec("2", "2*z3", "0")], 3)
    assert a.key() == b.key()
    assert a == b
    assert hash(a) == hash(b)


def test_contains_and_sum():
    """Test membership and subspace sums."""
    s = Subspace.span([vec("1", "0", "z4")], 3)
    t = Subspace.span([vec("0", "1", "0")], 3)
    total = s.sum(t)
    assert total.dim == 2
    assert total.contains(vec("2", "5", "2*z4"))
    assert not s.contains(vec("0", "1", "0"))
    assert total.contains_subspace(s)


def test_intersect():
    """Test intersection of two planes in 3-space is a line."""
    p = Subspace.span([vec("1", "0", "0"), vec("0", "1", "0")], 3)
    q = Subspace.span([vec("0", "1", "0"), vec("0", "0", "1")], 3)
    line = intersect(p, q)
    assert line.dim == 1
    assert line.contains(vec("0", "1", "0"))


def test_intersect_dimension_mismatch():
    """Test ambient dimensions must agree."""
    with pytest.raises(DimensionMismatch):
        intersect(Subspace.full(2), Subspace.full(3))


def test_meet_hyperplane():
    """Test cutting by a functional."""
    plane = Subspace.full(2, 4)
    functional = vec("1", "-z4")
    line = plane.meet_hyperplane(functional)
    assert line.dim == 1
    assert dot(functional, line.vectors()[0]).is_zero()
    assert line.meet_hyperplane(functional) == line


def test_lift_preserves_subspace():
    """Test equality after lifting to a larger conductor."""
    s = Subspace.span([vec("1", "z3")], 2)
    assert s.lift(12) == s
    assert s.lift(12).conductor == 12


def test_dimension_checks():
    """Test mismatched lengths."""
    with pytest.raises(DimensionMismatch):
        dot(vec("1", "2"), vec("1"))
    with pytest.raises(DimensionMismatch):
        Subspace.span([vec("1", "2")], 3)
