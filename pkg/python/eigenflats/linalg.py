"""Exact linear algebra over Q(zeta_L).

Matrices wrap read-only numpy object arrays of :class:`CycloNum` that share a
single conductor. Subspaces are stored by their reduced row-echelon basis,
which doubles as a canonical dedup key.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from eigenflats.cyclo import CycloNum, common_conductor
from eigenflats.errors import ConductorMismatch, DimensionMismatch

Scalar = Union[CycloNum, int, Fraction]
Vector = Tuple[CycloNum, ...]


def _as_cyclo(value: Scalar, conductor: int) -> CycloNum:
    if isinstance(value, CycloNum):
        if value.conductor == conductor:
            return value
        if value.is_rational():
            return value.lift_rational(conductor)
        return value.lift(conductor)
    return CycloNum.rational(value, conductor)


def _object_array(rows: Sequence[Sequence[CycloNum]], n_rows: int, n_cols: int) -> np.ndarray:
    arr = np.empty((n_rows, n_cols), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != n_cols:
            raise DimensionMismatch(f"row {i} has {len(row)} entries, expected {n_cols}")
        for j, value in enumerate(row):
            arr[i, j] = value
    return arr


def make_vector(values: Iterable[Scalar], conductor: Optional[int] = None) -> Vector:
    """Vector of CycloNum lifted to one conductor (the lcm if not given)."""
    values = list(values)
    if conductor is None:
        conductor = common_conductor([v for v in values if isinstance(v, CycloNum)])
    return tuple(_as_cyclo(v, conductor) for v in values)


def lift_vector(v: Vector, conductor: int) -> Vector:
    return tuple(x.lift(conductor) for x in v)


def vector_conductor(v: Vector) -> int:
    return v[0].conductor if v else 1


def dot(u: Sequence[CycloNum], v: Sequence[CycloNum]) -> CycloNum:
    if len(u) != len(v):
        raise DimensionMismatch(f"dot of lengths {len(u)} and {len(v)}")
    acc = CycloNum.zero(u[0].conductor if u else 1)
    for a, b in zip(u, v):
        if not a.is_zero() and not b.is_zero():
            acc = acc + a * b
    return acc


def is_zero_vector(v: Sequence[CycloNum]) -> bool:
    return all(x.is_zero() for x in v)


def scale_vector(c: CycloNum, v: Sequence[CycloNum]) -> Vector:
    return tuple(c * x for x in v)


def sub_vectors(u: Sequence[CycloNum], v: Sequence[CycloNum]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


@dataclass(frozen=True, eq=False)
class Matrix:
    """Dense matrix over Q(zeta_conductor)."""

    entries: np.ndarray
    conductor: int

    def __post_init__(self) -> None:
        if self.entries.ndim != 2:
            raise DimensionMismatch(f"matrix entries must be 2-D, got {self.entries.ndim}-D")
        self.entries.flags.writeable = False

    # ---- constructors -------------------------------------------------

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[Sequence[Scalar]],
        conductor: Optional[int] = None,
        cols: Optional[int] = None,
    ) -> "Matrix":
        if conductor is None:
            conductor = common_conductor(
                [v for row in rows for v in row if isinstance(v, CycloNum)]
            )
        n_cols = cols if cols is not None else (len(rows[0]) if rows else 0)
        lifted = [[_as_cyclo(v, conductor) for v in row] for row in rows]
        return cls(_object_array(lifted, len(rows), n_cols), conductor)

    @classmethod
    def identity(cls, n: int, conductor: int = 1) -> "Matrix":
        one, zero = CycloNum.one(conductor), CycloNum.zero(conductor)
        return cls.from_rows(
            [[one if i == j else zero for j in range(n)] for i in range(n)], conductor, n
        )

    @classmethod
    def zeros(cls, rows: int, cols: int, conductor: int = 1) -> "Matrix":
        zero = CycloNum.zero(conductor)
        return cls.from_rows([[zero] * cols for _ in range(rows)], conductor, cols)

    # ---- views --------------------------------------------------------

    @property
    def rows(self) -> int:
        return int(self.entries.shape[0])

    @property
    def cols(self) -> int:
        return int(self.entries.shape[1])

    def row(self, i: int) -> Vector:
        return tuple(self.entries[i])

    def to_rows(self) -> List[Vector]:
        return [tuple(r) for r in self.entries]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[:, j])

    def __getitem__(self, index: Tuple[int, int]) -> CycloNum:
        return self.entries[index]

    def key(self) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
        return tuple(e.key() for e in self.entries.flat)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.entries.shape != other.entries.shape:
            return False
        if self.conductor != other.conductor:
            common = math.lcm(self.conductor, other.conductor)
            return self.lift(common).key() == other.lift(common).key()
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash((self.entries.shape, self.conductor, self.key()))

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i, j] == (1 if i == j else 0)
            for i in range(self.rows)
            for j in range(self.cols)
        )

    # ---- arithmetic ---------------------------------------------------

    def lift(self, conductor: int) -> "Matrix":
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ConductorMismatch(self.conductor, conductor)
        return Matrix.from_rows(
            [[e.lift(conductor) for e in row] for row in self.entries], conductor, self.cols
        )

    def _check_same(self, other: "Matrix") -> None:
        if self.conductor != other.conductor:
            raise ConductorMismatch(self.conductor, other.conductor)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        if self.cols == 0:
            return Matrix.zeros(self.rows, other.cols, self.conductor)
        return Matrix(self.entries.dot(other.entries), self.conductor)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix(self.entries + other.entries, self.conductor)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix(self.entries - other.entries, self.conductor)

    def scale(self, c: CycloNum) -> "Matrix":
        c = _as_cyclo(c, self.conductor)
        return Matrix(self.entries * c, self.conductor)

    def apply(self, v: Sequence[CycloNum]) -> Vector:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.cols} columns")
        return tuple(dot(self.row(i), v) for i in range(self.rows))

    def transpose(self) -> "Matrix":
        return Matrix(self.entries.T.copy(), self.conductor)

    def stack(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        if self.cols != other.cols:
            raise DimensionMismatch("stacked matrices need equal column counts")
        return Matrix(np.vstack([self.entries, other.entries]), self.conductor)

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"Matrix([{body}])"


def rref(m: Matrix) -> Tuple[int, Matrix]:
    """Gauss-Jordan elimination; returns the rank and the nonzero canonical rows.

    Pivot = first nonzero entry scanning columns left to right; pivots are
    normalized to 1 and cleared above and below.
    """
    a = np.array(m.entries, dtype=object)
    n_rows, n_cols = a.shape
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        pivot = next((r for r in range(rank, n_rows) if not a[r, col].is_zero()), None)
        if pivot is None:
            continue
        if pivot != rank:
            a[[rank, pivot]] = a[[pivot, rank]]
        a[rank] = a[rank] * a[rank, col].inverse()
        for r in range(n_rows):
            if r != rank and not a[r, col].is_zero():
                a[r] = a[r] - a[rank] * a[r, col]
        rank += 1
    return rank, Matrix(a[:rank].copy(), m.conductor)


def _pivots(basis: Matrix) -> List[int]:
    pivots = []
    for row in basis.entries:
        pivots.append(next(j for j, e in enumerate(row) if not e.is_zero()))
    return pivots


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of F^ambient stored by its canonical reduced row-echelon basis."""

    ambient: int
    basis: Matrix

    @classmethod
    def span(
        cls, vectors: Sequence[Sequence[CycloNum]], ambient: int, conductor: Optional[int] = None
    ) -> "Subspace":
        if conductor is None:
            conductor = common_conductor([x for v in vectors for x in v]) if vectors else 1
        for v in vectors:
            if len(v) != ambient:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient {ambient}")
        _, canonical = rref(Matrix.from_rows(list(vectors), conductor, ambient))
        return cls(ambient, canonical)

    @classmethod
    def zero(cls, ambient: int, conductor: int = 1) -> "Subspace":
        return cls(ambient, Matrix.zeros(0, ambient, conductor))

    @classmethod
    def full(cls, ambient: int, conductor: int = 1) -> "Subspace":
        return cls(ambient, Matrix.identity(ambient, conductor))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def conductor(self) -> int:
        return self.basis.conductor

    def is_zero(self) -> bool:
        return self.dim == 0

    def vectors(self) -> List[Vector]:
        return self.basis.to_rows()

    def key(self) -> Tuple[int, int, tuple]:
        return (self.ambient, self.conductor, self.basis.key())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.conductor != other.conductor:
            common = math.lcm(self.conductor, other.conductor)
            return self.lift(common).key() == other.lift(common).key()
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def lift(self, conductor: int) -> "Subspace":
        if conductor == self.conductor:
            return self
        # lifting preserves reduced row-echelon form
        return Subspace(self.ambient, self.basis.lift(conductor))

    def contains(self, v: Sequence[CycloNum]) -> bool:
        if len(v) != self.ambient:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient {self.ambient}")
        conductor = math.lcm(self.conductor, common_conductor(list(v)))
        space = self.lift(conductor)
        residual = [x.lift(conductor) for x in v]
        for row, p in zip(space.basis.entries, _pivots(space.basis)):
            c = residual[p]
            if not c.is_zero():
                residual = [r - c * e for r, e in zip(residual, row)]
        return is_zero_vector(residual)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.vectors())

    def annihilator(self) -> "Subspace":
        """{a : a . v = 0 for all v in self} under the bilinear dot product."""
        return kernel(self.basis) if self.dim else Subspace.full(self.ambient, self.conductor)

    def sum(self, other: "Subspace") -> "Subspace":
        _check_ambient(self, other)
        conductor = math.lcm(self.conductor, other.conductor)
        rows = self.lift(conductor).vectors() + other.lift(conductor).vectors()
        return Subspace.span(rows, self.ambient, conductor)

    def intersect(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def meet_hyperplane(self, functional: Sequence[CycloNum]) -> "Subspace":
        """self ∩ {v : functional . v = 0}; returns self when contained."""
        rows = self.vectors()
        values = [dot(functional, r) for r in rows]
        k = next((i for i, c in enumerate(values) if not c.is_zero()), None)
        if k is None:
            return self
        inv = values[k].inverse()
        reduced = [
            sub_vectors(r, scale_vector(values[j] * inv, rows[k])) if not values[j].is_zero() else r
            for j, r in enumerate(rows)
            if j != k
        ]
        return Subspace.span(reduced, self.ambient, self.conductor)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, basis={self.basis!r})"


def _check_ambient(s1: Subspace, s2: Subspace) -> None:
    if s1.ambient != s2.ambient:
        raise DimensionMismatch(f"ambient dimensions {s1.ambient} and {s2.ambient} differ")


def kernel(m: Matrix) -> Subspace:
    """Canonical basis of {v : m v = 0}."""
    _, reduced = rref(m)
    pivots = _pivots(reduced)
    free = [j for j in range(m.cols) if j not in set(pivots)]
    zero, one = CycloNum.zero(m.conductor), CycloNum.one(m.conductor)
    vectors = []
    for f in free:
        v = [zero] * m.cols
        v[f] = one
        for i, p in enumerate(pivots):
            v[p] = -reduced.entries[i, f]
        vectors.append(tuple(v))
    return Subspace.span(vectors, m.cols, m.conductor)


def intersect(s1: Subspace, s2: Subspace) -> Subspace:
    """Canonical basis of s1 ∩ s2 (kernel of the stacked annihilators)."""
    _check_ambient(s1, s2)
    conductor = math.lcm(s1.conductor, s2.conductor)
    a1 = s1.lift(conductor).annihilator()
    a2 = s2.lift(conductor).annihilator()
    constraints = a1.basis.stack(a2.basis)
    return kernel(constraints)
