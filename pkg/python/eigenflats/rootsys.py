"""Root systems of the finite irreducible reflection groups.

Roots live in root-basis coordinates (the simple roots are the standard basis
vectors) with the bilinear form given by the Gram matrix
``B(a_i, a_j) = -cos(pi / m_ij)``. All roots have squared length 1.

Usage:
    >>> rs = build_root_system(TypeLabel.parse("A2"))
    >>> len(rs.roots), rs.coxeter_number
    (6, 3)
"""

from __future__ import annotations

import logging
import math
import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from eigenflats.cyclo import CycloNum
from eigenflats.errors import (
    ConductorMismatch,
    ConsistencyError,
    DimensionMismatch,
    UnsupportedType,
)
from eigenflats.linalg import Matrix, Subspace, Vector, dot, lift_vector

logger = logging.getLogger(__name__)

_LABEL = re.compile(r"^\s*([A-Za-z])\s*(\d+)\s*(?:\(\s*(\d+)\s*\))?\s*$")

_MIN_RANK = {"A": 1, "B": 2, "D": 4}
_FIXED_RANKS = {"E": (6, 7), "F": (4,), "G": (2,), "H": (3, 4), "I": (2,)}


@dataclass(frozen=True)
class TypeLabel:
    """Irreducible type such as ``A5``, ``E6`` or ``I2(7)``."""

    family: str
    n: int
    m: Optional[int] = None

    def __post_init__(self) -> None:
        family, n, m = self.family, self.n, self.m
        if family in _MIN_RANK:
            if n < _MIN_RANK[family]:
                raise UnsupportedType(f"{family}{n}: rank must be >= {_MIN_RANK[family]}")
        elif family == "E" and n == 8:
            raise UnsupportedType("E8 is beyond enumeration scale")
        elif family in _FIXED_RANKS:
            if n not in _FIXED_RANKS[family]:
                raise UnsupportedType(f"{family}{n} is not a finite reflection group")
        else:
            raise UnsupportedType(f"unknown family {family!r}")
        if family == "I":
            if m is None or m < 3:
                raise UnsupportedType("I2(m) needs m >= 3")
        elif m is not None:
            raise UnsupportedType(f"{family}{n} takes no (m) parameter")

    @classmethod
    def parse(cls, text: str) -> "TypeLabel":
        match = _LABEL.match(text)
        if match is None:
            raise UnsupportedType(f"cannot parse type label {text!r}")
        family, n, m = match.groups()
        return cls(family.upper(), int(n), int(m) if m is not None else None)

    def __str__(self) -> str:
        return f"I2({self.m})" if self.family == "I" else f"{self.family}{self.n}"

    @property
    def is_classical(self) -> bool:
        return self.family in ("A", "B", "D")


def coxeter_matrix(label: TypeLabel) -> Tuple[Tuple[int, ...], ...]:
    """Coxeter matrix m_ij in Bourbaki numbering (0-based)."""
    n = label.n
    m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]

    def bond(i: int, j: int, value: int = 3) -> None:
        m[i][j] = m[j][i] = value

    family = label.family
    if family in ("A", "B"):
        for i in range(n - 1):
            bond(i, i + 1)
        if family == "B":
            bond(n - 2, n - 1, 4)
    elif family == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif family == "E":
        bond(0, 2)
        bond(1, 3)
        for i in range(2, n - 1):
            bond(i, i + 1)
    elif family == "F":
        bond(0, 1)
        bond(1, 2, 4)
        bond(2, 3)
    elif family == "G":
        bond(0, 1, 6)
    elif family == "H":
        bond(0, 1, 5)
        for i in range(1, n - 1):
            bond(i, i + 1)
    else:
        bond(0, 1, label.m or 3)
    return tuple(tuple(row) for row in m)


def _bond_conductor(m: int) -> int:
    if m in (2, 3):
        return 1
    return m if m % 2 else 2 * m


def base_conductor(label: TypeLabel) -> int:
    """Smallest L with every Gram entry -cos(pi/m_ij) in Q(zeta_L)."""
    cox = coxeter_matrix(label)
    return reduce(math.lcm, (_bond_conductor(v) for row in cox for v in row if v > 1), 1)


@lru_cache(maxsize=None)
def cos_pi_over(m: int, conductor: Optional[int] = None) -> CycloNum:
    """cos(pi/m) = (z + z^-1)/2 with z = zeta_2m, in Q(zeta_conductor)."""
    own = _bond_conductor(m)
    conductor = own if conductor is None else conductor
    if m == 2:
        value = CycloNum.zero()
    elif m == 3:
        value = CycloNum.rational(Fraction(1, 2))
    elif m % 2:
        # zeta_2m = -zeta_m^((m+1)/2)
        up = CycloNum.zeta(m, (m + 1) // 2)
        down = CycloNum.zeta(m, (m - 1) // 2)
        value = -(up + down) / 2
    else:
        value = (CycloNum.zeta(2 * m) + CycloNum.zeta(2 * m, -1)) / 2
    return value.lift(conductor)


# ============ STATIC GROUP DATA ============


def degrees(label: TypeLabel) -> Tuple[int, ...]:
    n, family = label.n, label.family
    if family == "A":
        out = range(2, n + 2)
    elif family == "B":
        out = range(2, 2 * n + 1, 2)
    elif family == "D":
        out = list(range(2, 2 * n - 1, 2)) + [n]
    elif family == "E":
        out = (2, 5, 6, 8, 9, 12) if n == 6 else (2, 6, 8, 10, 12, 14, 18)
    elif family == "F":
        out = (2, 6, 8, 12)
    elif family == "G":
        out = (2, 6)
    elif family == "H":
        out = (2, 6, 10) if n == 3 else (2, 12, 20, 30)
    else:
        out = (2, label.m or 3)
    return tuple(sorted(out))


class GroupFacts(NamedTuple):
    degrees: Tuple[int, ...]
    coxeter_number: int
    order: int
    num_roots: int


def group_facts(label: TypeLabel) -> GroupFacts:
    """Degrees, Coxeter number, |W| and |Phi| from the static table."""
    ds = degrees(label)
    h = ds[-1]
    return GroupFacts(ds, h, math.prod(ds), label.n * h)


def divisors_of_degrees(label: TypeLabel) -> Tuple[int, ...]:
    """Every b dividing at least one degree, ascending."""
    found = {b for d in degrees(label) for b in range(1, d + 1) if d % b == 0}
    return tuple(sorted(found))


# ============ ROOT SUBSETS ============


@dataclass(frozen=True)
class RootSubset:
    """Set of root indices stored as an int bitmask."""

    mask: int = 0

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> "RootSubset":
        mask = 0
        for i in indices:
            mask |= 1 << i
        return cls(mask)

    def indices(self) -> Tuple[int, ...]:
        out = []
        mask, i = self.mask, 0
        while mask:
            if mask & 1:
                out.append(i)
            mask >>= 1
            i += 1
        return tuple(out)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, index: int) -> bool:
        return bool(self.mask >> index & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices())

    def __or__(self, other: "RootSubset") -> "RootSubset":
        return RootSubset(self.mask | other.mask)

    def __and__(self, other: "RootSubset") -> "RootSubset":
        return RootSubset(self.mask & other.mask)

    def issubset(self, other: "RootSubset") -> bool:
        return self.mask & ~other.mask == 0


# ============ ROOT SYSTEMS ============


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Roots of one irreducible type in root-basis coordinates.

    ``roots[2k]`` is the k-th positive root in breadth-first discovery order
    and ``roots[2k + 1]`` its negative; simple root i sits at index 2i.
    """

    label: TypeLabel
    rank: int
    gram: Matrix
    conductor: int
    roots: Tuple[Vector, ...]
    degrees: Tuple[int, ...]
    coxeter_number: int
    # dual[r] is the functional v -> B(roots[r], v)
    dual: Tuple[Vector, ...] = field(repr=False)
    # simple_perms[i][r] = index of s_i(roots[r])
    simple_perms: Tuple[Tuple[int, ...], ...] = field(repr=False)
    _index: Dict[tuple, int] = field(repr=False)

    @property
    def num_roots(self) -> int:
        return len(self.roots)

    @property
    def num_positive(self) -> int:
        return len(self.roots) // 2

    @property
    def order(self) -> int:
        return math.prod(self.degrees)

    @property
    def simple_roots(self) -> Tuple[Vector, ...]:
        return tuple(self.roots[2 * i] for i in range(self.rank))

    def all_roots(self) -> RootSubset:
        return RootSubset((1 << len(self.roots)) - 1)

    def root_index(self, v: Sequence[CycloNum]) -> Optional[int]:
        """Index of a root given in root-basis coordinates, or None."""
        if len(v) != self.rank:
            raise DimensionMismatch(f"{self.label}: vector of length {len(v)}, rank {self.rank}")
        key = []
        for c in v:
            if c.conductor != self.conductor:
                if c.is_rational():
                    c = c.lift_rational(self.conductor)
                elif self.conductor % c.conductor == 0:
                    c = c.lift(self.conductor)
                else:
                    return None
            key.append(c.key())
        return self._index.get(tuple(key))

    def pairing(self, index: int, v: Sequence[CycloNum]) -> CycloNum:
        """B(roots[index], v) at the conductor of v."""
        return dot(dual_at(self, v[0].conductor if v else self.conductor)[index], v)

    def bilinear(self, u: Sequence[CycloNum], v: Sequence[CycloNum]) -> CycloNum:
        return dot(u, self.gram.lift(u[0].conductor).apply(v))

    def support(self, index: int) -> FrozenSet[int]:
        return frozenset(i for i, c in enumerate(self.roots[index]) if not c.is_zero())

    def __repr__(self) -> str:
        return f"RootSystem({self.label}, roots={len(self.roots)}, conductor={self.conductor})"


@lru_cache(maxsize=None)
def _lifted_dual(rs: RootSystem, conductor: int) -> Tuple[Vector, ...]:
    return tuple(lift_vector(f, conductor) for f in rs.dual)


def dual_at(rs: RootSystem, conductor: int) -> Tuple[Vector, ...]:
    """Root functionals lifted to Q(zeta_conductor)."""
    if conductor == rs.conductor:
        return rs.dual
    if conductor % rs.conductor:
        raise ConductorMismatch(rs.conductor, conductor)
    return _lifted_dual(rs, conductor)


def gram_matrix(label: TypeLabel) -> Matrix:
    conductor = base_conductor(label)
    cox = coxeter_matrix(label)
    rows = [
        [
            CycloNum.one(conductor) if i == j else -cos_pi_over(cox[i][j], conductor)
            for j in range(label.n)
        ]
        for i in range(label.n)
    ]
    return Matrix.from_rows(rows, conductor, label.n)


def _reflect(gram_rows: Sequence[Vector], i: int, v: Vector) -> Vector:
    """s_i(v) = v - 2 B(a_i, v) a_i; only coordinate i changes."""
    coefficient = dot(gram_rows[i], v)
    if coefficient.is_zero():
        return v
    out = list(v)
    out[i] = v[i] - coefficient * 2
    return tuple(out)


def _vkey(v: Vector) -> tuple:
    return tuple(c.key() for c in v)


@lru_cache(maxsize=None)
def build_root_system(label: TypeLabel) -> RootSystem:
    """Generate Phi as the orbit of the simple roots under simple reflections."""
    gram = gram_matrix(label)
    conductor = gram.conductor
    n = label.n
    gram_rows = gram.to_rows()
    zero, one = CycloNum.zero(conductor), CycloNum.one(conductor)
    simple = [tuple(one if j == i else zero for j in range(n)) for i in range(n)]

    # s_i permutes the positive roots other than a_i
    positive: List[Vector] = list(simple)
    seen = {_vkey(v): k for k, v in enumerate(simple)}
    queue = deque(range(n))
    while queue:
        k = queue.popleft()
        beta = positive[k]
        for i in range(n):
            if k == i:
                continue
            image = _reflect(gram_rows, i, beta)
            key = _vkey(image)
            if key not in seen:
                seen[key] = len(positive)
                positive.append(image)
                queue.append(seen[key])

    roots: List[Vector] = []
    for beta in positive:
        roots.append(beta)
        roots.append(tuple(-c for c in beta))
    index = {_vkey(v): r for r, v in enumerate(roots)}

    facts = group_facts(label)
    if len(roots) != facts.num_roots:
        raise ConsistencyError(
            f"{label}: generated {len(roots)} roots, table says n*h = {facts.num_roots}"
        )
    if 2 * sum(d - 1 for d in facts.degrees) != len(roots):
        raise ConsistencyError(f"{label}: sum of (d_i - 1) does not match |Phi|/2")

    dual = tuple(gram.apply(v) for v in roots)
    perms = []
    for i in range(n):
        perm = []
        for v in roots:
            image = _reflect(gram_rows, i, v)
            perm.append(index[_vkey(image)])
        perms.append(tuple(perm))

    logger.debug("%s: %d roots at conductor %d", label, len(roots), conductor)
    return RootSystem(
        label=label,
        rank=n,
        gram=gram,
        conductor=conductor,
        roots=tuple(roots),
        degrees=facts.degrees,
        coxeter_number=facts.coxeter_number,
        dual=dual,
        simple_perms=tuple(perms),
        _index=index,
    )


def reflection_matrix(rs: RootSystem, index: int) -> Matrix:
    """Matrix of s_a in root-basis coordinates: I - 2 a (G a)^T."""
    if not 0 <= index < len(rs.roots):
        raise DimensionMismatch(f"{rs.label}: no root with index {index}")
    alpha, functional = rs.roots[index], rs.dual[index]
    n = rs.rank
    rows = [
        [
            (CycloNum.one(rs.conductor) if j == k else CycloNum.zero(rs.conductor))
            - alpha[j] * functional[k] * 2
            for k in range(n)
        ]
        for j in range(n)
    ]
    return Matrix.from_rows(rows, rs.conductor, n)


def span_of(rs: RootSystem, subset: RootSubset) -> Subspace:
    return Subspace.span([rs.roots[r] for r in subset], rs.rank, rs.conductor)


def subsystem_closure(rs: RootSystem, subset: RootSubset) -> RootSubset:
    """Phi intersected with the span of the given roots."""
    if not subset.mask:
        return RootSubset()
    space = span_of(rs, subset)
    return RootSubset.from_indices(r for r, v in enumerate(rs.roots) if space.contains(v))


def subset_rank(rs: RootSystem, subset: RootSubset) -> int:
    """Dimension of the span of a root subset."""
    return span_of(rs, subset).dim if subset.mask else 0


def apply_simple(rs: RootSystem, i: int, subset: RootSubset) -> RootSubset:
    perm = rs.simple_perms[i]
    return RootSubset.from_indices(perm[r] for r in subset)


def positive_indices(subset: RootSubset) -> Tuple[int, ...]:
    return tuple(r for r in subset if r % 2 == 0)
