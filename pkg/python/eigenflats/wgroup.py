"""Enumeration of reflection groups as exact matrices.

Elements act on root-basis coordinates by left multiplication. Breadth-first
enumeration from the identity yields every element with a reduced word, so
``set(word) <= I`` exactly when the element lies in the parabolic W_I.

Usage:
    >>> rs = build_root_system(TypeLabel.parse("A2"))
    >>> len(enumerate_group(rs, cap=100))
    6
"""

from __future__ import annotations

import hashlib
import logging
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from eigenflats.cyclo import CycloNum, cyclotomic_polynomial, poly_eval
from eigenflats.errors import ConsistencyError, GroupTooLarge
from eigenflats.linalg import Matrix, Vector, kernel
from eigenflats.rootsys import RootSystem, group_facts

logger = logging.getLogger(__name__)

Rows = Tuple[Tuple[CycloNum, ...], ...]


@dataclass(frozen=True)
class GroupElement:
    """Element of W in root-basis coordinates, with a reduced word when known."""

    matrix: Matrix
    word: Optional[Tuple[int, ...]] = None

    @property
    def rank(self) -> int:
        return self.matrix.rows

    def apply(self, v: Sequence[CycloNum]) -> Vector:
        conductor = v[0].conductor if v else self.matrix.conductor
        if conductor != self.matrix.conductor:
            return self.matrix.lift(math.lcm(conductor, self.matrix.conductor)).apply(v)
        return self.matrix.apply(v)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return GroupElement(self.matrix @ other.matrix, word)

    def is_identity(self) -> bool:
        return self.matrix.is_identity()

    def order(self, limit: int = 10_000) -> int:
        power, k = self.matrix, 1
        while not power.is_identity():
            power = power @ self.matrix
            k += 1
            if k > limit:
                raise ConsistencyError(f"element order exceeds {limit}")
        return k

    def key(self) -> bytes:
        return _serialize(self.matrix.to_rows())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)


@dataclass(frozen=True)
class GroupEnumeration:
    label: str
    elements: Tuple[GroupElement, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def parabolic(self, subset: Sequence[int]) -> Tuple[GroupElement, ...]:
        """Elements of W_I, read off their reduced words."""
        allowed = set(subset)
        return tuple(g for g in self.elements if g.word is not None and set(g.word) <= allowed)


def _serialize(rows: Sequence[Sequence[CycloNum]]) -> bytes:
    return repr(tuple(c.key() for row in rows for c in row)).encode()


def _digest(rows: Sequence[Sequence[CycloNum]]) -> bytes:
    return hashlib.blake2b(_serialize(rows), digest_size=16).digest()


class _Stepper:
    """Left multiplication by simple reflections on row tuples.

    (s_i M) differs from M only in row i: row_i - 2 * sum_j G_ij row_j.
    """

    def __init__(self, rs: RootSystem) -> None:
        self.rank = rs.rank
        self.conductor = rs.conductor
        gram = rs.gram.to_rows()
        self.terms = [
            [(j, gram[i][j] * -2) for j in range(rs.rank) if not gram[i][j].is_zero()]
            for i in range(rs.rank)
        ]
        self._interned: Dict[tuple, CycloNum] = {}

    def intern(self, c: CycloNum) -> CycloNum:
        return self._interned.setdefault(c.key(), c)

    def step(self, i: int, rows: Rows) -> Rows:
        new_row = []
        for k in range(self.rank):
            acc = rows[i][k]
            for j, coefficient in self.terms[i]:
                entry = rows[j][k]
                if not entry.is_zero():
                    acc = acc + coefficient * entry
            new_row.append(self.intern(acc))
        return rows[:i] + (tuple(new_row),) + rows[i + 1:]

    def identity(self) -> Rows:
        one, zero = CycloNum.one(self.conductor), CycloNum.zero(self.conductor)
        return tuple(
            tuple(one if j == i else zero for j in range(self.rank)) for i in range(self.rank)
        )

    def element(self, rows: Rows, word: Tuple[int, ...]) -> GroupElement:
        arr = np.empty((self.rank, self.rank), dtype=object)
        for i, row in enumerate(rows):
            for j, c in enumerate(row):
                arr[i, j] = c
        return GroupElement(Matrix(arr, self.conductor), word)


def _check_cap(rs: RootSystem, cap: int) -> int:
    order = group_facts(rs.label).order
    if order > cap:
        raise GroupTooLarge(str(rs.label), order, cap)
    return order


def enumerate_group(rs: RootSystem, cap: int, progress: bool = False) -> GroupEnumeration:
    """Breadth-first closure from the identity under the simple reflections."""
    order = _check_cap(rs, cap)
    stepper = _Stepper(rs)
    start = stepper.identity()
    seen = {_serialize(start)}
    frontier: deque = deque([(start, ())])
    elements: List[GroupElement] = []
    with tqdm(total=order, desc=f"W({rs.label})", disable=not progress, leave=False) as bar:
        while frontier:
            rows, word = frontier.popleft()
            elements.append(stepper.element(rows, word))
            bar.update(1)
            for i in range(rs.rank):
                image = stepper.step(i, rows)
                key = _serialize(image)
                if key not in seen:
                    seen.add(key)
                    frontier.append((image, (i,) + word))
    if len(elements) != order:
        raise ConsistencyError(
            f"{rs.label}: enumerated {len(elements)} elements, degrees give {order}"
        )
    logger.info("%s: enumerated %d elements", rs.label, len(elements))
    return GroupEnumeration(str(rs.label), tuple(elements))


def stream_group(rs: RootSystem, cap: int, progress: bool = False) -> Iterator[GroupElement]:
    """Breadth-first enumeration holding one length level and 16-byte digests.

    Neighbours of a length-l element have length l-1 or l+1, so digests of the
    previous and current levels are enough for deduplication.
    """
    order = _check_cap(rs, cap)
    stepper = _Stepper(rs)
    start = stepper.identity()
    previous: set = set()
    current = {_digest(start)}
    level: List[Tuple[Rows, Tuple[int, ...]]] = [(start, ())]
    count = 0
    with tqdm(total=order, desc=f"W({rs.label})", disable=not progress, leave=False) as bar:
        while level:
            following: List[Tuple[Rows, Tuple[int, ...]]] = []
            upcoming: set = set()
            for rows, word in level:
                yield stepper.element(rows, word)
                count += 1
                bar.update(1)
                for i in range(rs.rank):
                    image = stepper.step(i, rows)
                    digest = _digest(image)
                    if digest in previous or digest in current or digest in upcoming:
                        continue
                    upcoming.add(digest)
                    following.append((image, (i,) + word))
            previous, current, level = current, upcoming, following
    if count != order:
        raise ConsistencyError(f"{rs.label}: streamed {count} elements, degrees give {order}")


def simple_reflection(rs: RootSystem, i: int) -> GroupElement:
    stepper = _Stepper(rs)
    return stepper.element(stepper.step(i, stepper.identity()), (i,))


def coxeter_element(rs: RootSystem) -> GroupElement:
    """s_1 s_2 ... s_n in index order."""
    stepper = _Stepper(rs)
    rows = stepper.identity()
    for i in reversed(range(rs.rank)):
        rows = stepper.step(i, rows)
    return stepper.element(rows, tuple(range(rs.rank)))


# ============ CHARACTERISTIC POLYNOMIALS ============


def _berkowitz(a: Sequence[Sequence], one, zero) -> List:
    """Coefficients of det(xI - A), highest degree first, without division."""
    n = len(a)
    if n == 0:
        return [one]
    poly = [one, -a[0][0]]
    for k in range(1, n):
        r = a[k][:k]
        col = [a[i][k] for i in range(k)]
        t = [one, -a[k][k]]
        v = col
        for _ in range(k):
            acc = zero
            for x, y in zip(r, v):
                acc = acc + x * y
            t.append(-acc)
            v = [sum((a[i][j] * v[j] for j in range(k)), zero) for i in range(k)]
        new = []
        for i in range(k + 2):
            acc = zero
            for j in range(max(0, i - len(t) + 1), min(i, k) + 1):
                acc = acc + t[i - j] * poly[j]
            new.append(acc)
        poly = new
    return poly


def characteristic_polynomial(w: GroupElement) -> Tuple[CycloNum, ...]:
    """det(xI - w), lowest degree first."""
    m = w.matrix
    rows = m.to_rows()
    conductor = m.conductor
    if all(c.is_rational() for row in rows for c in row):
        fracs = [[c.to_fraction() for c in row] for row in rows]
        if all(f.denominator == 1 for row in fracs for f in row):
            coeffs = _berkowitz([[int(f) for f in row] for row in fracs], 1, 0)
        else:
            coeffs = _berkowitz(fracs, Fraction(1), Fraction(0))
        return tuple(CycloNum.rational(c, conductor) for c in reversed(coeffs))
    coeffs = _berkowitz(rows, CycloNum.one(conductor), CycloNum.zero(conductor))
    return tuple(reversed(coeffs))


def _rational_remainder(poly: Sequence[Fraction], modulus: Sequence[int]) -> List[Fraction]:
    """poly mod a monic integer polynomial, both lowest degree first."""
    rem = list(poly)
    d = len(modulus) - 1
    for k in range(len(rem) - 1, d - 1, -1):
        c = rem[k]
        if c:
            for i in range(d + 1):
                rem[k - d + i] -= c * modulus[i]
    return rem[:d]


def charpoly_vanishes_at(charpoly: Sequence[CycloNum], b: int) -> bool:
    """True iff the polynomial vanishes at the fixed zeta_b."""
    if all(c.is_rational() for c in charpoly):
        rem = _rational_remainder([c.to_fraction() for c in charpoly], cyclotomic_polynomial(b))
        return not any(rem)
    return poly_eval(charpoly, CycloNum.zeta(b)).is_zero()


def admits_primitive_eigenvalue(w: GroupElement, b: int) -> bool:
    """Whether zeta_b is an eigenvalue of w."""
    return charpoly_vanishes_at(characteristic_polynomial(w), b)


def is_reflection(charpoly: Sequence[CycloNum]) -> bool:
    """charpoly == (x + 1)(x - 1)^(n-1)."""
    n = len(charpoly) - 1
    target = [Fraction(1), Fraction(1)]
    for _ in range(n - 1):
        shifted = [Fraction(0)] + target
        target = [shifted[i] - (target[i] if i < len(target) else 0) for i in range(len(shifted))]
    return all(c == t for c, t in zip(charpoly, target))


def count_reflections(enumeration: GroupEnumeration) -> int:
    return sum(1 for g in enumeration if is_reflection(characteristic_polynomial(g)))


def coxeter_exponents(rs: RootSystem) -> Tuple[int, ...]:
    """Exponents m (0 <= m < h) of zeta_h^m in the spectrum of the Coxeter element."""
    c = coxeter_element(rs)
    h = rs.coxeter_number
    conductor = math.lcm(rs.conductor, h)
    lifted = c.matrix.lift(conductor)
    identity = Matrix.identity(rs.rank, conductor)
    out: List[int] = []
    for m in range(h):
        eigenvalue = CycloNum.zeta(h, m, conductor)
        out.extend([m] * kernel(lifted - identity.scale(eigenvalue)).dim)
    return tuple(out)
