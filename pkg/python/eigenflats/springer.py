"""Invariant polynomials and the two descriptions of V(b).

Classical types carry a full set of fundamental invariants in their usual
coordinate models:

    A_{n-1}  n coordinates summing to zero, power sums p_2 .. p_n
    B_n      orthonormal coordinates, e_k(x_1^2, ..., x_n^2)
    D_n      n coordinates, e_k(x^2) for k < n and x_1 ... x_n

Every other type only exposes the quadratic invariant Q(x) = B(x, x).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import partial
from typing import Callable, Optional, Sequence, Tuple

from eigenflats.cyclo import CycloNum, common_conductor
from eigenflats.eigenstab import N_of
from eigenflats.errors import (
    DimensionMismatch,
    PreconditionError,
    QuadraticOnly,
    ZeroVector,
)
from eigenflats.linalg import Vector, is_zero_vector, lift_vector, scale_vector
from eigenflats.rootsys import RootSystem, TypeLabel, build_root_system, subset_rank
from eigenflats.wgroup import GroupElement, GroupEnumeration

logger = logging.getLogger(__name__)

Point = Sequence[CycloNum]


def _conductor(x: Point, *extra: int) -> int:
    return math.lcm(common_conductor(list(x)), *extra)


def _sqrt2(conductor: int) -> CycloNum:
    # zeta_8 + zeta_8^-1
    return (CycloNum.zeta(8, 1) + CycloNum.zeta(8, -1)).lift(conductor)


# ---- coordinate models --------------------------------------------------


def _a_to_model(v: Point) -> Vector:
    v = lift_vector(tuple(v), _conductor(v))
    x = [v[0]] + [v[i] - v[i - 1] for i in range(1, len(v))] + [-v[-1]]
    return tuple(x)


def _a_from_model(x: Point) -> Vector:
    x = lift_vector(tuple(x), _conductor(x))
    total = sum(x[1:], x[0])
    if not total.is_zero():
        raise PreconditionError("type A model coordinates must sum to zero")
    out, acc = [], x[0]
    for i in range(len(x) - 1):
        if i:
            acc = acc + x[i]
        out.append(acc)
    return tuple(out)


def _b_to_model(v: Point) -> Vector:
    n = len(v)
    conductor = _conductor(v, 8)
    v = lift_vector(tuple(v), conductor)
    inv = _sqrt2(conductor).inverse()
    x = [v[0] * inv] + [(v[i] - v[i - 1]) * inv for i in range(1, n - 1)]
    x.append(v[n - 1] - v[n - 2] * inv)
    return tuple(x)


def _b_from_model(x: Point) -> Vector:
    n = len(x)
    conductor = _conductor(x, 8)
    x = lift_vector(tuple(x), conductor)
    root2 = _sqrt2(conductor)
    out, acc = [], CycloNum.zero(conductor)
    for i in range(n - 1):
        acc = acc + x[i]
        out.append(acc * root2)
    out.append(acc + x[n - 1])
    return tuple(out)


def _d_to_model(v: Point) -> Vector:
    n = len(v)
    v = lift_vector(tuple(v), _conductor(v))
    x = [v[0]] + [v[i] - v[i - 1] for i in range(1, n - 2)]
    x.append(v[n - 2] - v[n - 3] + v[n - 1])
    x.append(v[n - 1] - v[n - 2])
    return tuple(x)


def _d_from_model(x: Point) -> Vector:
    n = len(x)
    x = lift_vector(tuple(x), _conductor(x))
    out, acc = [], CycloNum.zero(x[0].conductor)
    for i in range(n - 2):
        acc = acc + x[i]
        out.append(acc)
    out.append((acc + x[n - 2] - x[n - 1]) / 2)
    out.append((acc + x[n - 2] + x[n - 1]) / 2)
    return tuple(out)


# ---- evaluators ---------------------------------------------------------


def _power_sum(k: int, x: Point) -> CycloNum:
    return sum((c ** k for c in x[1:]), x[0] ** k)


def _elementary(values: Sequence[CycloNum], k: int) -> CycloNum:
    """e_k of the values, via the coefficients of prod(1 + v t)."""
    conductor = common_conductor(list(values))
    coeffs = [CycloNum.one(conductor)] + [CycloNum.zero(conductor)] * len(values)
    for v in values:
        for j in range(len(coeffs) - 1, 0, -1):
            coeffs[j] = coeffs[j] + coeffs[j - 1] * v
    return coeffs[k]


def _elementary_of_squares(k: int, x: Point) -> CycloNum:
    return _elementary([c * c for c in x], k)


def _product(x: Point) -> CycloNum:
    acc = x[0]
    for c in x[1:]:
        acc = acc * c
    return acc


def _gram_quadratic(label: TypeLabel, x: Point) -> CycloNum:
    rs = build_root_system(label)
    coords = lift_vector(tuple(x), _conductor(x, rs.conductor))
    return rs.bilinear(coords, coords)


@dataclass(frozen=True)
class Invariant:
    degree: int
    name: str
    function: Callable[[Point], CycloNum]


@dataclass(frozen=True)
class InvariantSet:
    """Fundamental invariants of one type in a fixed coordinate model."""

    label: TypeLabel
    model: str
    dimension: int
    polys: Tuple[Invariant, ...]
    complete: bool
    to_model: Callable[[Point], Vector]
    from_model: Callable[[Point], Vector]

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(p.degree for p in self.polys)


def _identity(v: Point) -> Vector:
    return tuple(v)


def invariant_polynomials(label: TypeLabel) -> InvariantSet:
    """Full invariant set for A/B/D; the quadratic invariant alone otherwise."""
    family, n = label.family, label.n
    if family == "A":
        polys = tuple(Invariant(k, f"p{k}", partial(_power_sum, k)) for k in range(2, n + 2))
        return InvariantSet(label, "sum-zero", n + 1, polys, True, _a_to_model, _a_from_model)
    if family == "B":
        polys = tuple(
            Invariant(2 * k, f"e{k}(x^2)", partial(_elementary_of_squares, k))
            for k in range(1, n + 1)
        )
        return InvariantSet(label, "orthonormal", n, polys, True, _b_to_model, _b_from_model)
    if family == "D":
        polys = [
            Invariant(2 * k, f"e{k}(x^2)", partial(_elementary_of_squares, k)) for k in range(1, n)
        ]
        polys.append(Invariant(n, "x1...xn", _product))
        polys.sort(key=lambda p: p.degree)
        return InvariantSet(label, "even-sign", n, tuple(polys), True, _d_to_model, _d_from_model)
    quadratic = Invariant(2, "Q", partial(_gram_quadratic, label))
    return InvariantSet(label, "root", n, (quadratic,), False, _identity, _identity)


def evaluate(inv: InvariantSet, i: int, x: Point) -> CycloNum:
    """Value of the i-th invariant at a point in model coordinates."""
    if len(x) != inv.dimension:
        raise DimensionMismatch(f"{inv.label}: model has dimension {inv.dimension}, got {len(x)}")
    if not 0 <= i < len(inv.polys):
        raise DimensionMismatch(f"{inv.label}: no invariant with index {i}")
    return inv.polys[i].function(x)


def in_Vb_by_invariants(inv: InvariantSet, x: Point, b: int) -> bool:
    """Every invariant whose degree b does not divide vanishes at x."""
    if not inv.complete:
        raise QuadraticOnly(f"{inv.label}: only the quadratic invariant is available")
    return all(
        evaluate(inv, i, x).is_zero() for i, p in enumerate(inv.polys) if p.degree % b
    )


def in_Vb_by_search(
    rs: RootSystem, enumeration: GroupEnumeration, x: Point, b: int
) -> Optional[GroupElement]:
    """First w (in enumeration order) with w.x = zeta_b.x, in root-basis coordinates."""
    if len(x) != rs.rank:
        raise DimensionMismatch(f"{rs.label}: vector of length {len(x)}, rank {rs.rank}")
    conductor = _conductor(x, rs.conductor, b)
    coords = lift_vector(tuple(x), conductor)
    target = scale_vector(CycloNum.zeta(b, 1, conductor), coords)
    for w in enumeration:
        if w.apply(coords) == target:
            return w
    return None


@dataclass(frozen=True)
class QuadraticForm:
    """Q(x) = B(x, x) in root-basis coordinates."""

    rs: RootSystem

    def __call__(self, x: Point) -> CycloNum:
        if len(x) != self.rs.rank:
            raise DimensionMismatch(f"{self.rs.label}: vector of length {len(x)}")
        coords = lift_vector(tuple(x), _conductor(x, self.rs.conductor))
        return self.rs.bilinear(coords, coords)


def quadratic_form(rs: RootSystem) -> QuadraticForm:
    return QuadraticForm(rs)


def quadratic_rank_check(rs: RootSystem, x: Point) -> bool:
    """For nonzero x with Q(x) = 0 and n > 2: the span of Phi_x has dimension <= n - 2."""
    if is_zero_vector(x):
        raise ZeroVector("the rank bound needs x != 0")
    if rs.rank <= 2:
        raise PreconditionError(f"{rs.label}: the rank bound needs rank > 2")
    if not quadratic_form(rs)(x).is_zero():
        raise PreconditionError("the rank bound needs Q(x) = 0")
    return subset_rank(rs, N_of(rs, x).phi_x) <= rs.rank - 2


def root_point(inv: InvariantSet, model_coords: Point) -> Vector:
    """Model coordinates to root-basis coordinates."""
    if len(model_coords) != inv.dimension:
        raise DimensionMismatch(
            f"{inv.label}: model has dimension {inv.dimension}, got {len(model_coords)}"
        )
    return inv.from_model(model_coords)


def membership_agrees(
    rs: RootSystem, enumeration: GroupEnumeration, inv: InvariantSet, x_model: Point, b: int
) -> Tuple[bool, bool]:
    """(invariant answer, search answer) for a point in model coordinates."""
    by_invariants = in_Vb_by_invariants(inv, x_model, b)
    by_search = in_Vb_by_search(rs, enumeration, root_point(inv, x_model), b) is not None
    return by_invariants, by_search
