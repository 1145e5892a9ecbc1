"""Eigenspaces, stabilizers and the minimum of N(x) over V(b).

N(x) = |Phi| - |Phi_x| counts the roots not orthogonal to x. Over a subspace E
the minimum of N is attained on a flat of E (an intersection of E with root
hyperplanes), so the flats reachable from every eigenspace are searched
exhaustively with a memo keyed by canonical subspace bases.

Usage:
    >>> rs = build_root_system(TypeLabel.parse("A2"))
    >>> record = min_N(rs, enumerate_group(rs, cap=100), b=3)
    >>> record.min_N, record.bound, record.equality
    (6, 6, True)
"""

from __future__ import annotations

import logging
import math
import time
from collections import deque
from concurrent.futures import Future, ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Deque, Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union

import numpy as np
from tqdm import tqdm

from eigenflats.cyclo import CycloNum, common_conductor
from eigenflats.errors import (
    ConsistencyError,
    EmptyEigenspace,
    GroupTooLarge,
    PreconditionError,
    ZeroVector,
)
from eigenflats.linalg import (
    Matrix,
    Subspace,
    Vector,
    dot,
    is_zero_vector,
    kernel,
    lift_vector,
    scale_vector,
)
from eigenflats.parabolic import (
    ParabolicWitness,
    find_parabolic_witness,
    parabolic_degrees,
)
from eigenflats.rootsys import (
    RootSubset,
    RootSystem,
    dual_at,
    positive_indices,
    reflection_matrix,
    span_of,
)
from eigenflats.wgroup import (
    GroupElement,
    GroupEnumeration,
    characteristic_polynomial,
    charpoly_vanishes_at,
    coxeter_element,
)

logger = logging.getLogger(__name__)

Elements = Union[GroupEnumeration, Iterable[GroupElement]]


# ============ POINTS AND STABILIZERS ============


@dataclass(frozen=True)
class EigenVectorPoint:
    """Nonzero vector in root-basis coordinates, optionally with w.x = zeta_b.x."""

    coordinates: Vector
    w: Optional[GroupElement] = None
    b: Optional[int] = None

    def __post_init__(self) -> None:
        if not self.coordinates or is_zero_vector(self.coordinates):
            raise ZeroVector("eigenvectors must be nonzero")
        if self.w is not None and self.b is not None:
            conductor = math.lcm(self.conductor, self.w.matrix.conductor, self.b)
            x = lift_vector(self.coordinates, conductor)
            zeta = CycloNum.zeta(self.b, 1, conductor)
            if self.w.apply(x) != scale_vector(zeta, x):
                raise PreconditionError(f"x is not a zeta_{self.b}-eigenvector of w")

    @property
    def conductor(self) -> int:
        return common_conductor(self.coordinates)

    def at(self, conductor: int) -> Vector:
        return lift_vector(self.coordinates, math.lcm(conductor, self.conductor))


def as_point(x: Union[EigenVectorPoint, Sequence[CycloNum]]) -> EigenVectorPoint:
    if isinstance(x, EigenVectorPoint):
        return x
    coords = tuple(x)
    if coords:
        target = common_conductor(coords)
        coords = lift_vector(coords, target)
    return EigenVectorPoint(coords)


@dataclass(frozen=True)
class StabilizerReport:
    point: EigenVectorPoint
    phi_x: RootSubset
    N: int
    group_order: Optional[int] = None
    generated_by_reflections: Optional[bool] = None
    parabolic_witness: Optional[ParabolicWitness] = None

    @property
    def is_regular(self) -> bool:
        return not self.phi_x.mask

    def to_dict(self) -> Dict[str, object]:
        return {
            "x": [str(c) for c in self.point.coordinates],
            "orthogonal_root_indices": list(self.phi_x.indices()),
            "N": self.N,
            "regular": self.is_regular,
            "group_order": self.group_order,
            "generated_by_reflections": self.generated_by_reflections,
            "parabolic": self.parabolic_witness.to_dict() if self.parabolic_witness else None,
        }


def _field_vector(rs: RootSystem, point: EigenVectorPoint) -> Vector:
    return point.at(rs.conductor)


def N_of(rs: RootSystem, x: Union[EigenVectorPoint, Sequence[CycloNum]]) -> StabilizerReport:
    """Phi_x by exact orthogonality against every root, and N = |Phi| - |Phi_x|."""
    point = as_point(x)
    if len(point.coordinates) != rs.rank:
        raise PreconditionError(f"{rs.label}: vector of length {len(point.coordinates)}")
    coords = _field_vector(rs, point)
    duals = dual_at(rs, coords[0].conductor)
    mask = 0
    for r in range(0, rs.num_roots, 2):
        if dot(duals[r], coords).is_zero():
            mask |= 0b11 << r
    phi = RootSubset(mask)
    return StabilizerReport(point, phi, rs.num_roots - len(phi))


def reflection_subgroup_order(rs: RootSystem, subset: RootSubset) -> int:
    """Order of the group generated by the reflections in the given roots."""
    gens = [reflection_matrix(rs, r) for r in positive_indices(subset)]
    identity = Matrix.identity(rs.rank, rs.conductor)
    seen = {identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for g in gens:
            image = g @ current
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return len(seen)


def stabilizer(
    rs: RootSystem,
    enumeration: Optional[GroupEnumeration],
    x: Union[EigenVectorPoint, Sequence[CycloNum]],
) -> StabilizerReport:
    """W_x by a full group scan, checked against its reflection subgroup and a parabolic."""
    if enumeration is None:
        raise GroupTooLarge(str(rs.label), rs.order, 0)
    report = N_of(rs, x)
    coords = _field_vector(rs, report.point)
    fixers = sum(1 for g in enumeration if g.apply(coords) == coords)
    generated = reflection_subgroup_order(rs, report.phi_x)
    witness = find_parabolic_witness(rs, report.phi_x)
    if witness is not None:
        expected = math.prod(parabolic_degrees(rs.label, witness.subset))
        if expected != fixers:
            raise ConsistencyError(
                f"{rs.label}: |W_x| = {fixers} but parabolic {witness.type_name} "
                f"has order {expected}"
            )
    return replace(
        report,
        group_order=fixers,
        generated_by_reflections=generated == fixers,
        parabolic_witness=witness,
    )


# ============ EIGENSPACES ============


def eigenspace(
    w: GroupElement, b: int, charpoly: Optional[Sequence[CycloNum]] = None
) -> Subspace:
    """ker(w - zeta_b I) over Q(zeta_L), L = lcm(base conductor, b)."""
    if b < 1:
        raise PreconditionError(f"b must be positive, got {b}")
    n = w.rank
    conductor = math.lcm(w.matrix.conductor, b)
    if charpoly is None:
        charpoly = characteristic_polynomial(w)
    if not charpoly_vanishes_at(charpoly, b):
        return Subspace.zero(n, conductor)
    zeta = CycloNum.zeta(b, 1, conductor)
    shifted = w.matrix.lift(conductor) - Matrix.identity(n, conductor).scale(zeta)
    return kernel(shifted)


def _at_root_field(rs: RootSystem, space: Subspace) -> Subspace:
    return space.lift(math.lcm(space.conductor, rs.conductor))


def _orthogonal_mask(rs: RootSystem, space: Subspace, known: int = 0) -> int:
    duals = dual_at(rs, space.conductor)
    vectors = space.vectors()
    mask = known
    for r in range(0, rs.num_roots, 2):
        if mask >> r & 1:
            continue
        if all(dot(duals[r], v).is_zero() for v in vectors):
            mask |= 0b11 << r
    return mask


def orthogonal_roots(rs: RootSystem, space: Subspace) -> RootSubset:
    """Roots vanishing on all of the subspace (Phi_x for generic x in it)."""
    return RootSubset(_orthogonal_mask(rs, _at_root_field(rs, space)))


# ============ FLAT SEARCH ============


class FlatSearch:
    """Memoized walk of the flats below a subspace.

    For each canonical flat key the memo stores the best flat of its subtree
    as (orthogonal root count, flat, root mask). Ties keep the first flat met
    in pre-order with roots scanned by index.
    """

    def __init__(self, rs: RootSystem) -> None:
        self.rs = rs
        self.memo: Dict[tuple, Tuple[int, Subspace, int]] = {}

    @property
    def flats_visited(self) -> int:
        return len(self.memo)

    def best(self, space: Subspace, known: int = 0) -> Tuple[int, Subspace, int]:
        key = space.key()
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        rs = self.rs
        mask = _orthogonal_mask(rs, space, known)
        result = (bin(mask).count("1"), space, mask)
        duals = dual_at(rs, space.conductor)
        for r in range(0, rs.num_roots, 2):
            if mask >> r & 1:
                continue
            child = space.meet_hyperplane(duals[r])
            if child.is_zero():
                continue
            found = self.best(child, mask)
            if found[0] > result[0]:
                result = found
        self.memo[key] = result
        return result


@dataclass(frozen=True)
class FlatResult:
    min_N: int
    witness_flat: Subspace
    witness_phi: RootSubset


def min_N_over_eigenspace(
    rs: RootSystem, space: Subspace, memo: Optional[FlatSearch] = None
) -> FlatResult:
    """Exact minimum of N(x) over the nonzero vectors of a subspace."""
    if space.is_zero():
        raise EmptyEigenspace(f"{rs.label}: flat search on the zero subspace")
    search = memo if memo is not None else FlatSearch(rs)
    count, flat, mask = search.best(_at_root_field(rs, space))
    return FlatResult(rs.num_roots - count, flat, RootSubset(mask))


def reflect_subspace(rs: RootSystem, i: int, space: Subspace) -> Subspace:
    """s_i(space); s_i changes coordinate i by -2 B(a_i, v)."""
    functional = dual_at(rs, space.conductor)[2 * i]
    images = []
    for v in space.vectors():
        out = list(v)
        out[i] = v[i] - dot(functional, v) * 2
        images.append(tuple(out))
    return Subspace.span(images, space.ambient, space.conductor)


def subspace_orbit(rs: RootSystem, space: Subspace) -> Set[tuple]:
    """Canonical keys of the W-orbit of a subspace."""
    seen = {space.key()}
    queue = deque([space])
    while queue:
        current = queue.popleft()
        for i in range(rs.rank):
            image = reflect_subspace(rs, i, current)
            key = image.key()
            if key not in seen:
                seen.add(key)
                queue.append(image)
    return seen


# ============ VERIFICATION ============


@dataclass(frozen=True)
class VerificationRecord:
    """Minimum of N over V(b) for one type, compared with the bound b*n."""

    label: str
    rank: int
    b: int
    coxeter_number: int
    vb_nonempty: bool
    divides_degree: bool
    min_N: Optional[int]
    bound: int
    equality: bool
    witness_flat: Optional[Subspace]
    witness_phi: Optional[RootSubset]
    elements_scanned: int
    admitting_elements: int
    distinct_eigenspaces: int
    flats_visited: int
    wall_time_ms: float = 0.0

    def failure(self) -> Optional[str]:
        """Reason the record contradicts the bound, or None."""
        if self.vb_nonempty != self.divides_degree:
            return (
                f"V({self.b}) nonempty={self.vb_nonempty} "
                f"but b divides a degree={self.divides_degree}"
            )
        if not self.vb_nonempty:
            return None
        assert self.min_N is not None
        if self.min_N < self.bound:
            return f"min N = {self.min_N} < b*n = {self.bound}"
        if self.equality != (self.b == self.coxeter_number):
            return f"equality={self.equality} with b={self.b}, h={self.coxeter_number}"
        return None

    @property
    def passes(self) -> bool:
        return self.failure() is None

    def to_dict(self, timing: bool = True) -> Dict[str, object]:
        witness = None
        if self.witness_flat is not None and self.witness_phi is not None:
            witness = {
                "flat_basis": [[str(c) for c in row] for row in self.witness_flat.vectors()],
                "orthogonal_root_indices": list(self.witness_phi.indices()),
            }
        out: Dict[str, object] = {
            "b": self.b,
            "vb_nonempty": self.vb_nonempty,
            "min_N": self.min_N,
            "bound": self.bound,
            "equality": self.equality,
            "passes": self.passes,
            "witness": witness,
            "elements_scanned": self.elements_scanned,
            "admitting_elements": self.admitting_elements,
            "distinct_eigenspaces": self.distinct_eigenspaces,
            "flats_visited": self.flats_visited,
        }
        if timing:
            out["wall_time_ms"] = round(self.wall_time_ms, 3)
        return out


def _eigen_chunk(b: int, elements: Sequence[GroupElement]) -> List[Optional[Subspace]]:
    out: List[Optional[Subspace]] = []
    for g in elements:
        charpoly = characteristic_polynomial(g)
        out.append(eigenspace(g, b, charpoly) if charpoly_vanishes_at(charpoly, b) else None)
    return out


def _chunks(elements: Iterable[GroupElement], size: int) -> Iterator[List[GroupElement]]:
    chunk: List[GroupElement] = []
    for g in elements:
        chunk.append(g)
        if len(chunk) == size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def _eigen_results(
    elements: Iterable[GroupElement], b: int, workers: int, chunk_size: int
) -> Iterator[Optional[Subspace]]:
    """Eigenspace per element (None when zeta_b is not an eigenvalue), in element order."""
    if workers <= 1:
        for chunk in _chunks(elements, chunk_size):
            for space in _eigen_chunk(b, chunk):
                yield space
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        pending: Deque[Future] = deque()
        for chunk in _chunks(elements, chunk_size):
            pending.append(pool.submit(_eigen_chunk, b, chunk))
            if len(pending) >= 2 * workers:
                for space in pending.popleft().result():
                    yield space
        while pending:
            for space in pending.popleft().result():
                yield space


def min_N(
    rs: RootSystem,
    elements: Elements,
    b: int,
    workers: int = 1,
    memo: Optional[FlatSearch] = None,
    progress: bool = False,
    chunk_size: int = 256,
) -> VerificationRecord:
    """Minimum of N over V(b), the union of the zeta_b-eigenspaces of all w in W.

    Eigenspaces are computed per element (optionally across worker processes)
    and deduplicated in element order. Since N is constant on W-orbits, the
    orbit of each searched eigenspace under the simple reflections is skipped.
    """
    started = time.perf_counter()
    total = len(elements) if isinstance(elements, GroupEnumeration) else rs.order
    distinct: Dict[tuple, Subspace] = {}
    scanned = admitting = 0
    with tqdm(total=total, desc=f"{rs.label} b={b}", disable=not progress, leave=False) as bar:
        for space in _eigen_results(elements, b, workers, chunk_size):
            scanned += 1
            bar.update(1)
            if space is None:
                continue
            admitting += 1
            distinct.setdefault(space.key(), space)
    logger.debug(
        "%s b=%d: %d admitting elements, %d distinct eigenspaces",
        rs.label, b, admitting, len(distinct),
    )

    search = memo if memo is not None else FlatSearch(rs)
    done: Set[tuple] = set()
    best: Optional[Tuple[int, Subspace, int]] = None
    for key, space in distinct.items():
        if key in done:
            continue
        found = search.best(_at_root_field(rs, space))
        if best is None or found[0] > best[0]:
            best = found
        done |= subspace_orbit(rs, space)

    bound = b * rs.rank
    value = None if best is None else rs.num_roots - best[0]
    record = VerificationRecord(
        label=str(rs.label),
        rank=rs.rank,
        b=b,
        coxeter_number=rs.coxeter_number,
        vb_nonempty=best is not None,
        divides_degree=any(d % b == 0 for d in rs.degrees),
        min_N=value,
        bound=bound,
        equality=value == bound,
        witness_flat=None if best is None else best[1],
        witness_phi=None if best is None else RootSubset(best[2]),
        elements_scanned=scanned,
        admitting_elements=admitting,
        distinct_eigenspaces=len(distinct),
        flats_visited=search.flats_visited,
        wall_time_ms=(time.perf_counter() - started) * 1000,
    )
    logger.info("%s b=%d: min N = %s, bound %d", rs.label, b, record.min_N, bound)
    return record


def orders_admitting(rs: RootSystem, enumeration: Iterable[GroupElement], b: int) -> Set[int]:
    """Orders of the elements with zeta_b in their spectrum."""
    return {
        g.order()
        for g in enumeration
        if charpoly_vanishes_at(characteristic_polynomial(g), b)
    }


def check_parabolic_eigenspace_lemma(
    rs: RootSystem, enumeration: GroupEnumeration, subset: Sequence[int], b: int
) -> bool:
    """Every zeta_b-eigenspace of w in W_I lies in the span of I."""
    if b < 2:
        raise PreconditionError("the parabolic eigenspace identity needs b >= 2")
    chosen = sorted(set(subset))
    if len(chosen) >= rs.rank or any(not 0 <= i < rs.rank for i in chosen):
        raise PreconditionError(f"{chosen} does not define a proper parabolic of {rs.label}")
    conductor = math.lcm(rs.conductor, b)
    one, zero = CycloNum.one(conductor), CycloNum.zero(conductor)
    span = Subspace.span(
        [tuple(one if j == i else zero for j in range(rs.rank)) for i in chosen],
        rs.rank,
        conductor,
    )
    return all(span.contains_subspace(eigenspace(w, b)) for w in enumeration.parabolic(chosen))


# ============ KOSTANT AND SPRINGER WITNESSES ============


def coxeter_eigenvectors_regular(rs: RootSystem) -> bool:
    """Every eigenvector of the Coxeter element for a primitive h-th root is regular."""
    c = coxeter_element(rs)
    h = rs.coxeter_number
    conductor = math.lcm(rs.conductor, h)
    lifted = c.matrix.lift(conductor)
    identity = Matrix.identity(rs.rank, conductor)
    for m in range(1, h):
        if math.gcd(m, h) != 1:
            continue
        space = kernel(lifted - identity.scale(CycloNum.zeta(h, m, conductor)))
        if space.is_zero():
            continue
        if min_N_over_eigenspace(rs, space).min_N != rs.num_roots:
            return False
    return True


@dataclass(frozen=True)
class NonregularWitness:
    """w with w.x = zeta_b.x fixing a nonzero z, and the parabolic P = W_z."""

    element: GroupElement
    fixed_space: Subspace
    phi_z: RootSubset
    parabolic: ParabolicWitness
    degrees: Tuple[int, ...]
    x_in_parabolic_span: bool

    def b_divides_degree(self, b: int) -> bool:
        return any(d % b == 0 for d in self.degrees)


def nonregular_parabolic_witness(
    rs: RootSystem,
    enumeration: GroupEnumeration,
    x: Union[EigenVectorPoint, Sequence[CycloNum]],
    b: int,
) -> Optional[NonregularWitness]:
    """Locate a proper parabolic P containing some w with w.x = zeta_b.x.

    P is the stabilizer of a generic fixed vector of w; None if no element
    with eigenvalue 1 carries x to zeta_b.x.
    """
    if b < 2:
        raise PreconditionError("non-regular witnesses need b >= 2")
    report = N_of(rs, x)
    if report.is_regular:
        raise PreconditionError("x is regular")
    conductor = math.lcm(rs.conductor, b, report.point.conductor)
    coords = report.point.at(conductor)
    target = scale_vector(CycloNum.zeta(b, 1, conductor), coords)
    identity = Matrix.identity(rs.rank, rs.conductor)
    for w in enumeration:
        if w.apply(coords) != target:
            continue
        fixed = kernel(w.matrix - identity)
        if fixed.is_zero():
            continue
        phi_z = orthogonal_roots(rs, fixed)
        witness = find_parabolic_witness(rs, phi_z)
        if witness is None:
            raise ConsistencyError(f"{rs.label}: point stabilizer is not parabolic")
        inside = span_of(rs, phi_z).contains(coords) if phi_z.mask else False
        return NonregularWitness(
            element=w,
            fixed_space=fixed,
            phi_z=phi_z,
            parabolic=witness,
            degrees=parabolic_degrees(rs.label, witness.subset),
            x_in_parabolic_span=inside,
        )
    return None


# ============ BRUTE-FORCE ORACLES ============


def naive_flats(rs: RootSystem, space: Subspace) -> List[Subspace]:
    """All nonzero flats of a subspace by repeated hyperplane cuts, no memo."""
    space = _at_root_field(rs, space)
    duals = dual_at(rs, space.conductor)
    flats: Dict[tuple, Subspace] = {space.key(): space}
    frontier = [space]
    while frontier:
        following = []
        for flat in frontier:
            for r in range(0, rs.num_roots, 2):
                cut = flat.meet_hyperplane(duals[r])
                if cut.is_zero() or cut.key() in flats:
                    continue
                flats[cut.key()] = cut
                following.append(cut)
        frontier = following
    return list(flats.values())


def sample_points(
    space: Subspace, count: int, rng: np.random.Generator, spread: int = 5
) -> List[Vector]:
    """Random nonzero integer combinations of the basis of a subspace."""
    if space.is_zero():
        raise EmptyEigenspace("cannot sample the zero subspace")
    basis = space.vectors()
    zero = CycloNum.zero(space.conductor)
    points: List[Vector] = []
    while len(points) < count:
        weights = rng.integers(-spread, spread + 1, size=len(basis))
        if not weights.any():
            continue
        point = [zero] * space.ambient
        for weight, row in zip(weights.tolist(), basis):
            if weight:
                point = [p + c * weight for p, c in zip(point, row)]
        points.append(tuple(point))
    return points
