"""Standard parabolic subsystems, their types and their W-orbits.

A subset I of the simple roots spans the standard parabolic subsystem
Phi_I = Phi ∩ span(I). Its irreducible components are read off the Coxeter
diagram restricted to I.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from eigenflats.errors import UnsupportedType
from eigenflats.rootsys import (
    RootSubset,
    RootSystem,
    TypeLabel,
    apply_simple,
    coxeter_matrix,
    degrees,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Component:
    """One irreducible component of a Coxeter subdiagram."""

    label: TypeLabel
    nodes: Tuple[int, ...]

    def __str__(self) -> str:
        return str(self.label)


def _components(cox: Sequence[Sequence[int]], nodes: Iterable[int]) -> List[List[int]]:
    remaining = sorted(set(nodes))
    pool = set(remaining)
    out = []
    for start in remaining:
        if start not in pool:
            continue
        pool.discard(start)
        comp, queue = [start], deque([start])
        while queue:
            u = queue.popleft()
            for v in sorted(pool):
                if cox[u][v] >= 3:
                    pool.discard(v)
                    comp.append(v)
                    queue.append(v)
        out.append(sorted(comp))
    return out


def _classify_component(cox: Sequence[Sequence[int]], nodes: List[int]) -> TypeLabel:
    k = len(nodes)
    if k == 1:
        return TypeLabel("A", 1)
    neighbours = {u: [v for v in nodes if v != u and cox[u][v] >= 3] for u in nodes}
    if k == 2:
        m = cox[nodes[0]][nodes[1]]
        return {3: TypeLabel("A", 2), 4: TypeLabel("B", 2), 6: TypeLabel("G", 2)}.get(
            m, TypeLabel("I", 2, m)
        )
    branch = [u for u in nodes if len(neighbours[u]) >= 3]
    if branch:
        if len(branch) > 1 or len(neighbours[branch[0]]) > 3:
            raise UnsupportedType(f"diagram on {nodes} is not of finite type")
        if any(cox[u][v] != 3 for u in nodes for v in neighbours[u]):
            raise UnsupportedType(f"branched diagram on {nodes} has a multiple bond")
        centre = branch[0]
        arms = []
        for start in neighbours[centre]:
            length, prev, cur = 1, centre, start
            while True:
                nxt = [v for v in neighbours[cur] if v != prev]
                if not nxt:
                    break
                length, prev, cur = length + 1, cur, nxt[0]
            arms.append(length)
        arms.sort()
        if arms[:2] == [1, 1]:
            return TypeLabel("D", k)
        if arms == [1, 2, 2]:
            return TypeLabel("E", 6)
        if arms == [1, 2, 3]:
            return TypeLabel("E", 7)
        raise UnsupportedType(f"branched diagram with arms {arms} is not supported")

    ends = [u for u in nodes if len(neighbours[u]) == 1]
    path = [min(ends)]
    while len(path) < k:
        path.append(next(v for v in neighbours[path[-1]] if v not in path))
    bonds = [cox[path[i]][path[i + 1]] for i in range(k - 1)]
    heavy = [(i, m) for i, m in enumerate(bonds) if m != 3]
    if not heavy:
        return TypeLabel("A", k)
    if len(heavy) > 1:
        raise UnsupportedType(f"path diagram with bonds {bonds} is not of finite type")
    position, m = heavy[0]
    at_end = position in (0, k - 2)
    if m == 4 and at_end:
        return TypeLabel("B", k)
    if m == 4 and k == 4:
        return TypeLabel("F", 4)
    if m == 5 and at_end and k in (3, 4):
        return TypeLabel("H", k)
    raise UnsupportedType(f"path diagram with bonds {bonds} is not of finite type")


def classify(label: TypeLabel, subset: Iterable[int]) -> Tuple[Component, ...]:
    """Irreducible components of the parabolic W_I, ordered by smallest node."""
    cox = coxeter_matrix(label)
    return tuple(
        Component(_classify_component(cox, nodes), tuple(nodes))
        for nodes in _components(cox, subset)
    )


def parabolic_degrees(label: TypeLabel, subset: Iterable[int]) -> Tuple[int, ...]:
    """Degrees of W_I: the union of its component degrees."""
    out: List[int] = []
    for comp in classify(label, subset):
        out.extend(degrees(comp.label))
    return tuple(sorted(out))


def parabolic_subsystem(rs: RootSystem, subset: Iterable[int]) -> RootSubset:
    """Phi_I: the roots supported on the simple roots in I."""
    allowed = frozenset(subset)
    return RootSubset.from_indices(
        r
        for r, v in enumerate(rs.roots)
        if all(c.is_zero() for i, c in enumerate(v) if i not in allowed)
    )


@dataclass(frozen=True)
class ParabolicInfo:
    subset: Tuple[int, ...]
    roots: RootSubset
    components: Tuple[Component, ...]
    degrees: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.subset)

    @property
    def num_roots(self) -> int:
        return len(self.roots)

    @property
    def order(self) -> int:
        return math.prod(self.degrees)

    @property
    def type_name(self) -> str:
        return " x ".join(str(c) for c in self.components) or "1"

    def to_dict(self) -> Dict[str, object]:
        return {
            "subset": list(self.subset),
            "type": self.type_name,
            "rank": self.rank,
            "num_roots": self.num_roots,
            "degrees": list(self.degrees),
        }


def parabolic_facts(rs: RootSystem) -> Tuple[ParabolicInfo, ...]:
    """Every proper standard parabolic, by subset bitmask order."""
    n = rs.rank
    out = []
    for bits in range((1 << n) - 1):
        subset = tuple(i for i in range(n) if bits >> i & 1)
        out.append(
            ParabolicInfo(
                subset=subset,
                roots=parabolic_subsystem(rs, subset),
                components=classify(rs.label, subset),
                degrees=parabolic_degrees(rs.label, subset),
            )
        )
    return tuple(out)


def max_parabolic(rs: RootSystem, max_rank: Optional[int] = None) -> ParabolicInfo:
    """Proper parabolic with the most roots (first in subset order on ties)."""
    limit = rs.rank - 1 if max_rank is None else max_rank
    candidates = [p for p in parabolic_facts(rs) if p.rank <= limit]
    return max(candidates, key=lambda p: p.num_roots)


def parabolics_with_degree_divisible_by(rs: RootSystem, b: int) -> Tuple[ParabolicInfo, ...]:
    return tuple(p for p in parabolic_facts(rs) if any(d % b == 0 for d in p.degrees))


def first_step_bound(rs: RootSystem) -> int:
    """Lower bound on N(x) for non-regular x: |Phi| minus the largest proper parabolic."""
    return rs.num_roots - max_parabolic(rs).num_roots


def settled_by_first_step(rs: RootSystem) -> Tuple[int, ...]:
    """Degree divisors b with b*n strictly below the first-step bound."""
    bound = first_step_bound(rs)
    found = {b for d in rs.degrees for b in range(1, d + 1) if d % b == 0}
    return tuple(sorted(b for b in found if b * rs.rank < bound))


def quadratic_step_bound(rs: RootSystem) -> int:
    """Lower bound on N(x) when Q(x) = 0, where W_x has rank at most n - 2."""
    return rs.num_roots - max_parabolic(rs, rs.rank - 2).num_roots


# ============ ORBITS ============


@dataclass(frozen=True)
class ParabolicWitness:
    """Phi_x = w(Phi_I) with w given as a word in simple reflections."""

    word: Tuple[int, ...]
    subset: Tuple[int, ...]
    components: Tuple[Component, ...]

    @property
    def type_name(self) -> str:
        return " x ".join(str(c) for c in self.components) or "1"

    def to_dict(self) -> Dict[str, object]:
        return {"word": list(self.word), "subset": list(self.subset), "type": self.type_name}


def orbit(rs: RootSystem, subset: RootSubset) -> Dict[int, Tuple[int, ...]]:
    """W-orbit of a root subset: mask -> word w with mask = w(subset)."""
    words: Dict[int, Tuple[int, ...]] = {subset.mask: ()}
    queue = deque([subset])
    while queue:
        current = queue.popleft()
        word = words[current.mask]
        for i in range(rs.rank):
            image = apply_simple(rs, i, current)
            if image.mask not in words:
                words[image.mask] = (i,) + word
                queue.append(image)
    return words


def _standard_subset(rs: RootSystem, subset: RootSubset) -> Optional[Tuple[int, ...]]:
    support: FrozenSet[int] = frozenset()
    for r in subset:
        support |= rs.support(r)
    candidate = tuple(sorted(support))
    if parabolic_subsystem(rs, candidate) == subset:
        return candidate
    return None


def find_parabolic_witness(rs: RootSystem, subset: RootSubset) -> Optional[ParabolicWitness]:
    """Conjugate a root subsystem onto a standard parabolic Phi_I.

    Walks the W-orbit breadth first; returns None when no conjugate is
    standard, i.e. the subset is not a parabolic subsystem.
    """
    words: Dict[int, Tuple[int, ...]] = {subset.mask: ()}
    queue = deque([subset])
    while queue:
        current = queue.popleft()
        word = words[current.mask]
        standard = _standard_subset(rs, current)
        if standard is not None:
            # current = u(subset), so subset = u^-1(Phi_I)
            inverse = tuple(reversed(word))
            return ParabolicWitness(inverse, standard, classify(rs.label, standard))
        for i in range(rs.rank):
            image = apply_simple(rs, i, current)
            if image.mask not in words:
                words[image.mask] = (i,) + word
                queue.append(image)
    logger.debug("%s: subset of %d roots is not parabolic", rs.label, len(subset))
    return None


def apply_word(rs: RootSystem, word: Sequence[int], subset: RootSubset) -> RootSubset:
    """Image of a root subset under s_{word[0]} ... s_{word[-1]}."""
    for i in reversed(word):
        subset = apply_simple(rs, i, subset)
    return subset
