"""Necessary condition for rational conjugacy of a Laurent leading term.

A leading term x t^(a/b) with gcd(a, b) = 1 can only come from a rational
element when x lies in V(b); the lower bound then reads N(x) >= b n, with
equality exactly for b = h. Only the leading term is consumed.

Input document:
    {"type": "A3", "a": 1, "b": 4, "x": ["1", "z4", "-1", "-z4"],
     "coords": "model" | "root", "higher": [...]}
"""

from __future__ import annotations

import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from eigenflats.config import get_settings
from eigenflats.cyclo import CycloNum, common_conductor, parse_literal
from eigenflats.eigenstab import N_of
from eigenflats.errors import (
    ConsistencyError,
    LeadingTermError,
    NotCoprime,
    PreconditionError,
    TheoremViolation,
    ZeroLeadingTerm,
)
from eigenflats.linalg import Vector, is_zero_vector, lift_vector
from eigenflats.rootsys import RootSystem, TypeLabel, build_root_system
from eigenflats.springer import (
    InvariantSet,
    in_Vb_by_invariants,
    in_Vb_by_search,
    invariant_polynomials,
)
from eigenflats.wgroup import GroupElement, GroupEnumeration, enumerate_group

logger = logging.getLogger(__name__)

FAILS = "FailsNecessaryCondition"
PASSES = "PassesNecessaryCondition"

MODEL = "model"
ROOT = "root"


@dataclass(frozen=True)
class LaurentLeading:
    """x t^(a/b) with gcd(a, b) = 1 and x != 0."""

    label: TypeLabel
    a: int
    b: int
    x: Vector
    coords: str = ROOT
    higher: bool = False

    def root_vector(self) -> Vector:
        if self.coords == ROOT:
            return self.x
        return invariant_polynomials(self.label).from_model(self.x)


def _require_int(data: Dict[str, Any], name: str) -> int:
    value = data.get(name)
    if isinstance(value, bool) or not isinstance(value, int):
        raise LeadingTermError(f"{name!r} must be an integer, got {value!r}")
    return value


def _coordinate_mode(label: TypeLabel, requested: Optional[str], length: int) -> str:
    inv = invariant_polynomials(label)
    if requested is None:
        return MODEL if inv.complete and length == inv.dimension else ROOT
    if requested not in (MODEL, ROOT):
        raise LeadingTermError(f"'coords' must be 'model' or 'root', got {requested!r}")
    if requested == MODEL and not inv.complete:
        raise LeadingTermError(f"{label} has no coordinate model besides the root basis")
    return requested


def parse_leading_term(text: str) -> LaurentLeading:
    """Validate a JSON leading-term document."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise LeadingTermError(f"invalid JSON: {e}") from e
    if not isinstance(data, dict):
        raise LeadingTermError("leading term must be a JSON object")
    if not isinstance(data.get("type"), str):
        raise LeadingTermError("'type' must be a type label such as \"A3\"")
    label = TypeLabel.parse(data["type"])
    a, b = _require_int(data, "a"), _require_int(data, "b")
    if b <= 0:
        raise LeadingTermError(f"'b' must be positive, got {b}")
    if math.gcd(a, b) != 1:
        raise NotCoprime(f"gcd({a}, {b}) = {math.gcd(a, b)}")

    raw = data.get("x")
    if not isinstance(raw, list) or not raw:
        raise LeadingTermError("'x' must be a nonempty list of scalar literals")
    values = [parse_literal(str(item)) for item in raw]
    x = lift_vector(tuple(values), common_conductor(values))
    if is_zero_vector(x):
        raise ZeroLeadingTerm("the leading coefficient x must be nonzero")

    mode = _coordinate_mode(label, data.get("coords"), len(x))
    expected = invariant_polynomials(label).dimension if mode == MODEL else label.n
    if len(x) != expected:
        raise LeadingTermError(f"{label}: expected {expected} {mode} coordinates, got {len(x)}")
    higher = "higher" in data and data["higher"] is not None
    if higher:
        logger.warning("%s: ignoring higher-order terms, only the leading term matters", label)
    leading = LaurentLeading(label, a, b, x, mode, higher)
    if mode == MODEL:
        try:
            leading.root_vector()
        except PreconditionError as e:
            raise LeadingTermError(str(e)) from e
    return leading


# ============ CHECKING ============


@dataclass(frozen=True)
class LaurentContext:
    """Read-only data shared by every request of one type."""

    rs: RootSystem
    enumeration: GroupEnumeration
    invariants: InvariantSet


def prepare_context(label: TypeLabel, cap: Optional[int] = None) -> LaurentContext:
    rs = build_root_system(label)
    limit = get_settings().group_cap if cap is None else cap
    enumeration = enumerate_group(rs, limit)
    return LaurentContext(rs, enumeration, invariant_polynomials(label))


@dataclass(frozen=True)
class RationalityVerdict:
    in_Vb: bool
    witness: Optional[GroupElement]
    N: int
    bound: int
    equality: bool
    conclusion: str

    @property
    def witness_order(self) -> Optional[int]:
        return self.witness.order() if self.witness is not None else None

    def to_dict(self) -> Dict[str, object]:
        return {
            "in_Vb": self.in_Vb,
            "N": self.N,
            "bound": self.bound,
            "equality": self.equality,
            "conclusion": self.conclusion,
            "witness_order": self.witness_order,
        }


def check_rationality_necessary(
    ll: LaurentLeading, context: Optional[LaurentContext] = None
) -> RationalityVerdict:
    """Decide x in V(b) and compare N(x) with b n.

    Raises TheoremViolation when x lies in V(b) but N(x) < b n, or when
    equality disagrees with b = h.
    """
    ctx = context if context is not None else prepare_context(ll.label)
    rs = ctx.rs
    x = ll.root_vector()
    witness = in_Vb_by_search(rs, ctx.enumeration, x, ll.b)
    in_vb = witness is not None
    if ctx.invariants.complete:
        model = ll.x if ll.coords == MODEL else ctx.invariants.to_model(x)
        by_invariants = in_Vb_by_invariants(ctx.invariants, model, ll.b)
        if by_invariants != in_vb:
            raise ConsistencyError(
                f"{rs.label} b={ll.b}: invariants say {by_invariants}, eigen-search says {in_vb}"
            )

    n_value = N_of(rs, x).N
    bound = ll.b * rs.rank
    equality = n_value == bound
    if in_vb and (n_value < bound or equality != (ll.b == rs.coxeter_number)):
        counterexample = {
            "type": str(rs.label),
            "b": ll.b,
            "x": [str(c) for c in x],
            "N": n_value,
            "bound": bound,
            "word": list(witness.word) if witness is not None and witness.word else [],
        }
        logger.error("%s b=%d: N(x) = %d against b*n = %d", rs.label, ll.b, n_value, bound)
        raise TheoremViolation(
            f"{rs.label} b={ll.b}: N(x) = {n_value}, b*n = {bound}", counterexample
        )

    conclusion = PASSES if in_vb else FAILS
    logger.info("%s a/b=%d/%d: %s (N = %d)", rs.label, ll.a, ll.b, conclusion, n_value)
    return RationalityVerdict(in_vb, witness, n_value, bound, in_vb and equality, conclusion)


def check_many(
    requests: Sequence[LaurentLeading], workers: int = 1, cap: Optional[int] = None
) -> List[RationalityVerdict]:
    """Verdicts in input order; one context per type, shared across threads."""
    contexts: Dict[str, LaurentContext] = {}
    for ll in requests:
        key = str(ll.label)
        if key not in contexts:
            contexts[key] = prepare_context(ll.label, cap)
    jobs: List[Tuple[LaurentLeading, LaurentContext]] = [
        (ll, contexts[str(ll.label)]) for ll in requests
    ]
    if workers <= 1:
        return [check_rationality_necessary(ll, ctx) for ll, ctx in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda job: check_rationality_necessary(*job), jobs))
