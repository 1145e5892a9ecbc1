"""Closed-form eigenvectors in the classical types.

Type A_{n-1} acts on n coordinates by permutations. A vector whose
coordinates are the orbits {zeta^i a_j : 0 <= i < b} of k nonzero numbers,
padded with n - kb zeros, is a zeta-eigenvector of the permutation cycling
each orbit. Types B_n and D_n use signed permutations on n coordinates; for
even b a negative cycle of length b/2 already has zeta_b as an eigenvalue.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Sequence, Tuple

from eigenflats.cyclo import CycloNum, common_conductor
from eigenflats.errors import ConsistencyError, PreconditionError, UnsupportedType
from eigenflats.linalg import Vector, lift_vector

logger = logging.getLogger(__name__)


def cycle_length(family: str, b: int) -> int:
    """Coordinates per zeta-orbit: b in type A and for odd b, b/2 for even b in B/D."""
    if family == "A" or b % 2:
        return b
    return b // 2


@dataclass(frozen=True)
class ClassicalWitness:
    """Eigenvector built from k orbits of zeta_b, in model coordinates."""

    family: str
    n: int
    b: int
    k: int
    alphas: Tuple[CycloNum, ...]
    vector: Vector
    # (w.x)[p] = sign[p] * x[perm[p]] equals zeta_b * x
    perm: Tuple[int, ...]
    signs: Tuple[int, ...]

    @property
    def label(self) -> str:
        return f"{self.family}{self.n - 1 if self.family == 'A' else self.n}"

    def act(self, x: Sequence[CycloNum]) -> Vector:
        return tuple(x[q] * s for q, s in zip(self.perm, self.signs))

    def is_eigenvector(self) -> bool:
        zeta = CycloNum.zeta(self.b, 1, self.vector[0].conductor)
        return self.act(self.vector) == tuple(zeta * c for c in self.vector)


def _validate(n: int, b: int, k: int, alphas: Sequence[CycloNum], width: int) -> None:
    if b < 2:
        raise PreconditionError(f"b must exceed 1, got {b}")
    if k < 1 or len(alphas) != k:
        raise PreconditionError(f"need k >= 1 nonzero alphas, got k={k} and {len(alphas)} values")
    if k * width > n:
        raise PreconditionError(f"{k} orbits of {width} coordinates exceed {n}")
    if any(a.is_zero() for a in alphas):
        raise PreconditionError("alphas must be nonzero")


def _build(
    family: str, n: int, b: int, k: int, alphas: Sequence[CycloNum]
) -> ClassicalWitness:
    width = cycle_length(family, b)
    _validate(n, b, k, alphas, width)
    conductor = math.lcm(b, common_conductor(list(alphas)))
    values = lift_vector(tuple(alphas), conductor)
    coords: List[CycloNum] = []
    perm: List[int] = []
    signs: List[int] = []
    for j, a in enumerate(values):
        base = j * width
        for i in range(width):
            coords.append(CycloNum.zeta(b, i, conductor) * a)
            last = i == width - 1
            perm.append(base if last else base + i + 1)
            # closing a half-length cycle picks up zeta^(b/2) = -1
            signs.append(-1 if last and width != b else 1)
    tail = n - len(coords)
    coords.extend([CycloNum.zero(conductor)] * tail)
    perm.extend(range(len(perm), n))
    signs.extend([1] * tail)
    return ClassicalWitness(family, n, b, k, values, tuple(coords), tuple(perm), tuple(signs))


def construct_eigenvector_A(n: int, b: int, k: int, alphas: Sequence[CycloNum]) -> ClassicalWitness:
    """Coordinates {zeta_b^i a_j} plus n - kb zeros for A_{n-1} on n coordinates."""
    return _build("A", n, b, k, alphas)


def construct_eigenvector_B(n: int, b: int, k: int, alphas: Sequence[CycloNum]) -> ClassicalWitness:
    return _build("B", n, b, k, alphas)


def construct_eigenvector_D(n: int, b: int, k: int, alphas: Sequence[CycloNum]) -> ClassicalWitness:
    """As for B_n; the signed cycle must have an even number of sign changes.

    A spare zero coordinate absorbs one extra sign, so odd k with even b
    needs n > k*b/2.
    """
    if n < 4:
        raise UnsupportedType(f"D{n} is not a valid type")
    witness = _build("D", n, b, k, alphas)
    flips = sum(1 for s in witness.signs if s < 0)
    if flips % 2:
        spare = k * cycle_length("D", b)
        if spare >= n:
            raise PreconditionError(f"D{n}: {k} negative cycles need a spare zero coordinate")
        signs = list(witness.signs)
        signs[spare] = -1
        return ClassicalWitness(
            "D", n, b, k, witness.alphas, witness.vector, witness.perm, tuple(signs)
        )
    return witness


def construct_eigenvector(
    family: str, n: int, b: int, k: int, alphas: Sequence[CycloNum]
) -> ClassicalWitness:
    builders = {
        "A": construct_eigenvector_A,
        "B": construct_eigenvector_B,
        "D": construct_eigenvector_D,
    }
    if family not in builders:
        raise UnsupportedType(f"no closed-form eigenvectors for type {family}")
    return builders[family](n, b, k, alphas)


def degenerate_witness(family: str, n: int, b: int, k: int) -> ClassicalWitness:
    """Witness with all a_j equal, which maximizes the stabilizer for given k."""
    return construct_eigenvector(family, n, b, k, [CycloNum.one()] * k)


class StabilizerShape(NamedTuple):
    descriptor: str
    root_count: int


def predicted_max_stabilizer(family: str, n: int, b: int, k: int) -> StabilizerShape:
    """Stabilizer of the degenerate witness: (S_k)^c times the type on the zeros.

    For A the count is exact, b k(k-1) + (n-kb)(n-kb-1) on n coordinates.
    For B and D it is the computed count of the degenerate witness.
    """
    width = cycle_length(family, b)
    m = n - width * k
    if m < 0 or k < 1:
        raise PreconditionError(f"k={k} orbits of {width} coordinates exceed {n}")
    blocks = width * k * (k - 1)
    if family == "A":
        return StabilizerShape(f"(S{k})^{b} x S{m}", blocks + m * (m - 1))
    if family == "B":
        return StabilizerShape(f"(S{k})^{width} x B{m}", blocks + 2 * m * m)
    if family == "D":
        return StabilizerShape(f"(S{k})^{width} x D{m}", blocks + 2 * m * (m - 1))
    raise UnsupportedType(f"no stabilizer prediction for type {family}")


def admissible_k(family: str, n: int, b: int) -> Tuple[int, ...]:
    return tuple(range(1, n // cycle_length(family, b) + 1))


def best_prediction(family: str, n: int, b: int) -> Tuple[int, StabilizerShape]:
    """k maximizing the predicted stabilizer root count (smallest k on ties)."""
    options = [(k, predicted_max_stabilizer(family, n, b, k)) for k in admissible_k(family, n, b)]
    if not options:
        raise PreconditionError(f"no admissible k for {family} n={n} b={b}")
    return max(options, key=lambda item: item[1].root_count)


# ---- the polynomial with the witness coordinates as roots ----------------


class LeadingPolynomial(NamedTuple):
    degree: int
    step: int
    # coefficients of X^(degree - j*step), j = 1, 2, ...
    coefficients: Tuple[CycloNum, ...]


def _poly_from_roots(roots: Sequence[CycloNum], conductor: int) -> List[CycloNum]:
    """prod (X - r), highest degree first."""
    coeffs = [CycloNum.one(conductor)]
    for r in roots:
        shifted = coeffs + [CycloNum.zero(conductor)]
        for j in range(1, len(shifted)):
            shifted[j] = shifted[j] - coeffs[j - 1] * r
        coeffs = shifted
    return coeffs


def leading_polynomial(witness: ClassicalWitness) -> LeadingPolynomial:
    """P(X) = prod (X - y) over the witness coordinates (and their negatives in B/D).

    Only the powers X^(degree - j b) may occur.
    """
    conductor = witness.vector[0].conductor
    roots = list(witness.vector)
    if witness.family != "A":
        roots += [-c for c in witness.vector]
    coeffs = _poly_from_roots(roots, conductor)
    degree, b = len(roots), witness.b
    for t, c in enumerate(coeffs):
        if t % b and not c.is_zero():
            raise ConsistencyError(f"X^{degree - t} occurs with b = {b}")
    found = [coeffs[t] for t in range(b, degree + 1, b)]
    while found and found[-1].is_zero():
        found.pop()
    if not found:
        raise ConsistencyError("witness polynomial has no lower terms")
    return LeadingPolynomial(degree, b, tuple(found))


def describe(witness: ClassicalWitness) -> Dict[str, object]:
    return {
        "type": witness.label,
        "b": witness.b,
        "k": witness.k,
        "alphas": [str(a) for a in witness.alphas],
        "vector": [str(c) for c in witness.vector],
    }
