"""
eigenflats - exact eigenvector stabilizers of finite reflection groups

Checks that every zeta_b-eigenvector x of an element of W has at least b*n
roots not orthogonal to it, with equality exactly when b is the Coxeter number.

Usage:
    >>> from eigenflats import TypeLabel, build_root_system, enumerate_group, min_N
    >>> rs = build_root_system(TypeLabel.parse("A3"))
    >>> record = min_N(rs, enumerate_group(rs, cap=1000), b=4)
    >>> record.min_N, record.equality
    (12, True)
"""

from eigenflats.cyclo import CycloNum, parse_literal
from eigenflats.eigenstab import (
    FlatSearch,
    N_of,
    VerificationRecord,
    eigenspace,
    min_N,
    min_N_over_eigenspace,
    stabilizer,
)
from eigenflats.errors import EigenflatsError
from eigenflats.family import construct_eigenvector, predicted_max_stabilizer
from eigenflats.laurent import check_rationality_necessary, parse_leading_term
from eigenflats.linalg import Matrix, Subspace
from eigenflats.rootsys import RootSystem, TypeLabel, build_root_system, group_facts
from eigenflats.springer import invariant_polynomials, quadratic_form
from eigenflats.wgroup import GroupElement, enumerate_group, stream_group

__version__ = "0.1.0"

__all__ = [
    "CycloNum",
    "parse_literal",
    "Matrix",
    "Subspace",
    "TypeLabel",
    "RootSystem",
    "build_root_system",
    "group_facts",
    "GroupElement",
    "enumerate_group",
    "stream_group",
    "FlatSearch",
    "N_of",
    "VerificationRecord",
    "eigenspace",
    "min_N",
    "min_N_over_eigenspace",
    "stabilizer",
    "invariant_polynomials",
    "quadratic_form",
    "construct_eigenvector",
    "predicted_max_stabilizer",
    "check_rationality_necessary",
    "parse_leading_term",
    "EigenflatsError",
    "__version__",
]
