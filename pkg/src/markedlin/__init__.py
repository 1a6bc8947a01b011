"""Exact GIT stability for projective linear maps with marked points."""

from __future__ import annotations

from .algebra import QQ, PrimeField, Subspace, span
from .flags import BudgetExceeded, Flag, FlagType, candidate_flags, classify_flag, enumerate_flags, hessenberg
from .maps import MarkedMap, ProjectiveMatrix, Sheaf
from .polyhedra import CornerPolyhedron, Facet, corner_facets, corner_membership, minkowski_translate
from .profiles import ControlMatrix, Profile, control_matrix, enumerate_profiles, pivotal_entries, profile
from .stability import (
    Mode,
    StabilityVerdict,
    Status,
    Witness,
    check_stability,
    companion_form,
    hilbert_mumford_oracle,
    moduli_coordinates,
    mumford_config,
    stable_witness,
)

__all__ = [
    "QQ",
    "PrimeField",
    "Subspace",
    "span",
    "BudgetExceeded",
    "Flag",
    "FlagType",
    "candidate_flags",
    "classify_flag",
    "enumerate_flags",
    "hessenberg",
    "MarkedMap",
    "ProjectiveMatrix",
    "Sheaf",
    "CornerPolyhedron",
    "Facet",
    "corner_facets",
    "corner_membership",
    "minkowski_translate",
    "ControlMatrix",
    "Profile",
    "control_matrix",
    "enumerate_profiles",
    "pivotal_entries",
    "profile",
    "Mode",
    "StabilityVerdict",
    "Status",
    "Witness",
    "check_stability",
    "companion_form",
    "hilbert_mumford_oracle",
    "moduli_coordinates",
    "mumford_config",
    "stable_witness",
]

__version__ = "0.1.0"
