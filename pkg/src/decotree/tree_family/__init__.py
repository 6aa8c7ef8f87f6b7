from .config import FamilyConfig
from .enumeration import count_free_trees, count_rooted_trees, enumerate_free_trees, free_tree_level_sequences
from .family import DecoratedTreeShape, Family, build_family
from .pairings import Pairing, family_violations, pairing_violations, select_pairings
from .structure import (
    AdmissibilityReport,
    admissible_roots,
    arm_paths,
    attach_arms,
    check_admissible,
    leaves,
    major_subtree,
    similar,
)

__all__ = [
    "AdmissibilityReport",
    "DecoratedTreeShape",
    "Family",
    "FamilyConfig",
    "Pairing",
    "admissible_roots",
    "arm_paths",
    "attach_arms",
    "build_family",
    "check_admissible",
    "count_free_trees",
    "count_rooted_trees",
    "enumerate_free_trees",
    "family_violations",
    "free_tree_level_sequences",
    "leaves",
    "major_subtree",
    "pairing_violations",
    "select_pairings",
    "similar",
]
