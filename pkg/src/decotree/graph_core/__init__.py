from .graphs import MAX_MULTIPLICITY, Multigraph, SimpleGraph, VertexColoring, colorful, norm_edge, tau
from .hosts import DenseHost, Host, TwoLevelHost
from .paths import (
    nb_path_enumerate,
    nb_path_matrix,
    nb_path_sum,
    nb_path_sums_from,
    path_weight,
    saw_path_enumerate,
)
from .trees import CanonicalTree, automorphism_count, canonical_code, centers, tree_automorphisms, tree_from_code

__all__ = [
    "MAX_MULTIPLICITY",
    "CanonicalTree",
    "DenseHost",
    "Host",
    "Multigraph",
    "SimpleGraph",
    "TwoLevelHost",
    "VertexColoring",
    "automorphism_count",
    "canonical_code",
    "centers",
    "colorful",
    "nb_path_enumerate",
    "nb_path_matrix",
    "nb_path_sum",
    "nb_path_sums_from",
    "norm_edge",
    "path_weight",
    "saw_path_enumerate",
    "tau",
    "tree_automorphisms",
    "tree_from_code",
]
