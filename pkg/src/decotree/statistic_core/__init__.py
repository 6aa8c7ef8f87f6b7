from .embeddings import (
    DEFAULT_BUDGET,
    Embedding,
    check_embedding,
    embedding_sum,
    enumerate_embeddings,
    orbit_representative_maps,
    phi,
    shape_automorphisms,
)
from .expectation import even_subgraphs, expected_phi, expected_phi_tree_paths, positivity_check
from .statistic import ShapeTerm, StatisticReport, f_exact, f_exact_report, shape_weight

__all__ = [
    "DEFAULT_BUDGET",
    "Embedding",
    "ShapeTerm",
    "StatisticReport",
    "check_embedding",
    "embedding_sum",
    "enumerate_embeddings",
    "even_subgraphs",
    "expected_phi",
    "expected_phi_tree_paths",
    "f_exact",
    "f_exact_report",
    "orbit_representative_maps",
    "phi",
    "positivity_check",
    "shape_automorphisms",
    "shape_weight",
]
