from .moments import (
    EdgeMoment,
    chain_expectation,
    exact_edge_moments,
    joint_edge_law,
    standardize,
    standardized_dense,
    standardized_values,
)
from .params import ModelParams, make_rng
from .samplers import (
    CorrelatedSample,
    NullSample,
    load_pair,
    pair_to_json,
    sample_correlated,
    sample_j_sets,
    sample_null,
    sample_sbm,
    save_pair,
)

__all__ = [
    "CorrelatedSample",
    "EdgeMoment",
    "ModelParams",
    "NullSample",
    "chain_expectation",
    "exact_edge_moments",
    "joint_edge_law",
    "load_pair",
    "make_rng",
    "pair_to_json",
    "sample_correlated",
    "sample_j_sets",
    "sample_null",
    "sample_sbm",
    "save_pair",
    "standardize",
    "standardized_dense",
    "standardized_values",
]
