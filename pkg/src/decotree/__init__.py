"""Decorated-tree statistics for detecting correlation between two stochastic block models."""

from . import color_coding, experiment, graph_core, sbm_model, statistic_core, tree_family
from .errors import (
    BudgetError,
    BudgetExceeded,
    ConfigError,
    ConfigurationUnsupported,
    DecotreeError,
    DegenerateCalibration,
    EmptyFamily,
    InfeasibleConfig,
    ShapeUnsupported,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "BudgetExceeded",
    "ConfigError",
    "ConfigurationUnsupported",
    "DecotreeError",
    "DegenerateCalibration",
    "EmptyFamily",
    "InfeasibleConfig",
    "ShapeUnsupported",
    "color_coding",
    "experiment",
    "graph_core",
    "sbm_model",
    "statistic_core",
    "tree_family",
]
