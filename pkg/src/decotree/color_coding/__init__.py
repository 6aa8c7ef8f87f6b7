from .dp import as_host, colorful_probability, precompute_nb_sums, x_h_bruteforce, x_h_dp, x_h_dp_batch
from .estimator import EstimatorConfig, coloring_values, default_t, draw_colorings, f_bar

__all__ = [
    "EstimatorConfig",
    "as_host",
    "coloring_values",
    "colorful_probability",
    "default_t",
    "draw_colorings",
    "f_bar",
    "precompute_nb_sums",
    "x_h_bruteforce",
    "x_h_dp",
    "x_h_dp_batch",
]
