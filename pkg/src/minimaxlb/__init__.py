"""Local asymptotically minimax lower bounds on parameter-estimation risk.

The package computes two families of lower bounds (pairwise-test bounds and
transform-based multi-hypothesis bounds) for a registry of observation
models, exposes the numerical machinery behind them, and ships a
verification suite plus a reproduction manifest of reference values.
"""

from .bounds import (
    BoundReport,
    TransformSet,
    concave_two_point_bound,
    local_two_point_bound,
    moment_two_point_bound,
    pairwise_allpairs_bound,
    pairwise_ring_bound,
    rotation_nuisance_bound,
    rotation_wedge_integral,
    three_point_bound,
    three_point_exact_uniform,
    transform_list_error_bound,
    transform_two_point_bound,
    two_point_bound,
)
from .loss import LossSpec, RatePower
from .models import (
    MODEL_IDS,
    Model,
    fisher_from_log_partition,
    get_model,
    monte_carlo_pe,
)
from .numerics import (
    Interval,
    OptResult,
    QuadratureError,
    gaussian_tail,
    integrate_adaptive,
    integrate_semi_infinite,
    maximize_1d,
    maximize_simplex,
)
from .verify import CheckReport, run_default_suite

__version__ = "1.0.0"

__all__ = [
    "BoundReport",
    "CheckReport",
    "Interval",
    "LossSpec",
    "MODEL_IDS",
    "Model",
    "OptResult",
    "QuadratureError",
    "RatePower",
    "TransformSet",
    "__version__",
    "concave_two_point_bound",
    "fisher_from_log_partition",
    "gaussian_tail",
    "get_model",
    "integrate_adaptive",
    "integrate_semi_infinite",
    "local_two_point_bound",
    "maximize_1d",
    "maximize_simplex",
    "moment_two_point_bound",
    "monte_carlo_pe",
    "pairwise_allpairs_bound",
    "pairwise_ring_bound",
    "rotation_nuisance_bound",
    "rotation_wedge_integral",
    "run_default_suite",
    "three_point_bound",
    "three_point_exact_uniform",
    "transform_list_error_bound",
    "transform_two_point_bound",
    "two_point_bound",
]
