"""Exact and Monte Carlo checks on the increments of unnormalized Riemann sums."""

from .covariance import (
    cross_covariances,
    ex_n_squared,
    ex_n_xnp1,
    ey4s_y2s,
    ey_n_squared,
    min_sum,
    var_ydiff,
)
from .functions import FunctionSpec, SpecError, eval_f, spec_from_dict, spec_from_json
from .sequences import decomposition_residual, h_n, sequence_report, x_n, y_n

__version__ = "0.1.0"
