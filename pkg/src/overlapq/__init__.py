"""Overlap of two densities measured as the probability of interchangeable responses."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .bounds import (
    BoundCheck,
    BoundsReport,
    bhattacharyya,
    bounds_report,
    check_hellinger_sandwich,
    check_ovl_bound,
    hellinger,
    om_youden_decomposition,
    youden_index,
    youden_optimal_cutoff,
)
from .crossmatch import (
    CrossSamples,
    MatchingResult,
    build_cross_samples,
    crossmatch_ob_estimate,
    distance_matrix,
    min_weight_matching,
)
from .densities import DensityModel, draw, kde_fit, normal_cdf, normal_density, normal_quantile
from .errors import (
    DegenerateSupportError,
    FitError,
    InsufficientDataError,
    InvalidParameterError,
    NumericalIntegrityError,
    OverlapError,
)
from .overlap import (
    OverlapEstimate,
    mh_acceptance,
    ob_monte_carlo,
    ob_quadrature,
    oc_quadrature,
    om_monte_carlo,
    om_quadrature,
    ovl_quadrature,
    q_normal_closed_form,
)
from .sets import jaccard, om_sets, overlap_coefficient
from .trial import TrialConfig, TrialDecision, critical_value, decide, p_value, parametric_bootstrap, theta_threshold
