"""Overlap measures between two densities.

``O_M`` is the probability that a draw from ``p1`` replaces a draw from
``p0`` under the Metropolis-Hastings acceptance rule,

    O_M = integral integral min{p0(x) p1(y), p0(y) p1(x)} dx dy,

``OVL`` is the classical overlap coefficient, ``O_B`` the analogue of
``O_M`` under Barker acceptance, and ``O_C`` the large-sample limit of the
crossmatch statistic. Each is available by deterministic trapezoid
quadrature; ``O_M`` and ``O_B`` also by seeded Monte Carlo, and ``O_M`` for
equal-variance normals in closed form.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import special

from . import rng
from .densities import DensityModel, draw
from .errors import DegenerateSupportError, InvalidParameterError, NumericalIntegrityError

DEFAULT_GRID_1D = 2001
DEFAULT_GRID_2D = 801
DEFAULT_DRAWS = 100_000
MIN_GRID = 101
MIN_DRAWS = 100
CLAMP_TOL = 1e-12

MEASURES = ("OM", "OVL", "OB", "OC")
METHODS = ("closed_form", "quadrature", "monte_carlo", "youden", "matching")


@dataclass(frozen=True)
class OverlapEstimate:
    """One estimate of one overlap measure.

    ``n_points`` is the number of grid points per axis for quadrature, the
    number of draws for Monte Carlo and the sample size for matching.
    ``std_error`` is zero for every method except Monte Carlo, where it can
    still be exactly zero when the integrand is constant.
    """

    measure: str
    method: str
    value: float
    std_error: float = 0.0
    n_points: int = 0
    seed: int | None = None
    degenerate_support: bool = False
    skipped_points: int = 0

    def as_dict(self) -> dict:
        return asdict(self)


def checked_probability(value: float, what: str = "overlap") -> float:
    """Clamp round-off excursions below ``CLAMP_TOL``; raise on anything larger."""
    value = float(value)
    if 0.0 <= value <= 1.0:
        return value
    if -CLAMP_TOL <= value < 0.0:
        return 0.0
    if 1.0 < value <= 1.0 + CLAMP_TOL:
        return 1.0
    raise NumericalIntegrityError(f"{what} = {value!r} lies outside [0, 1]")


def _check_grid(n_grid: int) -> int:
    if int(n_grid) != n_grid or n_grid < MIN_GRID or n_grid % 2 == 0:
        raise InvalidParameterError(f"n_grid must be an odd integer >= {MIN_GRID}, got {n_grid}")
    return int(n_grid)


def _check_draws(n_draws: int) -> int:
    if int(n_draws) != n_draws or n_draws < MIN_DRAWS:
        raise InvalidParameterError(f"n_draws must be an integer >= {MIN_DRAWS}, got {n_draws}")
    return int(n_draws)


def supports_disjoint(p0: DensityModel, p1: DensityModel) -> bool:
    return p0.support_hi <= p1.support_lo or p1.support_hi <= p0.support_lo


def trapezoid_grid(p0: DensityModel, p1: DensityModel, n_grid: int):
    """Nodes and trapezoid weights on the union of both integration windows."""
    lo = min(p0.support_lo, p1.support_lo)
    hi = max(p0.support_hi, p1.support_hi)
    x = np.linspace(lo, hi, n_grid)
    w = np.full(n_grid, (hi - lo) / (n_grid - 1))
    w[0] *= 0.5
    w[-1] *= 0.5
    return x, w


def q_normal_closed_form(theta: float, sigma: float = 1.0) -> OverlapEstimate:
    """``O_M`` between N(0, sigma^2) and N(theta, sigma^2).

    Equals ``2 * (1 - Phi(|theta| / (sigma * sqrt(2))))``.
    """
    if not sigma > 0:
        raise InvalidParameterError(f"sigma must be positive, got {sigma}")
    value = 2.0 * special.ndtr(-abs(theta) / (sigma * math.sqrt(2.0)))
    return OverlapEstimate("OM", "closed_form", checked_probability(value))


def _log_ratio(l0x, l1x, l0y, l1y):
    # log of p0(y) p1(x) / (p1(y) p0(x)); exactly 0 when p0 and p1 coincide
    return (l0y + l1x) - (l1y + l0x)


def _acceptance_logs(x, y, p0, p1):
    l0x, l1x = p0.logpdf(x), p1.logpdf(x)
    l0y, l1y = p0.logpdf(y), p1.logpdf(y)
    if not (np.all(np.isfinite(l1y)) and np.all(np.isfinite(l0x))):
        raise DegenerateSupportError("p1(y) * p0(x) is zero")
    return _log_ratio(l0x, l1x, l0y, l1y)


def mh_acceptance(x, y, p0: DensityModel, p1: DensityModel):
    """Metropolis-Hastings acceptance ``min{1, p0(y) p1(x) / (p1(y) p0(x))}``.

    Accepts scalars or broadcastable arrays.
    """
    t = _acceptance_logs(x, y, p0, p1)
    out = np.exp(np.minimum(t, 0.0))
    return float(out) if np.ndim(out) == 0 else out


def barker_acceptance(x, y, p0: DensityModel, p1: DensityModel):
    """Barker acceptance ``p0(y) p1(x) / (p0(y) p1(x) + p0(x) p1(y))``."""
    out = special.expit(_acceptance_logs(x, y, p0, p1))
    return float(out) if np.ndim(out) == 0 else out


def _lattice(p0, p1, n_grid):
    x, w = trapezoid_grid(p0, p1, n_grid)
    prod = np.outer(p0.pdf(x), p1.pdf(x))  # prod[i, j] = p0(x_i) p1(x_j)
    return prod, w


def _degenerate(measure, n_grid):
    return OverlapEstimate(measure, "quadrature", 0.0, n_points=n_grid, degenerate_support=True)


def om_quadrature(p0: DensityModel, p1: DensityModel, n_grid: int = DEFAULT_GRID_2D) -> OverlapEstimate:
    """``O_M`` by the trapezoid rule on an ``n_grid`` x ``n_grid`` lattice.

    The integrand ``min(P, P.T)`` is the same array whichever density comes
    first, so the result is exactly symmetric in ``(p0, p1)``.
    """
    n_grid = _check_grid(n_grid)
    if supports_disjoint(p0, p1):
        return _degenerate("OM", n_grid)
    prod, w = _lattice(p0, p1, n_grid)
    value = w @ np.minimum(prod, prod.T) @ w
    return OverlapEstimate("OM", "quadrature", checked_probability(value, "O_M"), n_points=n_grid)


def om_abs_form_quadrature(p0: DensityModel, p1: DensityModel, n_grid: int = DEFAULT_GRID_2D) -> float:
    """``1 - 0.5 * integral |p0(x) p1(y) - p0(y) p1(x)|`` on the same lattice."""
    n_grid = _check_grid(n_grid)
    prod, w = _lattice(p0, p1, n_grid)
    return float(1.0 - 0.5 * (w @ np.abs(prod - prod.T) @ w))


def _harmonic(a, b):
    """``2ab / (a + b)`` with zero-sum points set to 0; returns (values, n_skipped)."""
    s = a + b
    zero = s == 0.0
    with np.errstate(invalid="ignore", divide="ignore"):
        h = np.where(zero, 0.0, 2.0 * a * b / s)
    return h, int(zero.sum())


def ob_quadrature(p0: DensityModel, p1: DensityModel, n_grid: int = DEFAULT_GRID_2D) -> OverlapEstimate:
    """Barker overlap ``O_B`` on the 2-D lattice.

    Lattice points where both products underflow to zero are skipped and
    counted in ``skipped_points``.
    """
    n_grid = _check_grid(n_grid)
    if supports_disjoint(p0, p1):
        return _degenerate("OB", n_grid)
    prod, w = _lattice(p0, p1, n_grid)
    integrand, skipped = _harmonic(prod, prod.T)
    value = w @ integrand @ w
    return OverlapEstimate(
        "OB", "quadrature", checked_probability(value, "O_B"), n_points=n_grid, skipped_points=skipped
    )


def ovl_quadrature(p0: DensityModel, p1: DensityModel, n_grid: int = DEFAULT_GRID_1D) -> OverlapEstimate:
    """Overlap coefficient ``integral min{p0, p1}``."""
    n_grid = _check_grid(n_grid)
    if supports_disjoint(p0, p1):
        return _degenerate("OVL", n_grid)
    x, w = trapezoid_grid(p0, p1, n_grid)
    value = w @ np.minimum(p0.pdf(x), p1.pdf(x))
    return OverlapEstimate("OVL", "quadrature", checked_probability(value, "OVL"), n_points=n_grid)


def oc_quadrature(p0: DensityModel, p1: DensityModel, n_grid: int = DEFAULT_GRID_1D) -> OverlapEstimate:
    """Crossmatch limit ``O_C = 2 integral p0 p1 / (p0 + p1)``."""
    n_grid = _check_grid(n_grid)
    if supports_disjoint(p0, p1):
        return _degenerate("OC", n_grid)
    x, w = trapezoid_grid(p0, p1, n_grid)
    integrand, skipped = _harmonic(p0.pdf(x), p1.pdf(x))
    value = w @ integrand
    return OverlapEstimate(
        "OC", "quadrature", checked_probability(value, "O_C"), n_points=n_grid, skipped_points=skipped
    )


def _draw_log_ratio(p0, p1, n_draws, seed):
    x = draw(p0, n_draws, rng.derive_seed(seed, 0))
    y = draw(p1, n_draws, rng.derive_seed(seed, 1))
    return _log_ratio(p0.logpdf(x), p1.logpdf(x), p0.logpdf(y), p1.logpdf(y))


def _mc_estimate(measure, terms, n_draws, seed):
    mean = float(terms.mean())
    se = float(terms.std(ddof=1) / math.sqrt(n_draws))
    return OverlapEstimate(measure, "monte_carlo", checked_probability(mean, measure), se, n_draws, seed)


def overlap_monte_carlo(p0: DensityModel, p1: DensityModel, n_draws: int = DEFAULT_DRAWS, seed: int = 0):
    """``(O_M, O_B)`` Monte Carlo estimates sharing one set of draws.

    With ``X ~ p0`` and ``Y ~ p1`` independent, ``O_M = E[alpha(X, Y)]`` for
    the Metropolis-Hastings acceptance and ``O_B = 2 E[beta(X, Y)]`` for the
    Barker acceptance.
    """
    n_draws = _check_draws(n_draws)
    t = _draw_log_ratio(p0, p1, n_draws, seed)
    om = _mc_estimate("OM", np.exp(np.minimum(t, 0.0)), n_draws, seed)
    ob = _mc_estimate("OB", 2.0 * special.expit(t), n_draws, seed)
    return om, ob


def om_monte_carlo(p0: DensityModel, p1: DensityModel, n_draws: int = DEFAULT_DRAWS, seed: int = 0) -> OverlapEstimate:
    return overlap_monte_carlo(p0, p1, n_draws, seed)[0]


def ob_monte_carlo(p0: DensityModel, p1: DensityModel, n_draws: int = DEFAULT_DRAWS, seed: int = 0) -> OverlapEstimate:
    return overlap_monte_carlo(p0, p1, n_draws, seed)[1]
