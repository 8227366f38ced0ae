"""Distances and inequalities relating O_M to classical measures.

The distance ``d = 1 - O_M`` is compared against the squared Hellinger
distance and the overlap coefficient, and ``O_M`` is recomputed through its
Youden-index decomposition

    O_M(f, g) = integral F(A(y)) g(y) dy + integral Gbar(A(y)) f(y) dy,
    A(y) = {x : f(x)/g(x) <= f(y)/g(y)},

which serves as an independent check on the double-integral quadrature.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import optimize

from .densities import DensityModel, NormalDensity
from .overlap import (
    DEFAULT_GRID_1D,
    DEFAULT_GRID_2D,
    OverlapEstimate,
    _check_grid,
    checked_probability,
    om_quadrature,
    ovl_quadrature,
    supports_disjoint,
    trapezoid_grid,
)

SLACK_TOL = 1e-8


@dataclass(frozen=True)
class BoundCheck:
    """``lhs <= rhs`` evaluated numerically; ``slack = rhs - lhs``.

    ``asserted`` is False for inequalities that are reported but known not to
    hold in general.
    """

    name: str
    lhs: float
    rhs: float
    satisfied: bool
    slack: float
    asserted: bool = True


def _check(name, lhs, rhs, asserted=True):
    slack = float(rhs - lhs)
    return BoundCheck(name, float(lhs), float(rhs), slack >= -SLACK_TOL, slack, asserted)


@dataclass(frozen=True)
class BoundsReport:
    hellinger_sq: float
    d_om: float
    ovl: float
    om: float
    bhattacharyya: float
    checks: list[BoundCheck] = field(default_factory=list)

    def violations(self, asserted_only: bool = True) -> list[BoundCheck]:
        return [c for c in self.checks if not c.satisfied and (c.asserted or not asserted_only)]

    def as_dict(self) -> dict:
        return asdict(self)


def bhattacharyya(p0: DensityModel, p1: DensityModel, n_grid: int = DEFAULT_GRID_1D) -> float:
    """Bhattacharyya coefficient ``integral sqrt(p0 p1)``."""
    n_grid = _check_grid(n_grid)
    x, w = trapezoid_grid(p0, p1, n_grid)
    return float(w @ np.exp(0.5 * (p0.logpdf(x) + p1.logpdf(x))))


def hellinger_sq(p0: DensityModel, p1: DensityModel, n_grid: int = DEFAULT_GRID_1D) -> float:
    n_grid = _check_grid(n_grid)
    x, w = trapezoid_grid(p0, p1, n_grid)
    diff = np.sqrt(p0.pdf(x)) - np.sqrt(p1.pdf(x))
    return float(min(max(w @ (diff * diff), 0.0), 2.0))


def hellinger(p0: DensityModel, p1: DensityModel, n_grid: int = DEFAULT_GRID_1D) -> float:
    """Hellinger distance ``(integral (sqrt p0 - sqrt p1)^2)^(1/2)``, in [0, sqrt 2]."""
    return math.sqrt(hellinger_sq(p0, p1, n_grid))


def om_distance(p0: DensityModel, p1: DensityModel, n_grid: int = DEFAULT_GRID_2D) -> float:
    """``d = 1 - O_M``."""
    return 1.0 - om_quadrature(p0, p1, n_grid).value


def check_hellinger_sandwich(
    p0: DensityModel,
    p1: DensityModel,
    n_grid: int = DEFAULT_GRID_1D,
    n_grid_2d: int = DEFAULT_GRID_2D,
    *,
    om: float | None = None,
) -> list[BoundCheck]:
    """Evaluate ``dH2 (1 - dH2/4) <= d`` and ``d <= 4 dH2`` with ``d = 1 - O_M``.

    Only the lower bound is asserted. The upper bound fails for nearby
    densities (``d`` is first order in a location shift while ``dH2`` is
    second order), so it is evaluated and reported with ``asserted=False``.
    """
    h2 = hellinger_sq(p0, p1, n_grid)
    d = 1.0 - (om_quadrature(p0, p1, n_grid_2d).value if om is None else om)
    return [
        _check("hellinger_lower", h2 * (1.0 - h2 / 4.0), d),
        _check("hellinger_upper", d, 4.0 * h2, asserted=False),
    ]


def check_ovl_bound(
    p0: DensityModel,
    p1: DensityModel,
    n_grid: int = DEFAULT_GRID_1D,
    n_grid_2d: int = DEFAULT_GRID_2D,
    *,
    om: float | None = None,
) -> list[BoundCheck]:
    """Evaluate ``O_M <= (integral sqrt(p0 p1))^2`` and ``O_M <= (1 - (1 - OVL)^2)^2``."""
    if om is None:
        om = om_quadrature(p0, p1, n_grid_2d).value
    bc = bhattacharyya(p0, p1, n_grid)
    ovl = ovl_quadrature(p0, p1, n_grid).value
    return [
        _check("bhattacharyya_bound", om, bc * bc),
        _check("ovl_bound", om, (1.0 - (1.0 - ovl) ** 2) ** 2),
    ]


def bounds_report(
    p0: DensityModel, p1: DensityModel, n_grid: int = DEFAULT_GRID_1D, n_grid_2d: int = DEFAULT_GRID_2D
) -> BoundsReport:
    om = om_quadrature(p0, p1, n_grid_2d).value
    checks = check_hellinger_sandwich(p0, p1, n_grid, om=om) + check_ovl_bound(p0, p1, n_grid, om=om)
    return BoundsReport(
        hellinger_sq=hellinger_sq(p0, p1, n_grid),
        d_om=1.0 - om,
        ovl=ovl_quadrature(p0, p1, n_grid).value,
        om=om,
        bhattacharyya=bhattacharyya(p0, p1, n_grid),
        checks=checks,
    )


def youden_index(p0: DensityModel, p1: DensityModel, cutoff: float) -> float:
    """``J(c) = F(c) + 1 - G(c)`` for the half-line ``(-inf, c)``."""
    return float(p0.cdf(cutoff) + 1.0 - p1.cdf(cutoff))


def youden_optimal_cutoff(p0: DensityModel, p1: DensityModel, n_grid: int = DEFAULT_GRID_1D):
    """Cutoff maximising ``J(c)``: grid search refined by bounded Brent.

    Returns
    -------
    (cutoff, J(cutoff))
    """
    x, _ = trapezoid_grid(p0, p1, _check_grid(n_grid))
    j = p0.cdf(x) - p1.cdf(x)
    k = int(np.argmax(j))
    lo, hi = x[max(k - 1, 0)], x[min(k + 1, x.size - 1)]
    res = optimize.minimize_scalar(
        lambda c: -youden_index(p0, p1, c), bounds=(lo, hi), method="bounded", options={"xatol": 1e-10}
    )
    return float(res.x), youden_index(p0, p1, res.x)


def ovl_youden_form(p0: DensityModel, p1: DensityModel, n_grid: int = DEFAULT_GRID_1D) -> float:
    """``F(A) + Gbar(A)`` on the grid with ``A = {f/g <= 1}``; equals OVL."""
    x, w = trapezoid_grid(p0, p1, _check_grid(n_grid))
    in_a = p0.logpdf(x) <= p1.logpdf(x)
    return float(w @ np.where(in_a, p0.pdf(x), 0.0) + w @ np.where(in_a, 0.0, p1.pdf(x)))


def _equal_variance_normals(f, g):
    return isinstance(f, NormalDensity) and isinstance(g, NormalDensity) and f.sd == g.sd


def om_youden_decomposition(
    p0: DensityModel, p1: DensityModel, n_grid: int = DEFAULT_GRID_1D, *, force_mask: bool = False
) -> OverlapEstimate:
    """``O_M`` through the likelihood-ratio sets ``A(y)``.

    For equal-variance normals ``A(y)`` is a half-line and its probabilities
    come straight from the normal cdf. Otherwise (or with ``force_mask``)
    ``A(y)`` is the grid mask ``{x_i : r(x_i) <= r(y)}`` with
    ``r = log f - log g``; ties are members, and ``r = +inf`` where ``g``
    vanishes. Masks are evaluated for every ``y`` at once by sorting ``r``
    and taking cumulative sums.
    """
    n_grid = _check_grid(n_grid)
    if supports_disjoint(p0, p1):
        return OverlapEstimate("OM", "youden", 0.0, n_points=n_grid, degenerate_support=True)
    y, w = trapezoid_grid(p0, p1, n_grid)
    f, g = p0.pdf(y), p1.pdf(y)

    if _equal_variance_normals(p0, p1) and not force_mask:
        if p0.mean < p1.mean:
            # ratio decreasing: A(y) = [y, inf)
            f_a, gbar_a = p0.sf(y), p1.cdf(y)
        elif p0.mean > p1.mean:
            f_a, gbar_a = p0.cdf(y), p1.sf(y)
        else:
            f_a, gbar_a = np.ones_like(y), np.zeros_like(y)
    else:
        lf, lg = p0.logpdf(y), p1.logpdf(y)
        with np.errstate(invalid="ignore"):
            r = lf - lg
        r[np.isneginf(lg)] = np.inf
        r[np.isneginf(lf) & np.isneginf(lg)] = 0.0
        order = np.argsort(r, kind="stable")
        r_sorted = r[order]
        cum_f = np.cumsum((f * w)[order])
        cum_g = np.cumsum((g * w)[order])
        last = np.searchsorted(r_sorted, r, side="right") - 1
        f_a = cum_f[last]
        gbar_a = cum_g[-1] - cum_g[last]

    value = w @ (f_a * g) + w @ (gbar_a * f)
    return OverlapEstimate("OM", "youden", checked_probability(value, "O_M"), n_points=n_grid)
