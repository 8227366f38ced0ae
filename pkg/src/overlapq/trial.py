"""Decision rules for a comparative trial with normal outcomes of known sd.

The classical one-sided test of ``theta = theta0`` against ``theta > theta0``
is set beside a rule based on interchangeability: accept the new treatment
when the estimated overlap ``q`` falls below a threshold ``q0``. A parametric
bootstrap quantifies the uncertainty in ``q``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import rng
from .densities import normal_quantile, normal_sf
from .errors import InvalidParameterError
from .overlap import q_normal_closed_form


@dataclass(frozen=True)
class TrialConfig:
    n: int
    sigma: float
    alpha: float = 0.05
    q0: float = 0.5
    theta0: float = 0.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise InvalidParameterError(f"n must be a positive integer, got {self.n}")
        if not self.sigma > 0:
            raise InvalidParameterError(f"sigma must be positive, got {self.sigma}")
        if not 0 < self.alpha < 1:
            raise InvalidParameterError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not 0 < self.q0 <= 1:
            raise InvalidParameterError(f"q0 must lie in (0, 1], got {self.q0}")

    @property
    def standard_error(self) -> float:
        return self.sigma / math.sqrt(self.n)


@dataclass(frozen=True)
class TrialDecision:
    xbar: float
    critical_value: float
    p_value: float
    reject_h0: bool
    q_at_estimate: float
    theta_threshold_for_q0: float
    q_rule_accepts_new: bool
    threshold_test_p_value: float

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class BootstrapSummary:
    b: int
    q_tilde: np.ndarray
    quantiles: dict
    fraction_below_q0: float
    seed: int

    def as_dict(self, include_draws: bool = False) -> dict:
        out = {
            "b": self.b,
            "quantiles": dict(self.quantiles),
            "fraction_below_q0": self.fraction_below_q0,
            "seed": self.seed,
        }
        if include_draws:
            out["q_tilde"] = self.q_tilde.tolist()
        return out


def critical_value(cfg: TrialConfig) -> float:
    """Rejection threshold for the mean shift, ``(sigma / sqrt n) Phi^-1(1 - alpha)``."""
    return cfg.standard_error * normal_quantile(1.0 - cfg.alpha)


def p_value(xbar: float, cfg: TrialConfig) -> float:
    """One-sided p-value ``1 - Phi((xbar - theta0) sqrt(n) / sigma)``."""
    return float(normal_sf((xbar - cfg.theta0) / cfg.standard_error))


def theta_threshold(q0: float, sigma: float = 1.0) -> float:
    """Mean shift at which the normal overlap equals ``q0``: ``sigma sqrt2 Phi^-1(1 - q0/2)``."""
    if not 0 < q0 <= 1:
        raise InvalidParameterError(f"q0 must lie in (0, 1], got {q0}")
    if not sigma > 0:
        raise InvalidParameterError(f"sigma must be positive, got {sigma}")
    return sigma * math.sqrt(2.0) * normal_quantile(1.0 - q0 / 2.0)


def threshold_test_p_value(xbar: float, cfg: TrialConfig) -> float:
    """p-value for the shift exceeding ``theta_threshold(q0)``; reported, never decided on."""
    shift = theta_threshold(cfg.q0, cfg.sigma)
    return float(normal_sf((xbar - cfg.theta0 - shift) / cfg.standard_error))


def decide(xbar: float, cfg: TrialConfig) -> TrialDecision:
    """Apply the classical test and the overlap rule to an observed mean.

    The classical test rejects when ``xbar - theta0`` strictly exceeds the
    critical value. The overlap rule accepts the new treatment when the
    shift strictly exceeds ``theta_threshold(q0)``, i.e. when ``q < q0`` in
    the direction of improvement.
    """
    shift = xbar - cfg.theta0
    c = critical_value(cfg)
    threshold = theta_threshold(cfg.q0, cfg.sigma)
    return TrialDecision(
        xbar=float(xbar),
        critical_value=c,
        p_value=p_value(xbar, cfg),
        reject_h0=bool(shift > c),
        q_at_estimate=q_normal_closed_form(shift, cfg.sigma).value,
        theta_threshold_for_q0=threshold,
        q_rule_accepts_new=bool(shift > threshold),
        threshold_test_p_value=threshold_test_p_value(xbar, cfg),
    )


def parametric_bootstrap(theta_hat: float, cfg: TrialConfig, b: int = 1000, seed: int = 0) -> BootstrapSummary:
    """Resample ``n`` outcomes from N(theta_hat, sigma^2) ``b`` times.

    Each replication uses its own seed derived from ``seed`` and its index,
    takes the sample mean as the maximum-likelihood shift estimate and
    records the closed-form overlap with the null density.
    """
    if int(b) != b or b < 1:
        raise InvalidParameterError(f"b must be a positive integer, got {b}")
    b = int(b)
    q = np.empty(b)
    for r in range(b):
        outcomes = theta_hat + cfg.sigma * rng.standard_normals(rng.derive_seed(seed, r), cfg.n)
        theta_tilde = outcomes.mean()
        q[r] = q_normal_closed_form(theta_tilde - cfg.theta0, cfg.sigma).value
    qs = np.quantile(q, [0.05, 0.5, 0.95])
    return BootstrapSummary(
        b=b,
        q_tilde=q,
        quantiles={"5%": float(qs[0]), "50%": float(qs[1]), "95%": float(qs[2])},
        fraction_below_q0=float(np.mean(q < cfg.q0)),
        seed=int(seed),
    )
