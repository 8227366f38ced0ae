"""Univariate density models used by every overlap estimator.

Two families are provided: the normal distribution and a Gaussian-kernel
density fitted to samples. Both expose ``pdf``, ``logpdf``, ``cdf``, an
integration window ``support`` and a seeded sampler via :func:`draw`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from . import rng
from ._backend import kernels
from .errors import FitError, InvalidParameterError

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

NORMAL_WINDOW_SDS = 8.0
KDE_WINDOW_BANDWIDTHS = 4.0


def normal_cdf(x):
    """Standard normal distribution function Phi."""
    return special.ndtr(x)


def normal_sf(x):
    """Upper tail ``1 - Phi(x)`` without cancellation."""
    return special.ndtr(np.negative(x))


def normal_quantile(p):
    """Inverse of the standard normal distribution function.

    Parameters
    ----------
    p : float or array_like
        Probabilities in the open interval (0, 1).

    Raises
    ------
    InvalidParameterError
        If any ``p`` lies outside (0, 1).
    """
    arr = np.asarray(p, dtype=float)
    if not np.all((arr > 0.0) & (arr < 1.0)):
        raise InvalidParameterError(f"probability must lie in (0, 1), got {p!r}")
    out = special.ndtri(arr)
    return float(out) if out.ndim == 0 else out


class DensityModel:
    """Common interface of the univariate density models."""

    kind: str

    def logpdf(self, x):
        raise NotImplementedError

    def pdf(self, x):
        return np.exp(self.logpdf(x))

    def cdf(self, x):
        raise NotImplementedError

    @property
    def support(self) -> tuple[float, float]:
        return self.support_lo, self.support_hi

    def _sample(self, n: int, seed: int) -> np.ndarray:
        raise NotImplementedError


@dataclass(frozen=True)
class NormalDensity(DensityModel):
    mean: float
    sd: float
    kind: str = field(default="normal", init=False)

    def __post_init__(self):
        if not (math.isfinite(self.mean) and math.isfinite(self.sd)):
            raise InvalidParameterError("mean and sd must be finite")
        if self.sd <= 0:
            raise InvalidParameterError(f"sd must be positive, got {self.sd}")

    @property
    def support_lo(self) -> float:
        return self.mean - NORMAL_WINDOW_SDS * self.sd

    @property
    def support_hi(self) -> float:
        return self.mean + NORMAL_WINDOW_SDS * self.sd

    def logpdf(self, x):
        z = (np.asarray(x, dtype=float) - self.mean) / self.sd
        return -0.5 * z * z - math.log(self.sd) - _LOG_SQRT_2PI

    def cdf(self, x):
        return special.ndtr((np.asarray(x, dtype=float) - self.mean) / self.sd)

    def sf(self, x):
        return special.ndtr((self.mean - np.asarray(x, dtype=float)) / self.sd)

    def quantile(self, p):
        return self.mean + self.sd * normal_quantile(p)

    def _sample(self, n, seed):
        return self.mean + self.sd * rng.standard_normals(seed, n)


@dataclass(frozen=True, eq=False)
class KernelDensity(DensityModel):
    """Gaussian-kernel mixture with one kernel of width ``bandwidth`` per sample."""

    samples: np.ndarray
    bandwidth: float
    kind: str = field(default="kde", init=False)

    def __post_init__(self):
        if self.bandwidth <= 0 or not math.isfinite(self.bandwidth):
            raise InvalidParameterError(f"bandwidth must be positive, got {self.bandwidth}")

    @property
    def support_lo(self) -> float:
        return float(self.samples[0]) - KDE_WINDOW_BANDWIDTHS * self.bandwidth

    @property
    def support_hi(self) -> float:
        return float(self.samples[-1]) + KDE_WINDOW_BANDWIDTHS * self.bandwidth

    def logpdf(self, x):
        arr = np.asarray(x, dtype=float)
        out = kernels.kde_logpdf(arr.ravel(), self.samples, self.bandwidth)
        return out.reshape(arr.shape) if arr.ndim else float(out[0])

    def cdf(self, x):
        arr = np.asarray(x, dtype=float)
        flat = arr.ravel()
        out = np.empty(flat.shape)
        chunk = max(1, (1 << 21) // self.samples.size)
        for k in range(0, flat.size, chunk):
            z = (flat[k:k + chunk, None] - self.samples[None, :]) / self.bandwidth
            out[k:k + chunk] = special.ndtr(z).mean(axis=1)
        return out.reshape(arr.shape) if arr.ndim else float(out[0])

    def _sample(self, n, seed):
        m = self.samples.size
        u = rng.uniforms(rng.derive_seed(seed, 0), n)
        idx = np.minimum((u * m).astype(np.int64), m - 1)
        noise = rng.standard_normals(rng.derive_seed(seed, 1), n)
        return self.samples[idx] + self.bandwidth * noise


def normal_density(mean: float, sd: float) -> NormalDensity:
    return NormalDensity(float(mean), float(sd))


def silverman_bandwidth(samples) -> float:
    """Rule-of-thumb bandwidth ``1.06 * s * n**(-1/5)``, ``s`` the sample sd."""
    x = np.asarray(samples, dtype=float)
    return 1.06 * float(np.std(x, ddof=1)) * x.size ** -0.2


def kde_fit(samples, bandwidth: float | None = None) -> KernelDensity:
    """Fit a Gaussian-kernel density.

    Parameters
    ----------
    samples : array_like
        At least two finite observations.
    bandwidth : float, optional
        Kernel standard deviation. Defaults to :func:`silverman_bandwidth`.

    Raises
    ------
    FitError
        Fewer than two samples, non-finite samples, or zero spread with no
        explicit bandwidth.
    """
    x = np.sort(np.asarray(samples, dtype=float).ravel())
    if x.size < 2:
        raise FitError(f"kernel density needs at least 2 samples, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise FitError("samples must be finite")
    if bandwidth is None:
        bandwidth = silverman_bandwidth(x)
        if bandwidth <= 0:
            raise FitError("samples have zero variance; pass an explicit bandwidth")
    x.setflags(write=False)
    return KernelDensity(x, float(bandwidth))


def draw(model: DensityModel, n: int, seed: int) -> np.ndarray:
    """Draw ``n`` i.i.d. variates; identical ``(model, n, seed)`` give identical bytes."""
    if int(n) != n or n < 1:
        raise InvalidParameterError(f"n must be a positive integer, got {n}")
    return model._sample(int(n), int(seed))
