"""Matching-based estimate of the Barker overlap ``O_B`` from two samples.

From ``X_1..X_n ~ p0`` and ``Y_1..Y_n ~ p1`` build the planar point sets

    A_i = (X_i, Y_i)                 i = 1 .. n/2
    B_j = (Y_{n/2+j}, X_{n/2+j})     j = 1 .. n/2,

match all ``n`` points in pairs so that the summed Euclidean length is
minimal, count the pairs joining an ``A`` point to a ``B`` point, and report
``min{1, 4 n_c / n}``.

Matchings of up to ``EXACT_MAX_N`` points are solved exactly by dynamic
programming over subsets. Larger instances use a greedy matching improved by
2-opt pair exchanges, which is deterministic but only locally optimal.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from ._backend import kernels
from .errors import InsufficientDataError, InvalidParameterError, OverlapError
from .overlap import OverlapEstimate

EXACT_MAX_N = 14
_EXACT_HARD_LIMIT = 26


@dataclass(frozen=True)
class CrossSamples:
    a_points: np.ndarray
    b_points: np.ndarray
    truncated: bool = False

    @property
    def n(self) -> int:
        return 2 * len(self.a_points)

    def points(self) -> np.ndarray:
        """All ``n`` points, ``A`` first then ``B``."""
        return np.vstack([self.a_points, self.b_points])


@dataclass(frozen=True)
class MatchingResult:
    """A perfect matching of ``n`` points stored as a fixed-point-free involution.

    ``permutation[i]`` is the 0-based partner of point ``i``. ``n_cross``
    counts pairs joining the first half to the second half, once per pair.
    """

    permutation: np.ndarray
    total_distance: float
    n_cross: int
    raw_statistic: float
    statistic: float
    exact: bool

    @property
    def n(self) -> int:
        return len(self.permutation)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(i, int(j)) for i, j in enumerate(self.permutation) if i < j]

    def as_dict(self) -> dict:
        return {
            "pairs": self.pairs,
            "total_distance": self.total_distance,
            "n_cross": self.n_cross,
            "raw_statistic": self.raw_statistic,
            "statistic": self.statistic,
            "exact": self.exact,
        }


def build_cross_samples(x_samples, y_samples) -> CrossSamples:
    """Pair the first halves as ``A`` and the swapped second halves as ``B``.

    An odd sample size drops the last element of each sample and sets
    ``truncated`` (a warning is also issued).
    """
    x = np.asarray(x_samples, dtype=float).ravel()
    y = np.asarray(y_samples, dtype=float).ravel()
    if x.size != y.size:
        raise InvalidParameterError(f"samples must have equal length, got {x.size} and {y.size}")
    truncated = bool(x.size % 2)
    if truncated:
        x, y = x[:-1], y[:-1]
        warnings.warn(f"odd sample size; dropped the last observation of each sample (n={x.size})")
    if x.size < 4:
        raise InsufficientDataError(f"crossmatch needs at least 4 paired observations, got {x.size}")
    h = x.size // 2
    a = np.column_stack([x[:h], y[:h]])
    b = np.column_stack([y[h:], x[h:]])
    return CrossSamples(a, b, truncated)


def distance_matrix(cs: CrossSamples, literal: bool = False) -> np.ndarray:
    """Symmetric ``n x n`` matrix of Euclidean distances between the points.

    With ``literal=True`` every entry of the A-B block in column ``n/2 + j``
    is ``|A_j - B_j|`` regardless of the row, reproducing the matrix exactly
    as it is sometimes written; the default uses ``|A_i - B_j|``.
    """
    m = cdist(cs.points(), cs.points())
    if literal:
        h = cs.n // 2
        paired = np.sqrt(((cs.a_points - cs.b_points) ** 2).sum(axis=1))
        m[:h, h:] = paired[None, :]
        m[h:, :h] = paired[:, None]
    np.fill_diagonal(m, 0.0)
    return m


def _validate_matrix(m) -> np.ndarray:
    m = np.ascontiguousarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidParameterError("distance matrix must be square")
    n = m.shape[0]
    if n % 2:
        raise InvalidParameterError(f"perfect matching needs an even number of points, got {n}")
    if n < 4:
        raise InsufficientDataError(f"need at least 4 points, got {n}")
    return m


def _check_involution(partner: np.ndarray) -> None:
    idx = np.arange(partner.size)
    if np.any(partner == idx) or np.any(partner[partner] != idx):
        raise OverlapError("matching is not a fixed-point-free involution")


def _result(m, partner, exact) -> MatchingResult:
    _check_involution(partner)
    n = partner.size
    h = n // 2
    first = np.arange(h)
    total = float(sum(m[i, partner[i]] for i in range(n) if i < partner[i]))
    n_cross = int(np.count_nonzero(partner[first] >= h))
    raw = 4.0 * n_cross / n
    return MatchingResult(partner, total, n_cross, raw, min(1.0, raw), exact)


def matching_exact(m) -> MatchingResult:
    """Optimal matching by subset dynamic programming (``O(2^n n)``)."""
    m = _validate_matrix(m)
    if m.shape[0] > _EXACT_HARD_LIMIT:
        raise InvalidParameterError(f"exact matching limited to {_EXACT_HARD_LIMIT} points")
    partner, _ = kernels.exact_matching(m)
    return _result(m, np.asarray(partner, dtype=np.int64), True)


def matching_heuristic(m) -> MatchingResult:
    """Greedy matching by increasing distance (ties: smallest index pair), then 2-opt."""
    m = _validate_matrix(m)
    iu, ju = np.triu_indices(m.shape[0], 1)
    order = np.lexsort((ju, iu, m[iu, ju]))
    edge_i = np.ascontiguousarray(iu[order], dtype=np.int64)
    edge_j = np.ascontiguousarray(ju[order], dtype=np.int64)
    partner = kernels.local_search_matching(m, edge_i, edge_j)
    return _result(m, np.asarray(partner, dtype=np.int64), False)


def min_weight_matching(m, exact_max_n: int = EXACT_MAX_N) -> MatchingResult:
    """Minimum-weight perfect matching; exact up to ``exact_max_n`` points."""
    m = _validate_matrix(m)
    if m.shape[0] <= exact_max_n:
        return matching_exact(m)
    return matching_heuristic(m)


def run_crossmatch(x_samples, y_samples, *, literal: bool = False, exact_max_n: int = EXACT_MAX_N):
    """Build the samples, the matrix and the matching; returns ``(CrossSamples, MatchingResult)``."""
    cs = build_cross_samples(x_samples, y_samples)
    return cs, min_weight_matching(distance_matrix(cs, literal), exact_max_n)


def crossmatch_ob_estimate(x_samples, y_samples, *, literal: bool = False,
                           exact_max_n: int = EXACT_MAX_N) -> OverlapEstimate:
    cs, res = run_crossmatch(x_samples, y_samples, literal=literal, exact_max_n=exact_max_n)
    return OverlapEstimate("OB", "matching", res.statistic, n_points=cs.n)
