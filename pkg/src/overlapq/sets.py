"""Overlap of two finite sets.

Putting uniform mass on each set turns ``O_M`` into a set similarity,
``|S| / sqrt(|A| |B|)`` with ``S = A & B``, which always lies between the
Jaccard index and the overlap coefficient.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidParameterError


def _sizes(a, b):
    a, b = set(a), set(b)
    if not a or not b:
        raise InvalidParameterError("both sets must be nonempty")
    return len(a), len(b), len(a & b)


def overlap_coefficient(a, b) -> float:
    na, nb, k = _sizes(a, b)
    return k / min(na, nb)


def jaccard(a, b) -> float:
    na, nb, k = _sizes(a, b)
    return k / (na + nb - k)


def om_sets(a, b) -> float:
    na, nb, k = _sizes(a, b)
    return k / math.sqrt(na * nb)


def om_sets_double_sum(a, b) -> float:
    """``sqrt(sum_ij min{pA(i) pB(j), pA(j) pB(i)})`` over the union of elements."""
    a, b = set(a), set(b)
    if not a or not b:
        raise InvalidParameterError("both sets must be nonempty")
    universe = sorted(a | b, key=repr)
    pa = np.array([1.0 / len(a) if e in a else 0.0 for e in universe])
    pb = np.array([1.0 / len(b) if e in b else 0.0 for e in universe])
    prod = np.outer(pa, pb)
    return math.sqrt(float(np.minimum(prod, prod.T).sum()))


def set_overlaps(a, b) -> dict:
    """All three measures plus whether ``J <= O_M <= O`` holds."""
    o, j, om = overlap_coefficient(a, b), jaccard(a, b), om_sets(a, b)
    return {"overlap_coefficient": o, "jaccard": j, "om": om, "sandwich_holds": j <= om <= o}


def sandwich_exhaustive(universe_size: int = 10) -> tuple[int, int]:
    """Check ``J <= O_M <= O`` for every pair of nonempty subsets of a small universe.

    Subsets are bitmasks. The inequalities are tested in exact integer form,
    ``min(|A|,|B|)^2 <= |A||B| <= (|A|+|B|-|S|)^2``, and again in floating
    point on the three measures.

    Returns
    -------
    (n_pairs, n_violations)
    """
    if not 1 <= universe_size <= 16:
        raise InvalidParameterError("universe_size must be between 1 and 16")
    masks = np.arange(1, 1 << universe_size, dtype=np.int64)
    popcount = np.array([bin(v).count("1") for v in range(1 << universe_size)], dtype=np.int64)
    size = popcount[masks]
    na = size[:, None]
    nb = size[None, :]
    k = popcount[masks[:, None] & masks[None, :]]
    lo = np.minimum(na, nb)
    union = na + nb - k
    exact_ok = (lo * lo <= na * nb) & (na * nb <= union * union)
    j = k / union
    om = k / np.sqrt(na * nb)
    o = k / lo
    float_ok = (j <= om * (1 + 1e-15)) & (om <= o * (1 + 1e-15))
    n_pairs = int(k.size)
    return n_pairs, int(n_pairs - np.count_nonzero(exact_ok & float_ok))
