"""Pure-Python/numpy implementations of the hot kernels.

Used when the compiled ``_kernels`` extension is unavailable. Signatures and
results match the Cython module; see ``_backend`` for the selection logic.
"""

import numpy as np

IMPROVE_EPS = 1e-12
_KDE_CHUNK = 1 << 21


def exact_matching(D):
    """Minimum-weight perfect matching by dynamic programming over subsets.

    ``best[mask]`` is the cheapest perfect matching of the vertex set
    ``mask``. The lowest vertex of ``mask`` is always matched first and its
    partner is scanned in increasing order with strict improvement, so ties
    resolve to the lexicographically smallest pairs.

    Returns
    -------
    partner : ndarray of int64, shape (n,)
    total : float
        Sum of ``D[i, j]`` over matched pairs, each pair counted once.
    """
    n = D.shape[0]
    rows = D.tolist()
    full = (1 << n) - 1
    inf = float("inf")
    best = [inf] * (full + 1)
    choice = [-1] * (full + 1)
    best[0] = 0.0
    for mask in range(3, full + 1):
        if bin(mask).count("1") & 1:
            continue
        i = (mask & -mask).bit_length() - 1
        row = rows[i]
        rest_i = mask ^ (1 << i)
        b = inf
        c = -1
        j = i + 1
        rem = rest_i >> j
        while rem:
            if rem & 1:
                cost = row[j] + best[rest_i ^ (1 << j)]
                if cost < b:
                    b = cost
                    c = j
            rem >>= 1
            j += 1
        best[mask] = b
        choice[mask] = c

    partner = np.empty(n, dtype=np.int64)
    mask = full
    while mask:
        i = (mask & -mask).bit_length() - 1
        j = choice[mask]
        partner[i] = j
        partner[j] = i
        mask ^= (1 << i) | (1 << j)
    return partner, best[full]


def local_search_matching(D, edge_i, edge_j):
    """Greedy matching over the pre-sorted edge list, then 2-opt.

    A 2-opt move takes two matched pairs ``(a, b)`` and ``(c, d)`` and
    replaces them by ``(a, c), (b, d)`` or ``(a, d), (b, c)`` when that lowers
    the total by more than ``IMPROVE_EPS``. Passes repeat until none applies.
    """
    n = D.shape[0]
    rows = D.tolist()
    matched = [False] * n
    first = []
    second = []
    for i, j in zip(edge_i.tolist(), edge_j.tolist()):
        if matched[i] or matched[j]:
            continue
        matched[i] = matched[j] = True
        first.append(i)
        second.append(j)
        if len(first) * 2 == n:
            break

    n_pairs = len(first)
    improved = True
    while improved:
        improved = False
        for p in range(n_pairs):
            for r in range(p + 1, n_pairs):
                a, b = first[p], second[p]
                c, d = first[r], second[r]
                cur = rows[a][b] + rows[c][d]
                alt1 = rows[a][c] + rows[b][d]
                alt2 = rows[a][d] + rows[b][c]
                if alt1 <= alt2:
                    if alt1 < cur - IMPROVE_EPS:
                        second[p], first[r], second[r] = c, b, d
                        improved = True
                elif alt2 < cur - IMPROVE_EPS:
                    second[p], first[r], second[r] = d, b, c
                    improved = True

    partner = np.empty(n, dtype=np.int64)
    for a, b in zip(first, second):
        partner[a] = b
        partner[b] = a
    return partner


def kde_logpdf(x, samples, bandwidth):
    """Log density of a Gaussian-kernel mixture at each point of ``x``.

    ``samples`` must be sorted. The sum is shifted by the nearest kernel so
    the far tails stay finite.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty(x.shape[0])
    m = samples.shape[0]
    chunk = max(1, _KDE_CHUNK // m)
    log_norm = np.log(m * bandwidth * np.sqrt(2.0 * np.pi))
    for k in range(0, x.shape[0], chunk):
        z = (x[k:k + chunk, None] - samples[None, :]) / bandwidth
        z2 = 0.5 * z * z
        zmin = z2.min(axis=1)
        s = np.exp(-(z2 - zmin[:, None])).sum(axis=1)
        out[k:k + chunk] = np.log(s) - zmin - log_norm
    return out
