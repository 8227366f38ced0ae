"""Time the compiled kernels against the pure-Python fallback.

Run with ``python benchmarks/bench_kernels.py``. Both backends receive the
same inputs and their outputs are compared before timings are printed.
"""

from __future__ import annotations

import argparse
import importlib
import timeit

import numpy as np

from overlapq import _kernels_py


def _matrix(n, seed):
    pts = np.random.default_rng(seed).normal(size=(n, 2))
    return np.ascontiguousarray(np.sqrt(((pts[:, None] - pts[None]) ** 2).sum(-1)))


def _edges(m):
    iu, ju = np.triu_indices(m.shape[0], 1)
    order = np.lexsort((ju, iu, m[iu, ju]))
    return np.ascontiguousarray(iu[order], dtype=np.int64), np.ascontiguousarray(ju[order], dtype=np.int64)


def cases(exact_n, heuristic_n, kde_points, kde_samples):
    m_exact = _matrix(exact_n, 1)
    m_heur = _matrix(heuristic_n, 2)
    ei, ej = _edges(m_heur)
    rs = np.random.default_rng(3)
    samples = np.sort(rs.normal(size=kde_samples))
    x = np.linspace(-6, 6, kde_points)
    return {
        f"exact matching n={exact_n}": lambda k: k.exact_matching(m_exact)[1],
        f"2-opt matching n={heuristic_n}": lambda k: np.asarray(k.local_search_matching(m_heur, ei, ej)),
        f"kde logpdf {kde_points}x{kde_samples}": lambda k: np.asarray(k.kde_logpdf(x, samples, 0.2)),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--exact-n", type=int, default=14)
    parser.add_argument("--heuristic-n", type=int, default=200)
    parser.add_argument("--kde-points", type=int, default=20_000)
    parser.add_argument("--kde-samples", type=int, default=2_000)
    args = parser.parse_args(argv)

    try:
        compiled = importlib.import_module("overlapq._kernels")
    except ImportError:
        print("compiled extension not built; only the fallback is timed")
        compiled = None

    print(f"{'kernel':<32}{'python (s)':>12}{'cython (s)':>12}{'speedup':>10}")
    for name, fn in cases(args.exact_n, args.heuristic_n, args.kde_points, args.kde_samples).items():
        t_py = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat))
        if compiled is None:
            print(f"{name:<32}{t_py:>12.4f}{'-':>12}{'-':>10}")
            continue
        if not np.allclose(fn(compiled), fn(_kernels_py), rtol=1e-12, atol=1e-11):
            raise SystemExit(f"{name}: backends disagree")
        t_c = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat))
        print(f"{name:<32}{t_py:>12.4f}{t_c:>12.4f}{t_py / t_c:>9.1f}x")


if __name__ == "__main__":
    main()
