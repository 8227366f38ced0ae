import importlib

import numpy as np
import pytest

import overlapq
from overlapq import _kernels_py

try:
    compiled = importlib.import_module("overlapq._kernels")
except ImportError:  # pragma: no cover
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled extension not built")


def matrix(n, seed):
    pts = np.random.default_rng(seed).normal(size=(n, 2))
    return np.ascontiguousarray(np.sqrt(((pts[:, None] - pts[None]) ** 2).sum(-1)))


def edges(m):
    iu, ju = np.triu_indices(m.shape[0], 1)
    order = np.lexsort((ju, iu, m[iu, ju]))
    return np.ascontiguousarray(iu[order], dtype=np.int64), np.ascontiguousarray(ju[order], dtype=np.int64)


def test_backend_reported():
    assert overlapq.BACKEND in {"cython", "python"}
    if compiled is not None:
        assert overlapq.BACKEND == "cython"


@needs_compiled
@pytest.mark.parametrize("n", [4, 8, 12])
def test_exact_parity(n):
    m = matrix(n, n)
    pc, tc = compiled.exact_matching(m)
    pp, tp = _kernels_py.exact_matching(m)
    assert np.array_equal(np.asarray(pc), np.asarray(pp))
    assert tc == pytest.approx(tp, abs=1e-12)


@needs_compiled
@pytest.mark.parametrize("n", [16, 40, 100])
def test_local_search_parity(n):
    m = matrix(n, 7 * n)
    ei, ej = edges(m)
    assert np.array_equal(np.asarray(compiled.local_search_matching(m, ei, ej)),
                          np.asarray(_kernels_py.local_search_matching(m, ei, ej)))


@needs_compiled
def test_kde_parity():
    rs = np.random.default_rng(0)
    samples = np.sort(rs.normal(size=500))
    x = np.linspace(-12, 12, 3001)
    for h in (0.05, 0.3, 2.0):
        a = np.asarray(compiled.kde_logpdf(x, samples, h))
        b = np.asarray(_kernels_py.kde_logpdf(x, samples, h))
        assert np.allclose(a, b, rtol=1e-12, atol=1e-11)


def test_kde_fallback_against_direct_sum():
    samples = np.sort(np.array([-1.0, 0.2, 0.5, 3.0]))
    x = np.array([-2.0, 0.0, 1.0, 10.0])
    h = 0.7
    direct = np.log(np.exp(-0.5 * ((x[:, None] - samples[None]) / h) ** 2).sum(1) / (4 * h * np.sqrt(2 * np.pi)))
    assert np.allclose(_kernels_py.kde_logpdf(x, samples, h), direct, rtol=1e-13)


def test_benchmark_smoke(capsys):
    import runpy
    from pathlib import Path

    bench = runpy.run_path(str(Path(__file__).parents[1] / "benchmarks" / "bench_kernels.py"))
    bench["main"](["--repeat", "1", "--exact-n", "6", "--heuristic-n", "20", "--kde-points", "50", "--kde-samples", "20"])
    assert "2-opt matching n=20" in capsys.readouterr().out
