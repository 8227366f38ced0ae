"""Counter-based SplitMix64 generator.

Every variate is a pure function of ``(seed, stream, index)``, so results are
identical across platforms and independent of how a caller chunks the work.
Normal variates are produced by inverting the standard normal cdf.
"""

import numpy as np
from scipy import special

_MASK64 = (1 << 64) - 1
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_STREAM_GAMMA = 0xD1B54A32D192ED03
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_TWO_M52 = 2.0 ** -52


def _mix(z):
    z = z ^ (z >> np.uint64(30))
    z = z * _M1
    z = z ^ (z >> np.uint64(27))
    z = z * _M2
    return z ^ (z >> np.uint64(31))


def _mix_int(value: int) -> int:
    with np.errstate(over="ignore"):
        return int(_mix(np.array([value & _MASK64], dtype=np.uint64))[0])


def derive_seed(seed: int, stream: int) -> int:
    """Return an independent 64-bit seed for sub-stream ``stream`` of ``seed``."""
    base = _mix_int(int(seed))
    return _mix_int((base + (int(stream) + 1) * _STREAM_GAMMA) & _MASK64)


def raw_uint64(seed: int, n: int, start: int = 0) -> np.ndarray:
    """Outputs ``start .. start + n - 1`` of the generator keyed by ``seed``."""
    key = np.uint64(_mix_int(int(seed)))
    counter = np.arange(start + 1, start + n + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return _mix(key + counter * _GAMMA)


def uniforms(seed: int, n: int, start: int = 0) -> np.ndarray:
    """Uniform variates on the open interval (0, 1).

    The top 52 bits are used so that ``bits + 0.5`` is exact and the result
    can never round to 0 or 1.
    """
    bits = raw_uint64(seed, n, start) >> np.uint64(12)
    return (bits.astype(np.float64) + 0.5) * _TWO_M52


def standard_normals(seed: int, n: int, start: int = 0) -> np.ndarray:
    return special.ndtri(uniforms(seed, n, start))
