"""Counter-based random streams.

Every random draw in the package comes from numpy's Philox4x64-10 generator
keyed by the user seed. Independent streams are carved out of the same key by
fixing the three high words of the 256-bit counter, so a stream is addressed
by ``(seed, a, b, c)`` and never overlaps another one (the low word would need
2**64 blocks to wrap). Philox output is specified bit-for-bit, which keeps
samples identical across platforms and numpy versions.
"""
import numpy as np

_MASK64 = (1 << 64) - 1


def _check_seed(seed):
    seed = int(seed)
    if seed < 0 or seed >= 1 << 128:
        raise ValueError(f"seed must be in [0, 2**128), got {seed}")
    return seed


class StreamFactory:
    """Hands out generators for streams of one seed.

    The same bit generator is re-positioned on every call, which avoids the
    cost of building a fresh ``Philox`` per stream in tight Monte Carlo loops.
    Generators returned by :meth:`stream` are only valid until the next call.
    """

    def __init__(self, seed):
        seed = _check_seed(seed)
        self._key = np.array([seed & _MASK64, seed >> 64], dtype=np.uint64)
        self._bitgen = np.random.Philox(key=seed)
        self._gen = np.random.Generator(self._bitgen)

    def stream(self, a=0, b=0, c=0):
        self._bitgen.state = {
            "bit_generator": "Philox",
            "state": {
                "counter": np.array([0, a, b, c], dtype=np.uint64),
                "key": self._key,
            },
            "buffer": np.zeros(4, dtype=np.uint64),
            "buffer_pos": 4,
            "has_uint32": 0,
            "uinteger": 0,
        }
        return self._gen


def stream(seed, a=0, b=0, c=0):
    """A fresh generator for stream ``(a, b, c)`` of ``seed``."""
    return StreamFactory(seed).stream(a, b, c)
