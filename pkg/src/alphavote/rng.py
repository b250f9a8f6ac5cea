"""Counter-based random number generation (Philox4x32-10).

Every random draw in the package is addressed, not sequenced: the
uniform at position ``i`` of stream ``s`` under seed ``k`` is a pure
function of ``(k, s, i)``.  That gives reproducibility that is
independent of chunking and worker count, and lets Monte Carlo trials
use one stream each without any state being shared between them.

Layout (fixed; the compiled kernel implements the same mapping):

* key      = 64-bit seed, split little-endian into two 32-bit words
* counter  = (block_lo, block_hi, stream_lo, stream_hi) where ``block``
  is the 64-bit index of the 4-word output block within the stream and
  ``stream`` is the 64-bit stream id
* each output block (x0, x1, x2, x3) yields two doubles::

      u0 = ((x0 >> 6) * 2**26 + (x1 >> 6) + 0.5) * 2**-52
      u1 = ((x2 >> 6) * 2**26 + (x3 >> 6) + 0.5) * 2**-52

  so uniforms carry 52 random bits and lie strictly inside (0, 1);
  every arithmetic step is exact in double precision, which is what
  makes pure-Python and compiled streams bit-identical.

Standard normals are produced from the uniforms by the inverse CDF
(``scipy.special.ndtri``); the compiled kernel calls the identical
scipy routine through its Cython interface.
"""

from __future__ import annotations

import numpy as np
from scipy.special import ndtri

_M0 = np.uint64(0xD2511F53)
_M1 = np.uint64(0xCD9E8D57)
_W0 = 0x9E3779B9
_W1 = 0xBB67AE85
_MASK32 = 0xFFFFFFFF
_MASK64 = 0xFFFFFFFFFFFFFFFF
_SHIFT32 = np.uint64(32)

# Round keys for all ten rounds, derived from the two seed words by the
# Weyl increments above.
def _round_keys(seed: int) -> list[tuple[np.uint32, np.uint32]]:
    k0 = seed & _MASK32
    k1 = (seed >> 32) & _MASK32
    keys = []
    for _ in range(10):
        keys.append((np.uint32(k0), np.uint32(k1)))
        k0 = (k0 + _W0) & _MASK32
        k1 = (k1 + _W1) & _MASK32
    return keys


def _philox_blocks(c0, c1, c2, c3, keys):
    """Run the ten Philox4x32 rounds over arrays of counter words."""
    x0, x1, x2, x3 = c0, c1, c2, c3
    for k0, k1 in keys:
        p0 = x0.astype(np.uint64) * _M0
        p1 = x2.astype(np.uint64) * _M1
        hi0 = (p0 >> _SHIFT32).astype(np.uint32)
        lo0 = p0.astype(np.uint32)
        hi1 = (p1 >> _SHIFT32).astype(np.uint32)
        lo1 = p1.astype(np.uint32)
        x0 = hi1 ^ x1 ^ k0
        x1 = lo1
        x2 = hi0 ^ x3 ^ k1
        x3 = lo0
    return x0, x1, x2, x3


_TWO26 = 67108864.0  # 2**26
_INV52 = 1.0 / 4503599627370496.0  # 2**-52


def _to_uniforms(x0, x1, x2, x3):
    """Map each 4-word block to two doubles in (0, 1); all steps exact."""
    shift = np.uint32(6)
    u0 = ((x0 >> shift).astype(np.float64) * _TWO26
          + (x1 >> shift).astype(np.float64) + 0.5) * _INV52
    u1 = ((x2 >> shift).astype(np.float64) * _TWO26
          + (x3 >> shift).astype(np.float64) + 0.5) * _INV52
    out = np.empty(2 * x0.shape[0], dtype=np.float64)
    out[0::2] = u0
    out[1::2] = u1
    return out


def stream_uniforms(seed: int, stream_id: int, start: int, count: int) -> np.ndarray:
    """Uniforms at positions [start, start + count) of one stream."""
    if count < 0 or start < 0:
        raise ValueError("start and count must be nonnegative")
    if count == 0:
        return np.empty(0, dtype=np.float64)
    seed &= _MASK64
    stream_id &= _MASK64
    first_block = start >> 1
    last_block = (start + count - 1) >> 1
    blocks = np.arange(first_block, last_block + 1, dtype=np.uint64)
    c0 = blocks.astype(np.uint32)
    c1 = (blocks >> _SHIFT32).astype(np.uint32)
    c2 = np.full(blocks.shape, stream_id & _MASK32, dtype=np.uint32)
    c3 = np.full(blocks.shape, (stream_id >> 32) & _MASK32, dtype=np.uint32)
    u = _to_uniforms(*_philox_blocks(c0, c1, c2, c3, _round_keys(seed)))
    lo = start - 2 * first_block
    return u[lo:lo + count]


def uniform_grid(seed: int, first_stream: int, n_streams: int,
                 draws_per_stream: int) -> np.ndarray:
    """Uniforms 0..draws_per_stream-1 for n_streams consecutive streams.

    Returns an array of shape (n_streams, draws_per_stream); row i holds
    the leading draws of stream first_stream + i.  This is the bulk path
    used by the pure-Python Monte Carlo kernel.
    """
    if n_streams < 0 or draws_per_stream < 0:
        raise ValueError("stream and draw counts must be nonnegative")
    if n_streams == 0 or draws_per_stream == 0:
        return np.empty((n_streams, draws_per_stream), dtype=np.float64)
    seed &= _MASK64
    bpt = (draws_per_stream + 1) >> 1
    blocks = np.tile(np.arange(bpt, dtype=np.uint64), n_streams)
    streams = (np.repeat(np.arange(n_streams, dtype=np.uint64), bpt)
               + np.uint64(first_stream & _MASK64))
    c0 = blocks.astype(np.uint32)
    c1 = (blocks >> _SHIFT32).astype(np.uint32)
    c2 = streams.astype(np.uint32)
    c3 = (streams >> _SHIFT32).astype(np.uint32)
    u = _to_uniforms(*_philox_blocks(c0, c1, c2, c3, _round_keys(seed)))
    return u.reshape(n_streams, 2 * bpt)[:, :draws_per_stream]


def stream_normals(seed: int, stream_id: int, start: int, count: int) -> np.ndarray:
    """Standard normals by inverse CDF over ``stream_uniforms``."""
    return ndtri(stream_uniforms(seed, stream_id, start, count))


class RandomSource:
    """A positioned view on one stream of the counter-based generator.

    Instances hand out consecutive uniforms or normals from the stream
    ``(seed, stream_id)`` and remember the position, so repeated calls
    never reuse draws.  ``substream`` jumps to an unrelated stream under
    the same seed, which is how independent components (for example the
    trials of a Monte Carlo run) get their own randomness.
    """

    def __init__(self, seed: int, stream_id: int = 0):
        self.seed = int(seed) & _MASK64
        self.stream_id = int(stream_id) & _MASK64
        self._pos = 0

    @property
    def position(self) -> int:
        """Number of draws consumed so far."""
        return self._pos

    def uniforms(self, count: int) -> np.ndarray:
        u = stream_uniforms(self.seed, self.stream_id, self._pos, count)
        self._pos += count
        return u

    def normals(self, count: int) -> np.ndarray:
        return ndtri(self.uniforms(count))

    def substream(self, stream_id: int) -> "RandomSource":
        """Fresh source on another stream of the same seed."""
        return RandomSource(self.seed, stream_id)

    def __repr__(self) -> str:
        return (f"RandomSource(seed={self.seed}, stream_id={self.stream_id}, "
                f"position={self._pos})")
