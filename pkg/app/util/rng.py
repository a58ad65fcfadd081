# app/util/rng.py
"""
SplitMix64, the only randomness source for synthetic cases.

Output i (0-based) of a generator seeded with s is mix(s + (i+1)*GAMMA) mod 2^64,
which lets whole blocks be drawn at once with numpy's wrapping uint64 math.
Never swap this for random/np.random: the corpus is defined by these bits.
"""
import numpy as np

from app.config import SPLITMIX_GAMMA, SPLITMIX_MUL1, SPLITMIX_MUL2

_MASK64 = (1 << 64) - 1
_GAMMA = np.uint64(SPLITMIX_GAMMA)
_M1 = np.uint64(SPLITMIX_MUL1)
_M2 = np.uint64(SPLITMIX_MUL2)
_S30, _S27, _S31, _S11 = (np.uint64(n) for n in (30, 27, 31, 11))
_TO_UNIT = 1.0 / float(1 << 53)


def _mix(z: np.ndarray) -> np.ndarray:
  z = (z ^ (z >> _S30)) * _M1
  z = (z ^ (z >> _S27)) * _M2
  return z ^ (z >> _S31)


class SplitMix64:
  def __init__(self, seed: int):
    self.seed = int(seed) & _MASK64
    self.counter = 0

  def next_u64(self, n: int) -> np.ndarray:
    """Next n raw outputs as uint64."""
    idx = np.arange(self.counter + 1, self.counter + 1 + n, dtype=np.uint64)
    self.counter += n
    with np.errstate(over="ignore"):
      state = np.uint64(self.seed) + idx * _GAMMA
      return _mix(state)

  def uniform(self, n: int) -> np.ndarray:
    """n doubles in [0,1) from the top 53 bits."""
    return (self.next_u64(n) >> _S11).astype(np.float64) * _TO_UNIT

  def uniform1(self, lo: float = 0.0, hi: float = 1.0) -> float:
    return lo + (hi - lo) * float(self.uniform(1)[0])

  def integers(self, lo: int, hi: int, n: int) -> np.ndarray:
    """n ints in [lo, hi] inclusive (multiply-shift on the uniform draw)."""
    span = hi - lo + 1
    return lo + np.floor(self.uniform(n) * span).astype(np.int64)
