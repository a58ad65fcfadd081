# app/services/wavelet.py
"""
Undecimated à-trous (starlet) transform with the B3-spline kernel.

  smooth_0 = input
  smooth_j = smooth_{j-1} * h_j      h_j = (1,4,6,4,1)/16 with 2^(j-1)-1 zeros between taps
  detail_j = smooth_{j-1} - smooth_j
  residual = smooth_J

so sum(detail_j) + residual telescopes back to the input. Borders are mirror
reflected (d c b | a b c d | c b a), no repeated edge sample.
"""
from dataclasses import dataclass
from pathlib import Path
from typing import List, Union

import numpy as np
from cachetools import LRUCache, cached
from scipy.ndimage import convolve1d

from app.config import B3_TAPS, KERNEL_ID
from app.errors import DimensionMismatch, InvalidLevels
from app.imageio import save_plane
from app.models import GainVector
from app.raster import PlaneF, Raster, from_planes, require_same_size, to_planes
from app.util.log import get_logger

log = get_logger("wavelet", "WAV")


@dataclass(frozen=True)
class WaveletStack:
  planes: List[PlaneF]
  residual: PlaneF
  kernel_id: str = KERNEL_ID

  def __post_init__(self):
    if len(self.planes) < 1:
      raise InvalidLevels("a stack needs at least one detail plane")
    require_same_size(self.residual, *self.planes)

  @property
  def levels(self) -> int:
    return len(self.planes)


@cached(cache=LRUCache(maxsize=32))
def b3_kernel(step: int) -> np.ndarray:
  """B3 taps spaced `step` apart; step=1 is the plain (1,4,6,4,1)/16."""
  taps = np.asarray(B3_TAPS) / sum(B3_TAPS)
  k = np.zeros(4 * step + 1)
  k[::step] = taps
  k.setflags(write=False)
  return k

def _smooth(values: np.ndarray, step: int) -> np.ndarray:
  k = b3_kernel(step)
  tmp = convolve1d(values, k, axis=0, mode="mirror")
  return convolve1d(tmp, k, axis=1, mode="mirror")

def decompose(plane: PlaneF, levels: int) -> WaveletStack:
  if levels < 1:
    raise InvalidLevels(f"levels must be >= 1, got {levels}")
  prev = plane.values
  details: List[PlaneF] = []
  for j in range(1, levels + 1):
    cur = _smooth(prev, 2 ** (j - 1))
    details.append(PlaneF(prev - cur))
    prev = cur
  return WaveletStack(planes=details, residual=PlaneF(prev))

def reconstruct(stack: WaveletStack, gains: GainVector) -> PlaneF:
  if gains.levels != stack.levels:
    raise DimensionMismatch(f"{gains.levels} gains for a {stack.levels}-level stack")
  out = gains.residual_gain * stack.residual.values
  for g, d in zip(gains.gains, stack.planes):
    out = out + g * d.values
  return PlaneF(out)

def wavelet_filter_rgb(raster: Raster, levels: int, gains: GainVector) -> Raster:
  if levels < 1:
    raise InvalidLevels(f"levels must be >= 1, got {levels}")
  if gains.levels != levels:
    raise DimensionMismatch(f"{gains.levels} gains for {levels} levels")
  out = [reconstruct(decompose(p, levels), gains) for p in to_planes(raster)]
  log.info("wavelet filter: J=%d gains=%s residual=%s", levels, gains.gains, gains.residual_gain)
  return from_planes(*out)

def dump_stack(stack: WaveletStack, directory: Union[str, Path], prefix: str = "") -> List[Path]:
  """One PNG per detail plane (finest first) plus the residual, value + 128."""
  d = Path(directory)
  d.mkdir(parents=True, exist_ok=True)
  written = []
  for j, plane in enumerate(stack.planes, start=1):
    p = d / f"{prefix}detail_{j}.png"
    save_plane(plane, p)
    written.append(p)
  p = d / f"{prefix}residual.png"
  save_plane(stack.residual, p)
  written.append(p)
  return written
