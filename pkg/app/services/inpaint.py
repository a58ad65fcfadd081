# app/services/inpaint.py
"""
Iterative neighbour-averaging fill.

A masked pixel with at least `min_neighbors` unmasked 8-neighbours takes the
per-channel mean of all of them (half-away rounding) and counts as unmasked
from the next sweep on. Every sweep reads only the state left by the previous
one, so the visiting order cannot change the result.
"""
from typing import List, Tuple

import numpy as np

from app.errors import InvariantViolation
from app.models import InpaintConfig, InpaintReport, ThresholdSpec
from app.raster import Mask, Raster, require_same_size
from app.services.masking import build_mask
from app.util.log import get_logger

log = get_logger("inpaint", "INP")

_OFFSETS = [(dy, dx) for dy in (-1, 0, 1) for dx in (-1, 0, 1) if (dy, dx) != (0, 0)]
# residual-to-known distance matrix is chunked to about this many cells
_NEAREST_CHUNK_CELLS = 4_000_000


def _neighbor_sums(values: np.ndarray, known: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
  """(count of known 8-neighbours, per-channel sum over them); outside the image is unknown."""
  h, w = known.shape
  kp = np.pad(known, 1, constant_values=False)
  vp = np.pad(values * known[:, :, None], ((1, 1), (1, 1), (0, 0)))
  count = np.zeros((h, w), dtype=np.int64)
  sums = np.zeros((h, w, 3), dtype=np.int64)
  for dy, dx in _OFFSETS:
    count += kp[1 + dy:1 + dy + h, 1 + dx:1 + dx + w]
    sums += vp[1 + dy:1 + dy + h, 1 + dx:1 + dx + w]
  return count, sums

def _fill_nearest(values: np.ndarray, masked: np.ndarray) -> int:
  """
  Copies into each still-masked pixel the value of the closest unmasked one
  (Euclidean); equal distances go to the first candidate in row-major order.
  Works in place, returns how many were filled.
  """
  ky, kx = np.nonzero(~masked)
  ry, rx = np.nonzero(masked)
  if ky.size == 0 or ry.size == 0:
    return 0
  step = max(1, _NEAREST_CHUNK_CELLS // ky.size)
  for lo in range(0, ry.size, step):
    cy, cx = ry[lo:lo + step], rx[lo:lo + step]
    d2 = (cy[:, None] - ky[None, :]) ** 2 + (cx[:, None] - kx[None, :]) ** 2
    pick = np.argmin(d2, axis=1)
    values[cy, cx] = values[ky[pick], kx[pick]]
  masked[ry, rx] = False
  return int(ry.size)

def inpaint_with_residual(raster: Raster, mask: Mask, config: InpaintConfig) -> Tuple[Raster, InpaintReport, Mask]:
  """Like `inpaint`, also returning the pixels still masked at the end."""
  require_same_size(raster, mask)

  values = raster.pixels.astype(np.int64)
  masked = mask.bits.copy()
  initial = int(masked.sum())
  history: List[int] = []

  for _ in range(config.max_iterations):
    if not masked.any():
      break
    count, sums = _neighbor_sums(values, ~masked)
    eligible = masked & (count >= config.min_neighbors)
    n = int(eligible.sum())
    if n == 0:
      break
    c = count[eligible][:, None]
    # mean of non-negative ints, rounded half up == half away from zero
    values[eligible] = (2 * sums[eligible] + c) // (2 * c)
    masked &= ~eligible
    history.append(n)

  filled = initial - int(masked.sum())
  nearest = 0
  if config.residual_policy == "fill-nearest" and masked.any():
    nearest = _fill_nearest(values, masked)
    filled += nearest
  remaining = int(masked.sum())

  out = Raster(values.astype(np.uint8))
  keep = ~mask.bits
  if not np.array_equal(out.pixels[keep], raster.pixels[keep]):
    raise InvariantViolation("inpaint modified an unmasked pixel")

  report = InpaintReport(
    iterations_run=len(history),
    filled_count=filled,
    remaining_masked=remaining,
    initial_masked=initial,
    nearest_filled=nearest,
    history=history,
  )
  if remaining:
    log.warning("%d of %d masked pixels left unfilled after %d iterations",
                remaining, initial, report.iterations_run)
  log.info("inpaint: %d iterations, filled %d/%d (nearest %d)",
           report.iterations_run, filled, initial, nearest)
  return out, report, Mask(masked)

def inpaint(raster: Raster, mask: Mask, config: InpaintConfig) -> Tuple[Raster, InpaintReport]:
  out, report, _ = inpaint_with_residual(raster, mask, config)
  return out, report

def restore(raster: Raster, spec: ThresholdSpec, config: InpaintConfig) -> Tuple[Raster, Mask, InpaintReport]:
  mask = build_mask(raster, spec)
  out, report = inpaint(raster, mask, config)
  return out, mask, report
