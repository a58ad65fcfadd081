# app/services/masking.py
import numpy as np

from app.config import BACKGROUND, LUMA_WEIGHTS
from app.models import MaskStats, ThresholdSpec
from app.raster import Mask, Raster, require_same_size


def darkness_scaled(raster: Raster, channel_rule: str) -> np.ndarray:
  """
  Darkness statistic times 1000, as int64 so the strict `< T` test is exact.
    luma        299R + 587G + 114B
    max-channel 1000 * max(R,G,B)
    min-channel 1000 * min(R,G,B)
  """
  p = raster.pixels.astype(np.int64)
  if channel_rule == "luma":
    wr, wg, wb = LUMA_WEIGHTS
    return wr * p[:, :, 0] + wg * p[:, :, 1] + wb * p[:, :, 2]
  if channel_rule == "max-channel":
    return 1000 * p.max(axis=2)
  if channel_rule == "min-channel":
    return 1000 * p.min(axis=2)
  raise ValueError(f"unknown channel rule: {channel_rule}")

def build_mask(raster: Raster, spec: ThresholdSpec) -> Mask:
  """Masked iff statistic < threshold; threshold 0 masks nothing."""
  return Mask(darkness_scaled(raster, spec.channel_rule) < 1000 * spec.threshold)

def whiteout(raster: Raster, mask: Mask) -> Raster:
  require_same_size(raster, mask)
  out = raster.pixels.copy()
  out[mask.bits] = BACKGROUND
  return Raster(out)

def mask_stats(mask: Mask) -> MaskStats:
  n = mask.count()
  return MaskStats(masked_count=n, fraction=n / (mask.width * mask.height))
