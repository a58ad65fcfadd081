import math
from typing import Optional

import numpy as np
from scipy.ndimage import laplace

from app.raster import Mask, Raster, require_same_size

PEAK = 255.0


def mse(a: Raster, b: Raster) -> float:
  require_same_size(a, b)
  d = a.pixels.astype(np.float64) - b.pixels.astype(np.float64)
  return float(np.mean(d * d))

def psnr(a: Raster, b: Raster) -> float:
  """10*log10(255^2 / MSE) over all pixels and channels; inf when identical."""
  e = mse(a, b)
  if e == 0.0:
    return math.inf
  return 10.0 * math.log10(PEAK * PEAK / e)

def mae_on_mask(a: Raster, b: Raster, mask: Optional[Mask] = None) -> float:
  """Mean absolute per-channel error over the masked pixels (0.0 on an empty mask)."""
  require_same_size(a, b)
  sel = np.ones(a.pixels.shape[:2], dtype=bool) if mask is None else mask.bits
  if mask is not None:
    require_same_size(a, mask)
  if not sel.any():
    return 0.0
  d = np.abs(a.pixels.astype(np.float64) - b.pixels.astype(np.float64))
  return float(d[sel].mean())

def edge_energy(r: Raster) -> float:
  """Mean absolute Laplacian over the three channels, mirror borders."""
  p = r.pixels.astype(np.float64)
  return float(np.mean([np.abs(laplace(p[:, :, c], mode="mirror")).mean() for c in range(3)]))
