# app/services/compose.py
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from app.config import BACKGROUND
from app.errors import AlphaOutOfRange, DegenerateLandmarks, EmptyRegion, InvalidTolerance
from app.models import LandmarkRatios, LandmarkSet, OverlayTransform, PortraitComparison
from app.raster import Mask, Raster, quantize, require_same_size
from app.util.log import get_logger

log = get_logger("compose", "CMP")

# bilinear sample points this close outside the grid snap onto it
_EDGE_EPS = 1e-9


# ----------------------------
# Warp
# ----------------------------
def _inverse_coords(t: OverlayTransform, in_w: int, in_h: int,
    out_w: int, out_h: int) -> Tuple[np.ndarray, np.ndarray]:
  """
  Forward map, pivoting on the input centre c:
    p_out = c + (tx, ty) + scale * R(rotation) (p_in - c)
  Returns the input coordinates sampled by every output pixel.
  """
  cx, cy = (in_w - 1) / 2.0, (in_h - 1) / 2.0
  th = math.radians(t.rotation)
  cos, sin = math.cos(th), math.sin(th)
  ys, xs = np.mgrid[0:out_h, 0:out_w].astype(np.float64)
  u = (xs - cx - t.tx) / t.scale
  v = (ys - cy - t.ty) / t.scale
  # R(-theta)
  return cx + cos * u + sin * v, cy - sin * u + cos * v

def warp(raster: Raster, t: OverlayTransform, out_w: int, out_h: int) -> Raster:
  """Bilinear resample of `raster` under `t`; samples off the input are white."""
  h, w = raster.height, raster.width
  x, y = _inverse_coords(t, w, h, out_w, out_h)
  x = np.where(np.abs(x - np.round(x)) < _EDGE_EPS, np.round(x), x)
  y = np.where(np.abs(y - np.round(y)) < _EDGE_EPS, np.round(y), y)
  inside = (x >= 0) & (x <= w - 1) & (y >= 0) & (y <= h - 1)

  xc = np.clip(x, 0, w - 1)
  yc = np.clip(y, 0, h - 1)
  x0 = np.floor(xc).astype(np.int64)
  y0 = np.floor(yc).astype(np.int64)
  x1 = np.minimum(x0 + 1, w - 1)
  y1 = np.minimum(y0 + 1, h - 1)
  fx = (xc - x0)[:, :, None]
  fy = (yc - y0)[:, :, None]

  p = raster.pixels.astype(np.float64)
  top = p[y0, x0] * (1 - fx) + p[y0, x1] * fx
  bot = p[y1, x0] * (1 - fx) + p[y1, x1] * fx
  val = top * (1 - fy) + bot * fy
  val[~inside] = BACKGROUND
  return Raster(quantize(val))


# ----------------------------
# Blending
# ----------------------------
def _check_alpha(alpha: float) -> None:
  if not (0.0 <= alpha <= 1.0) or math.isnan(alpha):
    raise AlphaOutOfRange(f"alpha must be in [0,1], got {alpha}")

def blend(base: Raster, top: Raster, alpha: float) -> Raster:
  """round((1-alpha)*base + alpha*top) per channel, half away from zero."""
  _check_alpha(alpha)
  require_same_size(base, top)
  b = base.pixels.astype(np.float64)
  t = top.pixels.astype(np.float64)
  return Raster(quantize((1.0 - alpha) * b + alpha * t))

def merge_layers(base: Raster, layers: Sequence[Tuple[Raster, float]]) -> Raster:
  """
  Stacks layers bottom-up over `base`, each at its own transparency, and
  quantizes once at the end. A single layer gives exactly `blend`.
  """
  acc = base.pixels.astype(np.float64)
  for layer, alpha in layers:
    _check_alpha(alpha)
    require_same_size(base, layer)
    acc = (1.0 - alpha) * acc + alpha * layer.pixels.astype(np.float64)
  return Raster(quantize(acc))

def overlay_layers(base: Raster, layers: Sequence[Tuple[Raster, OverlayTransform]]) -> Raster:
  """Warps every layer into `base`'s frame and merges them bottom-up, each at its own alpha."""
  placed = [(warp(img, t, base.width, base.height), t.alpha) for img, t in layers]
  return merge_layers(base, placed)

def overlay(base: Raster, top: Raster, t: OverlayTransform) -> Raster:
  return overlay_layers(base, [(top, t)])


# ----------------------------
# Coincidence
# ----------------------------
def coincidence_score(a: Raster, b: Raster, region: Mask) -> float:
  """Mean absolute per-channel difference over `region`: 0 iff equal there, at most 255."""
  require_same_size(a, b, region)
  if not region.bits.any():
    raise EmptyRegion("coincidence region is empty")
  d = np.abs(a.pixels.astype(np.int64) - b.pixels.astype(np.int64))
  return float(d[region.bits].mean())

def _dist(p, q) -> float:
  return math.hypot(p[0] - q[0], p[1] - q[1])

def landmark_ratios(l: LandmarkSet) -> LandmarkRatios:
  mid = ((l.left_eye[0] + l.right_eye[0]) / 2.0, (l.left_eye[1] + l.right_eye[1]) / 2.0)
  eye_span = _dist(l.left_eye, l.right_eye)
  eye_to_nose = _dist(mid, l.nose_tip)
  nose_to_mouth = _dist(l.nose_tip, l.mouth_center)
  if eye_span == 0.0 or eye_to_nose == 0.0 or nose_to_mouth == 0.0:
    raise DegenerateLandmarks(
      f"coincident landmarks (eye span {eye_span}, eye-nose {eye_to_nose}, nose-mouth {nose_to_mouth})")
  return LandmarkRatios(
    span_to_eye_nose=eye_span / eye_to_nose,
    eye_nose_to_nose_mouth=eye_to_nose / nose_to_mouth,
  )

def compare_portraits(a: Optional[Raster], la: LandmarkSet, b: Optional[Raster], lb: LandmarkSet,
    tol: float, region: Optional[Mask] = None) -> PortraitComparison:
  """
  Landmark ratio check, plus the pixel coincidence score when both images are
  given (whole frame unless a region mask is passed).
  """
  if not (tol > 0.0):
    raise InvalidTolerance(f"tol must be > 0, got {tol}")
  ra = landmark_ratios(la)
  rb = landmark_ratios(lb)
  d1 = abs(ra.span_to_eye_nose - rb.span_to_eye_nose)
  d2 = abs(ra.eye_nose_to_nose_mouth - rb.eye_nose_to_nose_mouth)

  score = None
  if a is not None and b is not None:
    score = coincidence_score(a, b, region if region is not None else Mask.full(a.width, a.height))

  out = PortraitComparison(
    ratios_a=ra,
    ratios_b=rb,
    span_to_eye_nose_diff=d1,
    eye_nose_to_nose_mouth_diff=d2,
    span_to_eye_nose_coincident=d1 <= tol,
    eye_nose_to_nose_mouth_coincident=d2 <= tol,
    tol=tol,
    coincidence_score=score,
  )
  log.info("compare: diffs %.4g / %.4g (tol %g) -> %s", d1, d2, tol, "coincident" if out.coincident else "apart")
  return out

def landmarks_in_overlay(lb: LandmarkSet, t: OverlayTransform, top_w: int, top_h: int) -> LandmarkSet:
  """Where the top image's landmarks land in the base frame after `warp`."""
  cx, cy = (top_w - 1) / 2.0, (top_h - 1) / 2.0
  centred = lb.transformed(tx=-cx, ty=-cy)
  return centred.transformed(scale=t.scale, rotation=t.rotation, tx=cx + t.tx, ty=cy + t.ty)

def landmark_offsets(la: LandmarkSet, lb: LandmarkSet) -> List[float]:
  """Per-landmark distances, ordered left_eye, right_eye, nose_tip, mouth_center."""
  pa, pb = la.points(), lb.points()
  return [_dist(pa[k], pb[k]) for k in pa]
