# app/services/synth.py
"""
Ground-truth test images: a smooth red-chalk field with dark pen strokes
written over it. The exact overwritten pixels are kept, so any restoration can
be scored against the clean drawing.

Draw order from the seeded SplitMix64 stream is fixed: w*h noise samples,
then the stroke walks, then the ink colours.
"""
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Tuple, Union

import numpy as np
from pydantic import ValidationError

from app.config import LUMA_WEIGHTS, SYNTH_TRUTH_LEVELS
from app.errors import InvalidSpec, IoError
from app.imageio import save_image, save_mask
from app.models import Evaluation, SynthSpec, ThresholdSpec
from app.raster import Mask, PlaneF, Raster, quantize, require_same_size
from app.services.metrics import mae_on_mask, psnr
from app.services.wavelet import decompose
from app.util.jsonio import read_json
from app.util.log import get_logger
from app.util.rng import SplitMix64

log = get_logger("synth", "SYN")

# heading wobble per 1-px step, radians
_TURN = 0.3
_START_SLANT = 0.35
# actual text fraction must land within this share of coverage_target
_COVERAGE_SLACK = 0.2


@dataclass(frozen=True)
class SynthCase:
  truth: Raster
  degraded: Raster
  text_mask: Mask
  spec: SynthSpec

  @property
  def known_threshold(self) -> int:
    """Every ink channel is <= stroke_darkness, so ink luma < stroke_darkness + 1 <= chalk luma."""
    return self.spec.stroke_darkness + 1

  def threshold_spec(self) -> ThresholdSpec:
    return ThresholdSpec(threshold=self.known_threshold, channel_rule="luma")


# ----------------------------
# Spec loading / checks
# ----------------------------
def load_spec(path: Union[str, Path]) -> SynthSpec:
  data = read_json(path)
  try:
    return SynthSpec.model_validate(data)
  except ValidationError as e:
    raise InvalidSpec(f"invalid synth spec {path}: {e}") from e

def _check_palette(spec: SynthSpec) -> None:
  # chalk luma must stay >= darkness + 1 after rounding; luma is linear so the
  # palette endpoints bound every interpolated colour
  wr, wg, wb = LUMA_WEIGHTS
  floor = 1000 * spec.stroke_darkness + 1500
  for rgb in spec.chalk_palette:
    if wr * rgb[0] + wg * rgb[1] + wb * rgb[2] < floor:
      raise InvalidSpec(f"palette colour {tuple(rgb)} is too dark for stroke_darkness {spec.stroke_darkness}")


# ----------------------------
# Drawing
# ----------------------------
def _chalk_field(spec: SynthSpec, rng: SplitMix64) -> np.ndarray:
  """Residual of a J=4 starlet decomposition of uniform noise, spread over the palette."""
  noise = rng.uniform(spec.width * spec.height).reshape(spec.height, spec.width)
  smooth = decompose(PlaneF(noise), SYNTH_TRUTH_LEVELS).residual.values
  lo, hi = float(smooth.min()), float(smooth.max())
  t = (smooth - lo) / (hi - lo) if hi > lo else np.full_like(smooth, 0.5)

  palette = np.asarray(spec.chalk_palette, dtype=np.float64)
  if len(palette) == 1:
    return quantize(np.broadcast_to(palette[0], t.shape + (3,)))
  xp = np.linspace(0.0, 1.0, len(palette))
  rgb = np.stack([np.interp(t, xp, palette[:, c]) for c in range(3)], axis=-1)
  return quantize(rgb)

def _disc(width: int) -> Tuple[np.ndarray, np.ndarray]:
  r = width / 2.0
  R = int(math.ceil(r))
  dy, dx = np.mgrid[-R:R + 1, -R:R + 1]
  keep = dx * dx + dy * dy <= r * r
  return dy[keep], dx[keep]

def _reflect(v: float, hi: float) -> Tuple[float, bool]:
  if v < 0:
    return min(-v, hi), True
  if v > hi:
    return max(2 * hi - v, 0.0), True
  return v, False

def _stroke_mask(spec: SynthSpec, rng: SplitMix64) -> np.ndarray:
  """
  Random walks stamped with a disc of `stroke_width`, 1 px per step. Stroke k
  stops once total coverage reaches (k+1)/stroke_count of the target, so the
  final coverage overshoots by at most one stamp.
  """
  h, w = spec.height, spec.width
  mask = np.zeros((h, w), dtype=bool)
  if spec.stroke_count == 0:
    return mask

  target = int(round(spec.coverage_target * w * h))
  ddy, ddx = _disc(spec.stroke_width)
  covered = 0
  steps, max_steps = 0, 20 * w * h

  for k in range(spec.stroke_count):
    share = target * (k + 1) // spec.stroke_count
    x = rng.uniform1(0, w - 1)
    y = rng.uniform1(0, h - 1)
    heading = (math.pi if rng.uniform1() < 0.5 else 0.0) + rng.uniform1(-_START_SLANT, _START_SLANT)
    while covered < share and steps < max_steps:
      cy = int(math.floor(y + 0.5)) + ddy
      cx = int(math.floor(x + 0.5)) + ddx
      ok = (cy >= 0) & (cy < h) & (cx >= 0) & (cx < w)
      cy, cx = cy[ok], cx[ok]
      covered += int(np.count_nonzero(~mask[cy, cx]))
      mask[cy, cx] = True

      heading += rng.uniform1(-_TURN, _TURN)
      x, flip_x = _reflect(x + math.cos(heading), w - 1)
      y, flip_y = _reflect(y + math.sin(heading), h - 1)
      if flip_x:
        heading = math.pi - heading
      if flip_y:
        heading = -heading
      steps += 1

  if covered < target:
    raise InvalidSpec(
      f"stroke walk stopped at {covered} of {target} target pixels after {steps} steps (seed {spec.seed})")
  return mask

def _check_coverage(spec: SynthSpec, bits: np.ndarray) -> None:
  """stroke_count=0 is the undamaged case and has no coverage to meet."""
  if spec.stroke_count == 0:
    return
  frac = float(bits.mean())
  if abs(frac - spec.coverage_target) > _COVERAGE_SLACK * spec.coverage_target:
    raise InvalidSpec(
      f"text coverage {frac:.3f} misses target {spec.coverage_target} by more than "
      f"{_COVERAGE_SLACK:.0%} ({spec.width}x{spec.height}, stroke_width {spec.stroke_width}, seed {spec.seed})")

def generate(spec: SynthSpec) -> SynthCase:
  _check_palette(spec)
  rng = SplitMix64(spec.seed)
  truth = _chalk_field(spec, rng)
  bits = _stroke_mask(spec, rng)
  _check_coverage(spec, bits)

  degraded = truth.copy()
  n = int(bits.sum())
  if n:
    ink = rng.integers(0, spec.stroke_darkness, 3 * n).reshape(n, 3)
    degraded[bits] = ink.astype(np.uint8)

  case = SynthCase(truth=Raster(truth), degraded=Raster(degraded), text_mask=Mask(bits), spec=spec)
  log.info("synth seed=%d %dx%d: %d text pixels (%.3f, target %.3f)",
           spec.seed, spec.width, spec.height, n, n / (spec.width * spec.height), spec.coverage_target)
  return case


# ----------------------------
# Scoring / output
# ----------------------------
def evaluate(case: SynthCase, restored: Raster) -> Evaluation:
  require_same_size(case.truth, restored)
  return Evaluation(
    psnr_db=psnr(restored, case.truth),
    psnr_degraded_db=psnr(case.degraded, case.truth),
    mae_on_mask=mae_on_mask(restored, case.truth, case.text_mask),
  )

def write_case(case: SynthCase, out_dir: Union[str, Path]) -> Path:
  """truth.png, degraded.png, mask.png and spec.json in `out_dir`."""
  d = Path(out_dir)
  try:
    d.mkdir(parents=True, exist_ok=True)
  except OSError as e:
    raise IoError(f"cannot create {d}: {e}") from e
  save_image(case.truth, d / "truth.png")
  save_image(case.degraded, d / "degraded.png")
  save_mask(case.text_mask, d / "mask.png")
  try:
    (d / "spec.json").write_text(json.dumps(case.spec.model_dump(mode="json"), indent=2), encoding="utf-8")
  except OSError as e:
    raise IoError(f"cannot write {d / 'spec.json'}: {e}") from e
  return d
