import math
import os
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_serializer, field_validator, model_validator

from app.config import (
  CHANNEL_RULES,
  DEFAULT_CHALK_PALETTE,
  DEFAULT_LEVELS,
  DEFAULT_MAX_ITERATIONS,
  DEFAULT_MIN_NEIGHBORS,
  KERNEL_ID,
)

Point = Tuple[float, float]
RGB = Tuple[int, int, int]


def _inf_as_text(x: float):
  return "inf" if math.isinf(x) else x


# ----------------------------
# Masking
# ----------------------------
class ThresholdSpec(BaseModel):
  threshold: int = Field(ge=0, le=255)
  channel_rule: Literal["luma", "max-channel", "min-channel"] = "luma"

  @field_validator("channel_rule", mode="before")
  @classmethod
  def _alias(cls, v):
    return CHANNEL_RULES.get(str(v).strip().lower(), v)

class MaskStats(BaseModel):
  masked_count: int
  fraction: float


# ----------------------------
# Inpaint
# ----------------------------
class InpaintConfig(BaseModel):
  min_neighbors: int = Field(default=DEFAULT_MIN_NEIGHBORS, ge=1, le=8)
  max_iterations: int = Field(default=DEFAULT_MAX_ITERATIONS, ge=1)
  residual_policy: Literal["leave", "fill-nearest"] = "leave"
  neighborhood: Literal["8-connected"] = "8-connected"

class InpaintReport(BaseModel):
  iterations_run: int = 0
  filled_count: int = 0
  remaining_masked: int = 0
  initial_masked: int = 0
  nearest_filled: int = 0
  history: List[int] = []

  @model_validator(mode="after")
  def _conserved(self):
    if self.filled_count + self.remaining_masked != self.initial_masked:
      raise ValueError("filled_count + remaining_masked must equal initial_masked")
    return self


# ----------------------------
# Wavelet
# ----------------------------
class GainVector(BaseModel):
  gains: List[float] = Field(min_length=1)
  residual_gain: float = Field(default=1.0, ge=0.0)

  @field_validator("gains")
  @classmethod
  def _non_negative(cls, v):
    if any(g < 0 or not math.isfinite(g) for g in v):
      raise ValueError("gains must be finite and non-negative")
    return v

  @classmethod
  def unit(cls, levels: int) -> "GainVector":
    return cls(gains=[1.0] * levels, residual_gain=1.0)

  @classmethod
  def parse(cls, text: str, levels: int) -> "GainVector":
    """
    'g1,...,gJ' or 'g1,...,gJ,residual'.
      GainVector.parse("2,1,1", 3)   -> gains [2,1,1], residual 1
      GainVector.parse("2,1,1,0", 3) -> gains [2,1,1], residual 0
    """
    vals = [float(s) for s in text.split(",") if s.strip()]
    if len(vals) == levels:
      return cls(gains=vals)
    if len(vals) == levels + 1:
      return cls(gains=vals[:-1], residual_gain=vals[-1])
    raise ValueError(f"expected {levels} or {levels + 1} gains, got {len(vals)}")

  @property
  def levels(self) -> int:
    return len(self.gains)

class WaveletSettings(BaseModel):
  levels: int = Field(default=DEFAULT_LEVELS, ge=1)
  gains: Optional[List[float]] = None
  residual_gain: float = Field(default=1.0, ge=0.0)
  kernel_id: Literal["b3-spline"] = KERNEL_ID

  def gain_vector(self) -> GainVector:
    if self.gains is None:
      return GainVector(gains=[1.0] * self.levels, residual_gain=self.residual_gain)
    return GainVector(gains=self.gains, residual_gain=self.residual_gain)

  @model_validator(mode="after")
  def _match_levels(self):
    if self.gains is not None and len(self.gains) != self.levels:
      raise ValueError(f"gains has {len(self.gains)} entries for {self.levels} levels")
    return self


# ----------------------------
# Compose
# ----------------------------
class OverlayTransform(BaseModel):
  tx: float = 0.0
  ty: float = 0.0
  scale: float = Field(default=1.0, gt=0.0)
  rotation: float = 0.0
  alpha: float = Field(default=0.5, ge=0.0, le=1.0)

class LandmarkSet(BaseModel):
  left_eye: Point
  right_eye: Point
  nose_tip: Point
  mouth_center: Point

  @field_validator("left_eye", "right_eye", "nose_tip", "mouth_center")
  @classmethod
  def _finite(cls, v):
    if not all(math.isfinite(c) for c in v):
      raise ValueError("landmark coordinates must be finite")
    return v

  def points(self) -> Dict[str, Point]:
    return {
      "left_eye": self.left_eye,
      "right_eye": self.right_eye,
      "nose_tip": self.nose_tip,
      "mouth_center": self.mouth_center,
    }

  def transformed(self, scale: float = 1.0, rotation: float = 0.0,
      tx: float = 0.0, ty: float = 0.0) -> "LandmarkSet":
    """Similarity about the origin: p -> scale * R(rotation) p + t (degrees)."""
    th = math.radians(rotation)
    c, s = math.cos(th), math.sin(th)
    out = {}
    for k, (x, y) in self.points().items():
      out[k] = (scale * (c * x - s * y) + tx, scale * (s * x + c * y) + ty)
    return LandmarkSet(**out)

class LandmarkRatios(BaseModel):
  span_to_eye_nose: float
  eye_nose_to_nose_mouth: float

class PortraitComparison(BaseModel):
  ratios_a: LandmarkRatios
  ratios_b: LandmarkRatios
  span_to_eye_nose_diff: float
  eye_nose_to_nose_mouth_diff: float
  span_to_eye_nose_coincident: bool
  eye_nose_to_nose_mouth_coincident: bool
  tol: float
  coincidence_score: Optional[float] = None

  @property
  def coincident(self) -> bool:
    return self.span_to_eye_nose_coincident and self.eye_nose_to_nose_mouth_coincident


# ----------------------------
# Synth
# ----------------------------
class SynthSpec(BaseModel):
  width: int = Field(default=64, ge=1)
  height: int = Field(default=64, ge=1)
  seed: int = Field(default=0, ge=0, lt=2**64)
  chalk_palette: List[RGB] = Field(default_factory=lambda: list(DEFAULT_CHALK_PALETTE), min_length=1)
  stroke_count: int = Field(default=6, ge=0)
  stroke_darkness: int = Field(default=50, ge=0, le=90)
  stroke_width: int = Field(default=3, ge=1)
  coverage_target: float = Field(default=0.2, gt=0.0, le=0.5)

  @field_validator("chalk_palette")
  @classmethod
  def _channels(cls, v):
    for rgb in v:
      if any(c < 0 or c > 255 for c in rgb):
        raise ValueError(f"palette colour {rgb} outside [0,255]")
    return v

class Evaluation(BaseModel):
  psnr_db: float
  psnr_degraded_db: float
  mae_on_mask: float

  @field_serializer("psnr_db", "psnr_degraded_db")
  def _inf(self, v: float):
    return _inf_as_text(v)

  @property
  def improvement_db(self) -> float:
    return self.psnr_db - self.psnr_degraded_db


# ----------------------------
# Pipeline
# ----------------------------
class OverlayLayer(BaseModel):
  image: str
  transform: OverlayTransform = Field(default_factory=OverlayTransform)

class OverlaySettings(BaseModel):
  base: str
  transform: OverlayTransform
  # stacked above the restored image, bottom-up
  layers: List[OverlayLayer] = Field(default_factory=list)

class LandmarkSettings(BaseModel):
  a: str
  b: str
  tol: float = Field(gt=0.0)

class EvaluationSettings(BaseModel):
  truth: str
  text_mask: Optional[str] = None

class PipelineConfig(BaseModel):
  input: str
  output_dir: str
  threshold: ThresholdSpec
  inpaint: InpaintConfig = Field(default_factory=InpaintConfig)
  wavelet: WaveletSettings = Field(default_factory=WaveletSettings)
  image_format: Literal["png", "ppm"] = "png"
  overlay: Optional[OverlaySettings] = None
  landmarks: Optional[LandmarkSettings] = None
  evaluation: Optional[EvaluationSettings] = None

  def referenced_paths(self) -> List[str]:
    paths = [self.input, self.output_dir]
    if self.overlay:
      paths.append(self.overlay.base)
      paths += [layer.image for layer in self.overlay.layers]
    if self.landmarks:
      paths += [self.landmarks.a, self.landmarks.b]
    if self.evaluation:
      paths.append(self.evaluation.truth)
      if self.evaluation.text_mask:
        paths.append(self.evaluation.text_mask)
    return paths

  @model_validator(mode="after")
  def _distinct_paths(self):
    paths = self.referenced_paths()
    if len({os.path.normpath(p) for p in paths}) != len(paths):
      raise ValueError("input, output and auxiliary paths must all be distinct")
    return self
