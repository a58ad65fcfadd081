# app/raster.py
"""
Image values shared by every stage.

  Raster  (h, w, 3) uint8, the 8-bit RGB currency passed between stages
  Mask    (h, w) bool, True = pixel to be reconstructed
  PlaneF  (h, w) float64, working precision for filter math

All three are read-only after construction; operations return new values.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from app.errors import DimensionMismatch, InvariantViolation


def _frozen(a: np.ndarray) -> np.ndarray:
  a = np.array(a, copy=True)
  a.setflags(write=False)
  return a

def round_half_away(x: np.ndarray) -> np.ndarray:
  """127.5 -> 128, -0.5 -> -1. np.round would give banker's rounding."""
  x = np.asarray(x, dtype=np.float64)
  return np.sign(x) * np.floor(np.abs(x) + 0.5)

def quantize(x: np.ndarray) -> np.ndarray:
  """Round half-away-from-zero, then clamp to [0,255]."""
  return np.clip(round_half_away(x), 0, 255).astype(np.uint8)


# ----------------------------
# Raster
# ----------------------------
@dataclass(frozen=True, eq=False)
class Raster:
  pixels: np.ndarray

  def __post_init__(self):
    p = np.asarray(self.pixels)
    if p.ndim != 3 or p.shape[2] != 3:
      raise DimensionMismatch(f"raster must be (h, w, 3), got {p.shape}")
    if p.shape[0] < 1 or p.shape[1] < 1:
      raise DimensionMismatch(f"raster must be at least 1x1, got {p.shape[1]}x{p.shape[0]}")
    if p.dtype != np.uint8:
      if not np.issubdtype(p.dtype, np.integer):
        raise InvariantViolation(f"raster channels must be integers, got {p.dtype}")
      if p.min() < 0 or p.max() > 255:
        raise InvariantViolation("raster channel outside [0,255]")
      p = p.astype(np.uint8)
    object.__setattr__(self, "pixels", _frozen(p))

  @classmethod
  def filled(cls, width: int, height: int, rgb: Tuple[int, int, int]) -> "Raster":
    return cls(np.broadcast_to(np.asarray(rgb, dtype=np.uint8), (height, width, 3)))

  @property
  def width(self) -> int:
    return self.pixels.shape[1]

  @property
  def height(self) -> int:
    return self.pixels.shape[0]

  @property
  def size(self) -> Tuple[int, int]:
    return (self.width, self.height)

  def __eq__(self, other):
    if not isinstance(other, Raster):
      return NotImplemented
    return np.array_equal(self.pixels, other.pixels)

  __hash__ = None

  def __repr__(self) -> str:
    return f"Raster({self.width}x{self.height})"


# ----------------------------
# Mask
# ----------------------------
@dataclass(frozen=True, eq=False)
class Mask:
  bits: np.ndarray

  def __post_init__(self):
    b = np.asarray(self.bits)
    if b.ndim != 2:
      raise DimensionMismatch(f"mask must be (h, w), got {b.shape}")
    object.__setattr__(self, "bits", _frozen(b.astype(bool)))

  @classmethod
  def empty(cls, width: int, height: int) -> "Mask":
    return cls(np.zeros((height, width), dtype=bool))

  @classmethod
  def full(cls, width: int, height: int) -> "Mask":
    return cls(np.ones((height, width), dtype=bool))

  @property
  def width(self) -> int:
    return self.bits.shape[1]

  @property
  def height(self) -> int:
    return self.bits.shape[0]

  @property
  def size(self) -> Tuple[int, int]:
    return (self.width, self.height)

  def count(self) -> int:
    return int(np.count_nonzero(self.bits))

  def __eq__(self, other):
    if not isinstance(other, Mask):
      return NotImplemented
    return np.array_equal(self.bits, other.bits)

  __hash__ = None

  def __repr__(self) -> str:
    return f"Mask({self.width}x{self.height}, {self.count()} masked)"


# ----------------------------
# PlaneF
# ----------------------------
@dataclass(frozen=True, eq=False)
class PlaneF:
  values: np.ndarray

  def __post_init__(self):
    v = np.asarray(self.values, dtype=np.float64)
    if v.ndim != 2:
      raise DimensionMismatch(f"plane must be (h, w), got {v.shape}")
    if not np.all(np.isfinite(v)):
      raise InvariantViolation("plane holds NaN or Inf")
    object.__setattr__(self, "values", _frozen(v))

  @property
  def width(self) -> int:
    return self.values.shape[1]

  @property
  def height(self) -> int:
    return self.values.shape[0]

  @property
  def size(self) -> Tuple[int, int]:
    return (self.width, self.height)

  def __eq__(self, other):
    if not isinstance(other, PlaneF):
      return NotImplemented
    return np.array_equal(self.values, other.values)

  __hash__ = None

  def __repr__(self) -> str:
    return f"PlaneF({self.width}x{self.height})"


def require_same_size(*items) -> None:
  sizes = {it.size for it in items}
  if len(sizes) > 1:
    raise DimensionMismatch(f"dimension mismatch: {sorted(sizes)}")


# ----------------------------
# Planes <-> raster
# ----------------------------
def to_planes(raster: Raster) -> Tuple[PlaneF, PlaneF, PlaneF]:
  p = raster.pixels.astype(np.float64)
  return PlaneF(p[:, :, 0]), PlaneF(p[:, :, 1]), PlaneF(p[:, :, 2])

def from_planes(r: PlaneF, g: PlaneF, b: PlaneF) -> Raster:
  require_same_size(r, g, b)
  stacked = np.stack([r.values, g.values, b.values], axis=-1)
  return Raster(quantize(stacked))
