# app/imageio.py
"""
PNG (8-bit) and binary PPM (P6, maxval 255) read/write for Raster and Mask.

Format is sniffed from the file's magic bytes on load and picked from the
extension on save (.ppm -> P6, anything else -> PNG).
"""
import os
import re
from pathlib import Path
from typing import Tuple, Union

import numpy as np
from PIL import Image, UnidentifiedImageError

from app.config import STACK_DUMP_OFFSET
from app.errors import CorruptFile, IoError, NotFound, UnsupportedFormat
from app.raster import Mask, PlaneF, Raster, quantize
from app.util.log import get_logger

log = get_logger("imageio", "IO")

PathLike = Union[str, os.PathLike]

PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"
# signature (8) + IHDR length (4) + "IHDR" (4) + width (4) + height (4) -> bit depth
_PNG_BITDEPTH_OFFSET = 24
_PPM_HEADER = re.compile(rb"\AP6(?:\s|#[^\n]*\n)+(\d+)(?:\s|#[^\n]*\n)+(\d+)(?:\s|#[^\n]*\n)+(\d+)\s")


def _read_bytes(path: Path) -> bytes:
  if not path.is_file():
    raise NotFound(f"no such image: {path}")
  try:
    return path.read_bytes()
  except OSError as e:
    raise IoError(f"cannot read {path}: {e}") from e

def _parse_ppm_header(data: bytes, path: Path) -> Tuple[int, int, int]:
  """Returns (width, height, offset of first sample)."""
  m = _PPM_HEADER.match(data)
  if not m:
    raise CorruptFile(f"malformed or truncated P6 header: {path}")
  width, height, maxval = (int(g) for g in m.groups())
  if maxval != 255:
    raise UnsupportedFormat(f"P6 maxval {maxval} not supported (only 255): {path}")
  if width < 1 or height < 1:
    raise CorruptFile(f"P6 declares {width}x{height}: {path}")
  return width, height, m.end()

def _decode_ppm(data: bytes, path: Path) -> Raster:
  width, height, offset = _parse_ppm_header(data, path)
  need = width * height * 3
  body = data[offset:offset + need]
  if len(body) < need:
    raise CorruptFile(f"P6 body truncated ({len(body)} of {need} bytes): {path}")
  return Raster(np.frombuffer(body, dtype=np.uint8).reshape(height, width, 3))

def _decode_png(data: bytes, path: Path) -> Raster:
  if len(data) <= _PNG_BITDEPTH_OFFSET:
    raise CorruptFile(f"truncated PNG: {path}")
  depth = data[_PNG_BITDEPTH_OFFSET]
  if depth > 8:
    raise UnsupportedFormat(f"{depth}-bit PNG not supported (8-bit only): {path}")
  try:
    with Image.open(path) as im:
      im.load()
      if "A" in im.getbands() or "transparency" in im.info:
        log.warning("alpha channel stripped from %s", path)
      rgb = np.asarray(im.convert("RGB"), dtype=np.uint8)
  except (UnidentifiedImageError, OSError, SyntaxError, ValueError) as e:
    raise CorruptFile(f"cannot decode PNG {path}: {e}") from e
  return Raster(rgb)


# ----------------------------
# Raster
# ----------------------------
def load_image(path: PathLike) -> Raster:
  path = Path(path)
  data = _read_bytes(path)
  if data.startswith(PNG_SIGNATURE):
    return _decode_png(data, path)
  if data.startswith(b"P6"):
    return _decode_ppm(data, path)
  if data[:2] in (b"P1", b"P2", b"P3", b"P4", b"P5"):
    raise UnsupportedFormat(f"only binary RGB PPM (P6) is supported: {path}")
  raise UnsupportedFormat(f"not a PNG or P6 file: {path}")

def save_image(raster: Raster, path: PathLike) -> None:
  path = Path(path)
  fmt = "PPM" if path.suffix.lower() == ".ppm" else "PNG"
  try:
    Image.fromarray(np.ascontiguousarray(raster.pixels)).save(path, format=fmt)
  except OSError as e:
    raise IoError(f"cannot write {path}: {e}") from e


# ----------------------------
# Mask (1-bit PNG, masked = black)
# ----------------------------
def save_mask(mask: Mask, path: PathLike) -> None:
  path = Path(path)
  img = Image.fromarray(np.where(mask.bits, 0, 255).astype(np.uint8)).convert("1", dither=Image.Dither.NONE)
  try:
    img.save(path, format="PNG")
  except OSError as e:
    raise IoError(f"cannot write {path}: {e}") from e

def load_mask(path: PathLike) -> Mask:
  path = Path(path)
  data = _read_bytes(path)
  if not data.startswith(PNG_SIGNATURE):
    raise UnsupportedFormat(f"mask must be a PNG: {path}")
  try:
    with Image.open(path) as im:
      gray = np.asarray(im.convert("L"), dtype=np.uint8)
  except (UnidentifiedImageError, OSError, SyntaxError, ValueError) as e:
    raise CorruptFile(f"cannot decode mask {path}: {e}") from e
  return Mask(gray < 128)


# ----------------------------
# Planes (inspection dumps)
# ----------------------------
def save_plane(plane: PlaneF, path: PathLike, offset: float = STACK_DUMP_OFFSET) -> None:
  """Grayscale PNG of plane + offset, rounded and clamped to 8 bits."""
  path = Path(path)
  try:
    Image.fromarray(quantize(plane.values + offset)).save(path, format="PNG")
  except OSError as e:
    raise IoError(f"cannot write {path}: {e}") from e
