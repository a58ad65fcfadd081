import json

import numpy as np
import pytest

from app.models import SynthSpec
from app.raster import Mask, Raster
from app.services.synth import generate, write_case


@pytest.fixture
def rng():
  return np.random.default_rng(20240611)

@pytest.fixture
def raster():
  """raster([[(r,g,b), ...], ...]) -> Raster"""
  def make(rows):
    return Raster(np.array(rows, dtype=np.uint8))
  return make

@pytest.fixture
def mask():
  def make(rows):
    return Mask(np.array(rows, dtype=bool))
  return make

@pytest.fixture
def random_raster(rng):
  def make(w, h):
    return Raster(rng.integers(0, 256, size=(h, w, 3), dtype=np.uint8))
  return make

@pytest.fixture
def small_case():
  return generate(SynthSpec(width=32, height=32, seed=7, stroke_count=3, coverage_target=0.15))

@pytest.fixture
def case_dir(tmp_path, small_case):
  return write_case(small_case, tmp_path / "case")

@pytest.fixture
def write_json_file(tmp_path):
  def write(name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj), encoding="utf-8")
    return p
  return write
