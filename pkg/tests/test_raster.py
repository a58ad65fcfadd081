import numpy as np
import pytest

from app.errors import DimensionMismatch, InvariantViolation
from app.raster import Mask, PlaneF, Raster, from_planes, quantize, require_same_size, round_half_away, to_planes


def test_to_planes_splits_channels(raster):
  r, g, b = to_planes(raster([[(255, 0, 0)]]))
  assert (r.values[0, 0], g.values[0, 0], b.values[0, 0]) == (255.0, 0.0, 0.0)

def test_to_planes_zero_raster():
  for p in to_planes(Raster.filled(4, 3, (0, 0, 0))):
    assert p.size == (4, 3)
    assert not p.values.any()

def test_from_planes_rounds_half_away_and_clamps():
  r = PlaneF(np.array([[127.5]]))
  g = PlaneF(np.array([[-3.0]]))
  b = PlaneF(np.array([[300.0]]))
  assert from_planes(r, g, b).pixels[0, 0].tolist() == [128, 0, 255]

def test_from_planes_size_mismatch():
  a = PlaneF(np.zeros((2, 2)))
  with pytest.raises(DimensionMismatch):
    from_planes(a, a, PlaneF(np.zeros((2, 3))))

def test_round_half_away_from_zero():
  assert round_half_away(np.array([0.5, 1.5, 2.5, -0.5, -2.5])).tolist() == [1, 2, 3, -1, -3]
  assert quantize(np.array([254.5, 255.5, -0.4])).tolist() == [255, 255, 0]

def test_raster_is_read_only(raster):
  r = raster([[(1, 2, 3)]])
  with pytest.raises(ValueError):
    r.pixels[0, 0, 0] = 9

def test_raster_copies_its_input():
  src = np.zeros((1, 1, 3), dtype=np.uint8)
  r = Raster(src)
  src[0, 0, 0] = 200
  assert r.pixels[0, 0, 0] == 0

def test_raster_shape_checks():
  with pytest.raises(DimensionMismatch):
    Raster(np.zeros((2, 2), dtype=np.uint8))
  with pytest.raises(DimensionMismatch):
    Raster(np.zeros((0, 2, 3), dtype=np.uint8))
  with pytest.raises(InvariantViolation):
    Raster(np.full((1, 1, 3), 256, dtype=np.int64))

def test_plane_rejects_non_finite():
  with pytest.raises(InvariantViolation):
    PlaneF(np.array([[0.0, np.nan]]))

def test_equality_is_by_value(raster):
  assert raster([[(1, 2, 3)]]) == raster([[(1, 2, 3)]])
  assert raster([[(1, 2, 3)]]) != raster([[(1, 2, 4)]])
  assert Mask.full(2, 2) == Mask(np.ones((2, 2)))
  assert Mask.empty(3, 2).count() == 0

def test_require_same_size():
  require_same_size(Raster.filled(2, 3, (0, 0, 0)), Mask.empty(2, 3))
  with pytest.raises(DimensionMismatch):
    require_same_size(Raster.filled(2, 3, (0, 0, 0)), Mask.empty(3, 2))
