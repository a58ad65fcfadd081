import numpy as np
import pytest
from pydantic import ValidationError

from app.errors import DimensionMismatch
from app.models import InpaintConfig, InpaintReport, SynthSpec, ThresholdSpec
from app.raster import Mask, Raster
from app.services.inpaint import inpaint, inpaint_with_residual, restore
from app.services.synth import generate


def _grid(values):
  """3x3 of (v,0,0) pixels from a 3x3 list of red values."""
  px = np.zeros((3, 3, 3), dtype=np.uint8)
  px[:, :, 0] = values
  return Raster(px)

def test_all_neighbours_equal():
  r = _grid([[100] * 3, [100, 0, 100], [100] * 3])
  bits = np.zeros((3, 3), dtype=bool)
  bits[1, 1] = True
  out, report = inpaint(r, Mask(bits), InpaintConfig())
  assert out.pixels[1, 1].tolist() == [100, 0, 0]
  assert report.iterations_run == 1
  assert (report.filled_count, report.remaining_masked) == (1, 0)

def test_three_neighbour_rule():
  r = _grid([[10, 20, 30], [0, 0, 0], [0, 0, 0]])
  bits = np.array([[False] * 3, [True] * 3, [True] * 3])
  out, report = inpaint(r, Mask(bits), InpaintConfig(min_neighbors=3))
  assert out.pixels[1, 1].tolist() == [20, 0, 0]
  # only the centre sees three known pixels in the first sweep
  assert report.history[0] == 1

def test_two_neighbours_are_not_enough():
  r = _grid([[10, 20, 30], [40, 50, 60], [70, 80, 90]])
  bits = np.ones((3, 3), dtype=bool)
  bits[0, 0] = bits[0, 1] = False
  out, report = inpaint(r, Mask(bits), InpaintConfig(min_neighbors=3, residual_policy="leave"))
  assert out == r
  assert report.iterations_run == 0
  assert report.remaining_masked == 7
  assert report.filled_count == 0

def test_fill_nearest_takes_closest_known_pixel():
  r = _grid([[10, 20, 30], [40, 50, 60], [70, 80, 90]])
  bits = np.ones((3, 3), dtype=bool)
  bits[0, 0] = bits[0, 1] = False
  out, report = inpaint(r, Mask(bits), InpaintConfig(residual_policy="fill-nearest"))
  assert report.remaining_masked == 0
  assert report.nearest_filled == 7
  assert out.pixels[1, 1, 0] == 20
  assert out.pixels[1, 0, 0] == 10
  # (1,2): (0,1) at sqrt(2) beats (0,0) at sqrt(5)
  assert out.pixels[1, 2, 0] == 20

def test_strip_fills_inward():
  px = np.zeros((1, 5, 3), dtype=np.uint8)
  px[0, 4] = (100, 100, 100)
  bits = np.array([[False, True, True, True, False]])
  out, report = inpaint(Raster(px), Mask(bits), InpaintConfig(min_neighbors=1))
  assert report.iterations_run == 2
  assert report.history == [2, 1]
  assert out.pixels[0, :, 0].tolist() == [0, 0, 50, 100, 100]

def test_max_iterations_caps_sweeps():
  px = np.zeros((1, 9, 3), dtype=np.uint8)
  bits = np.array([[False] + [True] * 7 + [False]])
  _, report = inpaint(Raster(px), Mask(bits), InpaintConfig(min_neighbors=1, max_iterations=2))
  assert report.iterations_run == 2
  assert report.filled_count == 4
  assert report.remaining_masked == 3

def test_mean_rounds_half_up():
  px = np.zeros((1, 3, 3), dtype=np.uint8)
  px[0, 0] = (1, 2, 3)
  px[0, 2] = (2, 3, 3)
  bits = np.array([[False, True, False]])
  out, _ = inpaint(Raster(px), Mask(bits), InpaintConfig(min_neighbors=2))
  assert out.pixels[0, 1].tolist() == [2, 3, 3]

def test_empty_mask_is_identity(random_raster):
  r = random_raster(6, 5)
  out, report = inpaint(r, Mask.empty(6, 5), InpaintConfig())
  assert out == r
  assert report.iterations_run == 0

def test_result_does_not_depend_on_orientation(random_raster, rng):
  r = random_raster(12, 10)
  bits = rng.random((10, 12)) < 0.4
  out, _ = inpaint(r, Mask(bits), InpaintConfig())
  flipped, _ = inpaint(Raster(r.pixels[::-1, ::-1]), Mask(bits[::-1, ::-1]), InpaintConfig())
  assert np.array_equal(flipped.pixels[::-1, ::-1], out.pixels)
  out_t, _ = inpaint(Raster(r.pixels.transpose(1, 0, 2)), Mask(bits.T), InpaintConfig())
  assert np.array_equal(out_t.pixels.transpose(1, 0, 2), out.pixels)

def test_residual_mask_matches_report(random_raster):
  bits = np.ones((4, 4), dtype=bool)
  bits[0, 0] = False
  _, report, residual = inpaint_with_residual(random_raster(4, 4), Mask(bits), InpaintConfig())
  assert residual.count() == report.remaining_masked == 15

def test_size_mismatch(random_raster):
  with pytest.raises(DimensionMismatch):
    inpaint(random_raster(3, 3), Mask.empty(2, 3), InpaintConfig())

def test_config_bounds():
  with pytest.raises(ValidationError):
    InpaintConfig(min_neighbors=9)
  with pytest.raises(ValidationError):
    InpaintConfig(max_iterations=0)
  with pytest.raises(ValidationError):
    InpaintConfig(neighborhood="4-connected")

def test_report_must_conserve_pixels():
  with pytest.raises(ValidationError):
    InpaintReport(filled_count=3, remaining_masked=1, initial_masked=5)

def test_restore_without_dark_pixels():
  r = Raster.filled(4, 4, (200, 150, 120))
  out, mask, report = restore(r, ThresholdSpec(threshold=50), InpaintConfig())
  assert out == r
  assert mask.count() == 0
  assert report.iterations_run == 0

def test_restore_all_black():
  r = Raster.filled(5, 3, (0, 0, 0))
  out, mask, report = restore(r, ThresholdSpec(threshold=1), InpaintConfig())
  assert mask.count() == 15
  assert report.remaining_masked == 15
  assert out == r

def test_unmasked_pixels_never_change():
  for seed in range(100):
    case = generate(SynthSpec(width=24, height=24, seed=seed, stroke_count=3,
                              stroke_width=2, coverage_target=0.2, stroke_darkness=seed % 91))
    out, mask, _ = restore(case.degraded, case.threshold_spec(), InpaintConfig(residual_policy="fill-nearest"))
    keep = ~mask.bits
    assert np.array_equal(out.pixels[keep], case.degraded.pixels[keep])

def _random_masks(rng, n=20, w=15, h=11, density=0.7):
  for _ in range(n):
    bits = rng.random((h, w)) < density
    bits[rng.integers(h), rng.integers(w)] = False
    yield Mask(bits)

def test_single_neighbour_rule_fills_everything(random_raster, rng):
  # every masked blob touches a known pixel when at least one pixel is known
  for m in _random_masks(rng):
    _, report = inpaint(random_raster(15, 11), m, InpaintConfig(min_neighbors=1))
    assert report.remaining_masked == 0
    assert report.filled_count == m.count()

def test_rerun_on_residual_changes_nothing(random_raster, rng):
  for min_neighbors in (1, 3, 5):
    for m in _random_masks(rng, n=8):
      cfg = InpaintConfig(min_neighbors=min_neighbors)
      out, _, residual = inpaint_with_residual(random_raster(15, 11), m, cfg)
      again, report = inpaint(out, residual, cfg)
      assert again == out
      assert report.filled_count == 0

def test_progress_is_monotone_and_bounded(random_raster, rng):
  for min_neighbors in (1, 2, 3, 4):
    for m in _random_masks(rng, n=8):
      _, report = inpaint(random_raster(15, 11), m, InpaintConfig(min_neighbors=min_neighbors))
      assert all(n > 0 for n in report.history)
      remaining = np.cumsum([m.count()] + [-n for n in report.history])
      assert np.all(np.diff(remaining) < 0)
      assert remaining[-1] == report.remaining_masked
      assert report.iterations_run <= report.initial_masked + 1
