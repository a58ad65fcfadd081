import json

import pytest

from app.config import EXIT_BAD_CONFIG, EXIT_IO, EXIT_OK
from app.imageio import load_image, load_mask
from app.main import main


def _stdout_json(capsys):
  return json.loads(capsys.readouterr().out)


def test_mask_command(case_dir, small_case, tmp_path, capsys):
  code = main(["mask", "--threshold", str(small_case.known_threshold), "--rule", "luma",
               str(case_dir / "degraded.png"), str(tmp_path / "m.png"), str(tmp_path / "w.png")])
  assert code == EXIT_OK
  assert load_mask(tmp_path / "m.png") == small_case.text_mask
  assert _stdout_json(capsys)["masked_count"] == small_case.text_mask.count()

def test_mask_then_inpaint_matches_pipeline(case_dir, small_case, tmp_path, write_json_file, capsys):
  t = str(small_case.known_threshold)
  assert main(["mask", "--threshold", t, str(case_dir / "degraded.png"),
               str(tmp_path / "m.png"), str(tmp_path / "w.png")]) == EXIT_OK
  assert main(["inpaint", "--min-neighbors", "3", str(case_dir / "degraded.png"), str(tmp_path / "m.png"),
               str(tmp_path / "i.png"), "--report", str(tmp_path / "r.json")]) == EXIT_OK
  cfg = write_json_file("run.json", {
    "input": "case/degraded.png",
    "output_dir": "out",
    "threshold": {"threshold": int(t)},
    "inpaint": {"min_neighbors": 3},
  })
  assert main(["pipeline", "--config", str(cfg)]) == EXIT_OK
  assert load_image(tmp_path / "i.png") == load_image(tmp_path / "out" / "03_inpainted.png")
  report = json.loads((tmp_path / "r.json").read_text())
  assert report["initial_masked"] == small_case.text_mask.count()

def test_wavelet_command(case_dir, tmp_path, capsys):
  code = main(["wavelet", "--levels", "2", "--gains", "1,1,1", "--dump-stack", str(tmp_path / "stack"),
               str(case_dir / "truth.png"), str(tmp_path / "f.png")])
  assert code == EXIT_OK
  assert load_image(tmp_path / "f.png") == load_image(case_dir / "truth.png")
  assert len(_stdout_json(capsys)["stack"]) == 9

def test_wavelet_gain_count(case_dir, tmp_path):
  code = main(["wavelet", "--levels", "3", "--gains", "1,1", str(case_dir / "truth.png"), str(tmp_path / "f.png")])
  assert code == EXIT_BAD_CONFIG

def test_overlay_command(case_dir, tmp_path):
  code = main(["overlay", "--tx", "-2", "--ty", "1.5", "--scale", "0.8", "--rot", "10", "--alpha", "0.4",
               str(case_dir / "truth.png"), str(case_dir / "degraded.png"), str(tmp_path / "o.png")])
  assert code == EXIT_OK
  assert load_image(tmp_path / "o.png").size == (32, 32)

def test_overlay_alpha_out_of_range(case_dir, tmp_path):
  code = main(["overlay", "--tx", "0", "--ty", "0", "--scale", "1", "--rot", "0", "--alpha", "2",
               str(case_dir / "truth.png"), str(case_dir / "degraded.png"), str(tmp_path / "o.png")])
  assert code == EXIT_BAD_CONFIG

def test_compare_command(write_json_file, case_dir, capsys):
  a = write_json_file("a.json", {"left_eye": [0, 0], "right_eye": [4, 0], "nose_tip": [2, 3], "mouth_center": [2, 6]})
  b = write_json_file("b.json", {"left_eye": [0, 0], "right_eye": [8, 0], "nose_tip": [4, 6], "mouth_center": [4, 12]})
  code = main(["compare", "--landmarks-a", str(a), "--landmarks-b", str(b), "--tol", "1e-6",
               "--images", str(case_dir / "truth.png"), str(case_dir / "truth.png"),
               "--region", str(case_dir / "mask.png")])
  assert code == EXIT_OK
  out = _stdout_json(capsys)
  assert out["span_to_eye_nose_coincident"] and out["eye_nose_to_nose_mouth_coincident"]
  assert out["coincidence_score"] == 0.0

def test_compare_degenerate(write_json_file):
  a = write_json_file("a.json", {"left_eye": [0, 0], "right_eye": [0, 0], "nose_tip": [2, 3], "mouth_center": [2, 6]})
  assert main(["compare", "--landmarks-a", str(a), "--landmarks-b", str(a), "--tol", "0.1"]) == EXIT_BAD_CONFIG

def test_synth_command(write_json_file, tmp_path, capsys):
  spec = write_json_file("spec.json", {"width": 24, "height": 20, "seed": 5, "stroke_count": 2})
  assert main(["synth", "--spec", str(spec), str(tmp_path / "case")]) == EXIT_OK
  assert load_image(tmp_path / "case" / "truth.png").size == (24, 20)
  assert _stdout_json(capsys)["known_threshold"] == 51

def test_benchmark_command(tmp_path, capsys):
  corpus = tmp_path / "mini.yaml"
  corpus.write_text(
    "version: 1\n"
    "defaults: {width: 24, height: 24}\n"
    "cases:\n"
    "  - {name: a, seed: 1, stroke_count: 2, coverage_target: 0.1}\n"
    "  - {name: b, seed: 2, stroke_count: 3, coverage_target: 0.2}\n"
  )
  code = main(["benchmark", "--corpus", str(corpus), "--out", str(tmp_path / "bench.json")])
  assert code == EXIT_OK
  summary = json.loads((tmp_path / "bench.json").read_text())
  assert [c["name"] for c in summary["cases"]] == ["a", "b"]
  assert _stdout_json(capsys)["median_improvement_db"] == summary["median_improvement_db"]

@pytest.mark.parametrize("argv", [
  ["mask", "--threshold", "300", "a.png", "b.png", "c.png"],
  ["mask", "a.png"],
  ["inpaint", "--residual", "blur", "a.png", "m.png", "o.png"],
  ["frobnicate"],
  [],
])
def test_usage_errors_exit_one(argv):
  assert main(argv) == EXIT_BAD_CONFIG

def test_missing_input_exits_two(tmp_path):
  code = main(["mask", "--threshold", "10", str(tmp_path / "none.png"), str(tmp_path / "m.png"), str(tmp_path / "w.png")])
  assert code == EXIT_IO

def test_pipeline_missing_config(tmp_path):
  assert main(["pipeline", "--config", str(tmp_path / "nope.json")]) == EXIT_IO

def test_help_exits_cleanly(capsys):
  with pytest.raises(SystemExit) as e:
    main(["--help"])
  assert e.value.code == 0
  assert "pipeline" in capsys.readouterr().out
