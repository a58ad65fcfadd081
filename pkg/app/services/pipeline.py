# app/services/pipeline.py
"""
The four-panel restoration run, driven by one PipelineConfig:

  01_original -> 02_whiteout (dark text painted white) -> 03_inpainted -> 04_filtered

plus 05_overlay, landmark comparison and ground-truth scoring when the config
asks for them. Everything is computed and every input read before the first
file is written; a failed write removes whatever this run already wrote.
"""
import statistics
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import ValidationError

from app.config import CORPUS_PATH, STAGES
from app.corpus.index import corpus_case, corpus_names
from app.errors import ConfigError, IoError, RestoreError
from app.imageio import load_image, load_mask, save_image, save_mask
from app.models import Evaluation, InpaintConfig, LandmarkSet, PipelineConfig
from app.raster import Raster
from app.services.compose import compare_portraits, landmark_offsets, landmarks_in_overlay, overlay_layers, warp
from app.services.inpaint import inpaint, restore
from app.services.masking import build_mask, mask_stats, whiteout
from app.services.metrics import mae_on_mask, psnr
from app.services.synth import evaluate
from app.services.wavelet import wavelet_filter_rgb
from app.util.jsonio import read_json, write_json
from app.util.log import get_logger

log = get_logger("pipeline", "PIPE")

PathLike = Union[str, Path]


# ----------------------------
# Config loading
# ----------------------------
def load_pipeline_config(path: PathLike) -> Tuple[PipelineConfig, Path]:
  """Parsed config plus the directory its relative paths resolve against."""
  data = read_json(path)
  try:
    cfg = PipelineConfig.model_validate(data)
  except ValidationError as e:
    raise ConfigError(f"invalid pipeline config {path}: {e}") from e
  return cfg, Path(path).resolve().parent

def load_landmarks(path: PathLike) -> LandmarkSet:
  data = read_json(path)
  try:
    return LandmarkSet.model_validate(data)
  except ValidationError as e:
    raise ConfigError(f"invalid landmarks file {path}: {e}") from e


# ----------------------------
# Run
# ----------------------------
class _Timer:
  def __init__(self):
    self.timings: Dict[str, float] = {}
    self._t = time.perf_counter()

  def lap(self, stage: str) -> None:
    now = time.perf_counter()
    self.timings[stage] = round(now - self._t, 6)
    self._t = now

def _evaluation(truth: Raster, degraded: Raster, restored: Raster, text_mask) -> Evaluation:
  return Evaluation(
    psnr_db=psnr(restored, truth),
    psnr_degraded_db=psnr(degraded, truth),
    mae_on_mask=mae_on_mask(restored, truth, text_mask),
  )

def _write_all(out_dir: Path, images: List[Tuple[str, Raster]], mask, report: Dict[str, Any], ext: str) -> List[str]:
  created_dir = not out_dir.exists()
  written: List[Path] = []
  try:
    out_dir.mkdir(parents=True, exist_ok=True)
    for stem, img in images:
      p = out_dir / f"{stem}.{ext}"
      save_image(img, p)
      written.append(p)
    p = out_dir / "mask.png"
    save_mask(mask, p)
    written.append(p)
    report["artifacts"] = [w.name for w in written] + ["report.json"]
    p = out_dir / "report.json"
    write_json(p, report)
    written.append(p)
  except (RestoreError, OSError) as e:
    for w in written:
      w.unlink(missing_ok=True)
    if created_dir and out_dir.exists() and not any(out_dir.iterdir()):
      out_dir.rmdir()
    if isinstance(e, RestoreError):
      raise
    raise IoError(f"cannot write pipeline outputs to {out_dir}: {e}") from e
  return [w.name for w in written]

def run_pipeline(config: PipelineConfig, base_dir: Optional[PathLike] = None) -> Dict[str, Any]:
  base = Path(base_dir) if base_dir is not None else Path(".")
  rp = lambda p: base / p
  timer = _Timer()

  # every read happens up front so a missing file leaves nothing behind
  original = load_image(rp(config.input))
  overlay_base = load_image(rp(config.overlay.base)) if config.overlay else None
  extra_layers = []
  if config.overlay:
    extra_layers = [(load_image(rp(layer.image)), layer.transform) for layer in config.overlay.layers]
  la = load_landmarks(rp(config.landmarks.a)) if config.landmarks else None
  lb = load_landmarks(rp(config.landmarks.b)) if config.landmarks else None
  truth = load_image(rp(config.evaluation.truth)) if config.evaluation else None
  text_mask = None
  if config.evaluation and config.evaluation.text_mask:
    text_mask = load_mask(rp(config.evaluation.text_mask))
  timer.lap("load")

  mask = build_mask(original, config.threshold)
  stats = mask_stats(mask)
  white = whiteout(original, mask)
  timer.lap("mask")

  inpainted, inp_report = inpaint(original, mask, config.inpaint)
  timer.lap("inpaint")

  gains = config.wavelet.gain_vector()
  filtered = wavelet_filter_rgb(inpainted, config.wavelet.levels, gains)
  timer.lap("wavelet")

  images = [
    (STAGES["original"], original),
    (STAGES["whiteout"], white),
    (STAGES["inpainted"], inpainted),
    (STAGES["filtered"], filtered),
  ]
  report: Dict[str, Any] = {
    "input": config.input,
    "threshold": config.threshold.model_dump(),
    "mask": stats.model_dump(),
    "inpaint": inp_report.model_dump(),
    "wavelet": {
      "levels": config.wavelet.levels,
      "gains": gains.gains,
      "residual_gain": gains.residual_gain,
      "kernel_id": config.wavelet.kernel_id,
    },
  }

  placed = None
  if config.overlay:
    t = config.overlay.transform
    placed = warp(filtered, t, overlay_base.width, overlay_base.height)
    images.append((STAGES["overlay"], overlay_layers(overlay_base, [(filtered, t)] + extra_layers)))
    report["overlay"] = config.overlay.model_dump()
    timer.lap("overlay")

  if config.landmarks:
    # a marks the overlay base (reference portrait), b the restored image
    cmp = compare_portraits(overlay_base, la, placed, lb, config.landmarks.tol)
    report["comparison"] = cmp.model_dump()
    if config.overlay:
      lb_placed = landmarks_in_overlay(lb, config.overlay.transform, filtered.width, filtered.height)
      report["comparison"]["landmark_offsets_px"] = dict(zip(la.points(), landmark_offsets(la, lb_placed)))

  if config.evaluation:
    tm = text_mask if text_mask is not None else mask
    ev_inp = _evaluation(truth, original, inpainted, tm)
    ev_fil = _evaluation(truth, original, filtered, tm)
    report["evaluation"] = {
      "inpainted": ev_inp.model_dump(mode="json"),
      "filtered": ev_fil.model_dump(mode="json"),
      "psnr_improvement_db": ev_inp.improvement_db,
    }
    timer.lap("evaluate")

  report["timings"] = timer.timings
  ext = config.image_format
  out_dir = rp(config.output_dir)
  _write_all(out_dir, images, mask, report, ext)
  log.info("pipeline: %d masked (%.3f), %d filled, %d left -> %s",
           stats.masked_count, stats.fraction, inp_report.filled_count, inp_report.remaining_masked, out_dir)
  return report


# ----------------------------
# Frozen-corpus benchmark
# ----------------------------
def run_benchmark(corpus_path: str = CORPUS_PATH, config: Optional[InpaintConfig] = None) -> Dict[str, Any]:
  """Restore every corpus case with its known threshold; per-case scores and the median gain."""
  config = config or InpaintConfig()
  rows = []
  for name in corpus_names(corpus_path):
    case = corpus_case(name, corpus_path)
    spec = case.spec
    restored, mask, report = restore(case.degraded, case.threshold_spec(), config)
    ev = evaluate(case, restored)
    rows.append({
      "name": name,
      "seed": spec.seed,
      "coverage": mask_stats(case.text_mask).fraction,
      "threshold": case.known_threshold,
      "iterations": report.iterations_run,
      "remaining_masked": report.remaining_masked,
      **ev.model_dump(mode="json"),
      "improvement_db": ev.improvement_db,
    })
  gains = [r["improvement_db"] for r in rows]
  summary = {
    "corpus": corpus_path,
    "inpaint": config.model_dump(),
    "cases": rows,
    "median_improvement_db": statistics.median(gains) if gains else None,
    "min_improvement_db": min(gains) if gains else None,
  }
  log.info("benchmark: %d cases, median gain %s dB", len(rows), summary["median_improvement_db"])
  return summary
