# app/commands/pipeline.py
from app.commands import emit
from app.config import EXIT_OK
from app.services.pipeline import load_pipeline_config, run_pipeline


def register(sub) -> None:
  p = sub.add_parser("pipeline", help="run original -> whiteout -> inpainted -> filtered from a JSON config")
  p.add_argument("--config", required=True, metavar="CONFIG.json")
  p.set_defaults(handler=run)

def run(args) -> int:
  cfg, base = load_pipeline_config(args.config)
  emit(run_pipeline(cfg, base))
  return EXIT_OK
