# app/commands/benchmark.py
from app.commands import emit
from app.config import CORPUS_PATH, EXIT_OK
from app.services.pipeline import run_benchmark
from app.util.jsonio import write_json


def register(sub) -> None:
  p = sub.add_parser("benchmark", help="restore every frozen corpus case and report PSNR gains")
  p.add_argument("--corpus", default=CORPUS_PATH, metavar="YAML")
  p.add_argument("--out", metavar="JSON")
  p.set_defaults(handler=run)

def run(args) -> int:
  summary = run_benchmark(args.corpus)
  if args.out:
    write_json(args.out, summary)
  emit(summary)
  return EXIT_OK
