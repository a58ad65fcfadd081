import argparse
import sys
from typing import List, Optional

from app.commands import benchmark, compare, inpaint, mask, overlay, pipeline, synth, wavelet
from app.config import EXIT_INTERNAL
from app.errors import ConfigError, RestoreError
from app.util.log import get_logger

log = get_logger("main", "MAIN")


class _Parser(argparse.ArgumentParser):
  # usage errors are config errors (exit 1), not argparse's exit 2 which means I/O here
  def error(self, message):
    raise ConfigError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
  parser = _Parser(prog="chalk-restore", description="Threshold, inpaint, wavelet-filter and compare drawing scans.")
  sub = parser.add_subparsers(dest="command", metavar="COMMAND")
  sub.required = True

  #register subcommands
  mask.register(sub)
  inpaint.register(sub)
  wavelet.register(sub)
  overlay.register(sub)
  compare.register(sub)
  synth.register(sub)
  pipeline.register(sub)
  benchmark.register(sub)
  return parser

def main(argv: Optional[List[str]] = None) -> int:
  try:
    args = build_parser().parse_args(argv)
    return args.handler(args)
  except RestoreError as e:
    log.error("%s: %s", type(e).__name__, e)
    return e.exit_code
  except Exception:
    log.exception("unexpected failure")
    return EXIT_INTERNAL


if __name__ == "__main__":
  sys.exit(main())
