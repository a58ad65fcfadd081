import logging

from app.config import LOG_LEVEL


def get_logger(name: str, tag: str) -> logging.Logger:
  """One stderr handler per named logger, tagged like `[INP] INFO: ...`."""
  log = logging.getLogger(name)
  if not log.handlers:
    h = logging.StreamHandler()
    h.setFormatter(logging.Formatter(f"[{tag}] %(levelname)s: %(message)s"))
    log.addHandler(h)
    log.setLevel(LOG_LEVEL)
  return log
