import os
from typing import Dict, List, Tuple

import yaml
from cachetools import LRUCache, cached
from pydantic import ValidationError

from app.config import CORPUS_PATH
from app.errors import ConfigError, InvalidSpec, NotFound
from app.models import SynthSpec
from app.services.synth import SynthCase, generate
from app.util.log import get_logger

log = get_logger("corpus.index", "CORPUS")


def _safe_read_yaml(path: str) -> dict:
  """
  Reads one YAML document into a dict.
  Missing file -> NotFound; unparsable or non-mapping -> ConfigError.
  """
  if not os.path.isfile(path):
    raise NotFound(f"corpus file not found: {path}")
  try:
    with open(path, "r", encoding="utf-8") as f:
      data = yaml.safe_load(f)
  except yaml.YAMLError as e:
    raise ConfigError(f"failed to parse corpus {path}: {e}") from e
  if not isinstance(data, dict):
    raise ConfigError(f"corpus {path} must be a mapping, got {type(data).__name__}")
  return data

@cached(cache=LRUCache(maxsize=8))
def load_corpus(path: str = CORPUS_PATH) -> Tuple[Tuple[str, SynthSpec], ...]:
  """[(name, spec), ...] in file order; per-case keys override `defaults`."""
  data = _safe_read_yaml(path)
  defaults: Dict = data.get("defaults") or {}
  out: List[Tuple[str, SynthSpec]] = []
  for i, entry in enumerate(data.get("cases") or []):
    if not isinstance(entry, dict):
      raise ConfigError(f"corpus case #{i} in {path} is not a mapping")
    fields = {**defaults, **entry}
    name = str(fields.pop("name", f"case{i:02d}"))
    try:
      out.append((name, SynthSpec.model_validate(fields)))
    except ValidationError as e:
      raise InvalidSpec(f"corpus case '{name}' in {path}: {e}") from e
  if not out:
    log.warning("corpus %s has no cases", path)
  return tuple(out)

@cached(cache=LRUCache(maxsize=32))
def corpus_case(name: str, path: str = CORPUS_PATH) -> SynthCase:
  for n, spec in load_corpus(path):
    if n == name:
      return generate(spec)
  raise ConfigError(f"no corpus case named '{name}' in {path}")

def corpus_names(path: str = CORPUS_PATH) -> List[str]:
  return [n for n, _ in load_corpus(path)]
