import json
import math
from pathlib import Path
from typing import Any, Union

from app.errors import ConfigError, IoError, NotFound


def read_json(path: Union[str, Path]) -> Any:
  p = Path(path)
  if not p.is_file():
    raise NotFound(f"no such file: {p}")
  try:
    with open(p, "r", encoding="utf-8") as f:
      return json.load(f)
  except json.JSONDecodeError as e:
    raise ConfigError(f"invalid JSON in {p}: {e}") from e
  except OSError as e:
    raise IoError(f"cannot read {p}: {e}") from e

def _plain(x: Any) -> Any:
  # json.dumps would write Infinity, which is not JSON
  if isinstance(x, float) and math.isinf(x):
    return "inf" if x > 0 else "-inf"
  if isinstance(x, dict):
    return {k: _plain(v) for k, v in x.items()}
  if isinstance(x, (list, tuple)):
    return [_plain(v) for v in x]
  return x

def dumps(obj: Any) -> str:
  return json.dumps(_plain(obj), indent=2, sort_keys=True, ensure_ascii=False)

def write_json(path: Union[str, Path], obj: Any) -> None:
  p = Path(path)
  try:
    p.write_text(dumps(obj) + "\n", encoding="utf-8")
  except OSError as e:
    raise IoError(f"cannot write {p}: {e}") from e
