import sys
from typing import Any, Type, TypeVar

from pydantic import BaseModel, ValidationError

from app.errors import ConfigError
from app.util.jsonio import dumps

M = TypeVar("M", bound=BaseModel)


def validated(model: Type[M], **fields: Any) -> M:
  """Build a pydantic model from CLI flags; bad values become exit-1 ConfigError."""
  try:
    return model(**fields)
  except ValidationError as e:
    raise ConfigError(f"invalid {model.__name__}: {e}") from e

def emit(payload: Any) -> None:
  """Results go to stdout as JSON; logs stay on stderr."""
  if isinstance(payload, BaseModel):
    payload = payload.model_dump(mode="json")
  sys.stdout.write(dumps(payload) + "\n")
