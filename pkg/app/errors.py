# app/errors.py
from app.config import EXIT_BAD_CONFIG, EXIT_IO, EXIT_INTERNAL


class RestoreError(Exception):
  exit_code = EXIT_INTERNAL


# ----------------------------
# Bad input / config (exit 1)
# ----------------------------
class ConfigError(RestoreError):
  exit_code = EXIT_BAD_CONFIG

class DimensionMismatch(ConfigError):
  pass

class InvalidLevels(ConfigError):
  pass

class AlphaOutOfRange(ConfigError):
  pass

class DegenerateLandmarks(ConfigError):
  pass

class EmptyRegion(ConfigError):
  pass

class InvalidSpec(ConfigError):
  pass

class InvalidTolerance(ConfigError):
  pass


# ----------------------------
# Files (exit 2)
# ----------------------------
class ImageIOError(RestoreError):
  exit_code = EXIT_IO

class NotFound(ImageIOError):
  pass

class UnsupportedFormat(ImageIOError):
  pass

class CorruptFile(ImageIOError):
  pass

class IoError(ImageIOError):
  pass


# ----------------------------
# Should never happen (exit 3)
# ----------------------------
class InvariantViolation(RestoreError):
  exit_code = EXIT_INTERNAL
