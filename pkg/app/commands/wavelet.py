# app/commands/wavelet.py
from app.commands import emit
from app.config import EXIT_OK
from app.errors import ConfigError
from app.imageio import load_image, save_image
from app.models import GainVector
from app.raster import to_planes
from app.services.wavelet import decompose, dump_stack, wavelet_filter_rgb


def register(sub) -> None:
  p = sub.add_parser("wavelet", help="per-scale gain adjustment with the B3 à-trous transform")
  p.add_argument("--levels", type=int, required=True)
  p.add_argument("--gains", required=True, help="g1,...,gJ[,residual] (finest scale first)")
  p.add_argument("--dump-stack", metavar="DIR", help="also write every plane as PNG (value+128)")
  p.add_argument("input")
  p.add_argument("output")
  p.set_defaults(handler=run)

def run(args) -> int:
  try:
    gains = GainVector.parse(args.gains, args.levels)
  except ValueError as e:
    raise ConfigError(f"--gains: {e}") from e
  raster = load_image(args.input)
  out = wavelet_filter_rgb(raster, args.levels, gains)
  save_image(out, args.output)
  written = []
  if args.dump_stack:
    for name, plane in zip("rgb", to_planes(raster)):
      written += [str(p) for p in dump_stack(decompose(plane, args.levels), args.dump_stack, prefix=f"{name}_")]
  emit({"levels": args.levels, "gains": gains.gains, "residual_gain": gains.residual_gain, "stack": written})
  return EXIT_OK
