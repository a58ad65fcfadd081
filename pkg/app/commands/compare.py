# app/commands/compare.py
from app.commands import emit
from app.config import EXIT_OK
from app.errors import ConfigError
from app.imageio import load_image, load_mask
from app.services.compose import compare_portraits
from app.services.pipeline import load_landmarks


def register(sub) -> None:
  p = sub.add_parser("compare", help="landmark distance ratios (and pixel coincidence) of two portraits")
  p.add_argument("--landmarks-a", required=True, metavar="A.json")
  p.add_argument("--landmarks-b", required=True, metavar="B.json")
  p.add_argument("--tol", type=float, required=True)
  p.add_argument("--images", nargs=2, metavar=("A.png", "B.png"))
  p.add_argument("--region", metavar="MASK", help="1-bit PNG, black = compared pixels")
  p.set_defaults(handler=run)

def run(args) -> int:
  if args.region and not args.images:
    raise ConfigError("--region needs --images")
  la = load_landmarks(args.landmarks_a)
  lb = load_landmarks(args.landmarks_b)
  a = b = region = None
  if args.images:
    a, b = (load_image(p) for p in args.images)
  if args.region:
    region = load_mask(args.region)
  emit(compare_portraits(a, la, b, lb, args.tol, region=region))
  return EXIT_OK
