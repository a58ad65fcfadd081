# app/commands/overlay.py
from app.commands import emit, validated
from app.config import EXIT_OK
from app.imageio import load_image, save_image
from app.models import OverlayTransform
from app.services.compose import overlay


def register(sub) -> None:
  p = sub.add_parser("overlay", help="place TOP over BASE with a similarity transform and alpha")
  p.add_argument("--tx", type=float, required=True)
  p.add_argument("--ty", type=float, required=True)
  p.add_argument("--scale", type=float, required=True)
  p.add_argument("--rot", type=float, required=True, help="degrees")
  p.add_argument("--alpha", type=float, required=True, help="0 = base only, 1 = top only")
  p.add_argument("base")
  p.add_argument("top")
  p.add_argument("output")
  p.set_defaults(handler=run)

def run(args) -> int:
  t = validated(OverlayTransform, tx=args.tx, ty=args.ty, scale=args.scale,
                rotation=args.rot, alpha=args.alpha)
  base = load_image(args.base)
  top = load_image(args.top)
  save_image(overlay(base, top, t), args.output)
  emit({"transform": t.model_dump(), "size": [base.width, base.height]})
  return EXIT_OK
