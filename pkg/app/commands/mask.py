# app/commands/mask.py
from app.commands import emit, validated
from app.config import EXIT_OK
from app.imageio import load_image, save_image, save_mask
from app.models import ThresholdSpec
from app.services.masking import build_mask, mask_stats, whiteout


def register(sub) -> None:
  p = sub.add_parser("mask", help="threshold the darkest pixels into a mask and a white-text image")
  p.add_argument("--threshold", type=int, required=True, help="0-255; pixels strictly darker are masked")
  p.add_argument("--rule", choices=["luma", "max", "min"], default="luma")
  p.add_argument("input")
  p.add_argument("out_mask")
  p.add_argument("out_whiteout")
  p.set_defaults(handler=run)

def run(args) -> int:
  spec = validated(ThresholdSpec, threshold=args.threshold, channel_rule=args.rule)
  raster = load_image(args.input)
  mask = build_mask(raster, spec)
  save_mask(mask, args.out_mask)
  save_image(whiteout(raster, mask), args.out_whiteout)
  emit(mask_stats(mask))
  return EXIT_OK
