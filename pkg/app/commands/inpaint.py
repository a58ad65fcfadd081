# app/commands/inpaint.py
from app.commands import emit, validated
from app.config import DEFAULT_MAX_ITERATIONS, DEFAULT_MIN_NEIGHBORS, EXIT_OK, RESIDUAL_POLICIES
from app.imageio import load_image, load_mask, save_image
from app.models import InpaintConfig
from app.services.inpaint import inpaint
from app.util.jsonio import write_json


def register(sub) -> None:
  p = sub.add_parser("inpaint", help="fill masked pixels by iterated neighbour averaging")
  p.add_argument("--min-neighbors", type=int, default=DEFAULT_MIN_NEIGHBORS)
  p.add_argument("--max-iters", type=int, default=DEFAULT_MAX_ITERATIONS)
  p.add_argument("--residual", choices=list(RESIDUAL_POLICIES), default="leave")
  p.add_argument("input")
  p.add_argument("mask")
  p.add_argument("output")
  p.add_argument("--report", metavar="JSON", help="write the InpaintReport here")
  p.set_defaults(handler=run)

def run(args) -> int:
  cfg = validated(InpaintConfig, min_neighbors=args.min_neighbors,
                  max_iterations=args.max_iters, residual_policy=args.residual)
  raster = load_image(args.input)
  mask = load_mask(args.mask)
  out, report = inpaint(raster, mask, cfg)
  save_image(out, args.output)
  if args.report:
    write_json(args.report, report.model_dump())
  emit(report)
  return EXIT_OK
