# app/commands/synth.py
from app.commands import emit
from app.config import EXIT_OK
from app.services.masking import mask_stats
from app.services.synth import generate, load_spec, write_case


def register(sub) -> None:
  p = sub.add_parser("synth", help="write a seeded ground-truth case (truth, degraded, mask, spec)")
  p.add_argument("--spec", required=True, metavar="SPEC.json")
  p.add_argument("out_dir")
  p.set_defaults(handler=run)

def run(args) -> int:
  case = generate(load_spec(args.spec))
  out = write_case(case, args.out_dir)
  emit({
    "out_dir": str(out),
    "mask": mask_stats(case.text_mask).model_dump(),
    "known_threshold": case.known_threshold,
  })
  return EXIT_OK
