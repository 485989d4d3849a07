"""Command-line front end: verify, demo, diag, bench.

Run from the repo root:

    python -m app.cli verify --group Z4 --ring q --samples 200 --seed 7
    python -m app.cli demo products --group Z3 --ring q
    python -m app.cli diag --group Z4 --ring f64 --seed 1
    python -m app.cli bench --group Zn --sizes 64,256,1024,4096 --format csv

Exit codes: 0 pass, 1 verification failure, 2 usage or spec error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from core.bench import run_bench
from core.config import RunConfig, load_defaults, make_rng
from core.demo_presets import get_preset
from core.diag import generate_diag_instance, verify_diagonalization
from core.errors import (
    CorrectnessError,
    DemoTooLargeError,
    GenerationFailedError,
    InvalidGroupSpecError,
    InvalidRingSpecError,
    UnsupportedRingError,
)
from core.group import parse_group_spec
from core.render import DEMOS, check_demo_size, render_demo, render_diag_report, render_suites, suites_frame
from core.serialize import report_json
from core.suites import run_suites
from core.transform import require_approximate

logger = logging.getLogger("app.cli")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# Ring used when --ring is omitted
DEFAULT_RINGS = {"verify": "q", "demo": "q", "diag": "f64", "bench": "f64"}
DEFAULT_GROUPS = {"verify": "Z4", "demo": "Z3", "diag": "Z4", "bench": "Zn"}

Outcome = Tuple[int, str]


def _parse_sizes(text: str) -> List[int]:
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"sizes must be comma-separated integers, got {text!r}")
    if not sizes or any(s < 1 for s in sizes):
        raise argparse.ArgumentTypeError(f"sizes must be positive, got {text!r}")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", help="group spec, e.g. Z4 or Z3xZ2")
    common.add_argument("--ring", help="ring spec: q, zmod:<m>, f64, c64 or nested like Z2[q]")
    common.add_argument("--tol", type=float, help="relative tolerance for float/complex rings")
    common.add_argument("--seed", type=int, help="64-bit unsigned run seed")
    common.add_argument("--samples", type=int, help="random instances per identity")
    common.add_argument("--workers", type=int, help="threads for sample evaluation")
    common.add_argument("--format", dest="fmt", choices=["text", "json", "csv"], help="output format")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")

    parser = argparse.ArgumentParser(prog="grouptensor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="run every applicable property suite")
    demo = sub.add_parser("demo", parents=[common], help="print a worked example")
    demo.add_argument("which", nargs="?", choices=DEMOS, default="products")
    demo.add_argument("--preset", help="named demo configuration")
    sub.add_parser("diag", parents=[common], help="generate and verify a diagonalization instance")
    bench = sub.add_parser("bench", parents=[common], help="time the convolution paths")
    bench.add_argument("--sizes", type=_parse_sizes, help="comma-separated orders for --group Zn")
    return parser


def make_config(args: argparse.Namespace, defaults: Dict[str, Any]) -> RunConfig:
    return RunConfig.from_defaults(
        defaults,
        group=args.group or DEFAULT_GROUPS[args.command],
        ring=args.ring or DEFAULT_RINGS[args.command],
        tolerance=args.tol,
        seed=args.seed,
        samples=args.samples,
        workers=args.workers,
        fmt=args.fmt,
        sizes=getattr(args, "sizes", None),
    )


# ----------------------------
# Commands
# ----------------------------

def cmd_verify(cfg: RunConfig) -> Outcome:
    group, ring = cfg.validate()
    results = run_suites(group, ring, cfg)
    passed = all(r.passed for r in results)
    if cfg.fmt == "json":
        doc = {"config": cfg.as_dict(), "suites": [r.to_dict() for r in results], "pass": passed}
        text = report_json(doc)
    elif cfg.fmt == "csv":
        text = suites_frame(results).to_csv(index=False).rstrip()
    else:
        text = render_suites(results)
    return (EXIT_OK if passed else EXIT_FAILED), text


def cmd_demo(cfg: RunConfig, which: str, preset: Optional[str] = None) -> Outcome:
    if preset:
        p = get_preset(preset)
        cfg.group, cfg.ring, cfg.seed, which = p.group, p.ring, p.seed, p.demo
    group, ring = cfg.validate()
    check_demo_size(group, cfg.demo_max_order)
    text = render_demo(which, group, ring, make_rng(cfg.seed))
    if cfg.fmt == "json":
        text = report_json({"config": cfg.as_dict(), "demo": which, "text": text.splitlines()})
    return EXIT_OK, text


def cmd_diag(cfg: RunConfig) -> Outcome:
    group, ring = cfg.validate()
    require_approximate(ring)
    t, x, diagonal = generate_diag_instance(
        group, ring, cfg.seed, max_draws=cfg.max_draws, condition_limit=cfg.condition_limit
    )
    report = verify_diagonalization(t, x, diagonal, cfg.hypothesis_tol, cfg.eigen_tol)
    if cfg.fmt == "json":
        text = report_json({"config": cfg.as_dict(), "diag": report.to_dict(), "pass": report.passed})
    else:
        text = render_diag_report(report)
    return (EXIT_OK if report.passed else EXIT_FAILED), text


def cmd_bench(cfg: RunConfig) -> Outcome:
    cfg.check_numbers()
    ring = cfg.parse_ring()
    require_approximate(ring)
    groups = None if cfg.group.strip().lower() == "zn" else [parse_group_spec(cfg.group)]
    frame = run_bench(
        cfg.sizes,
        seed=cfg.seed,
        repeats=cfg.bench_repeats,
        circulant_limit=cfg.circulant_limit,
        ring=ring,
        groups=groups,
    )
    if cfg.fmt == "csv":
        text = frame.to_csv(index=False).rstrip()
    elif cfg.fmt == "json":
        text = report_json({"config": cfg.as_dict(), "bench": frame.to_dict(orient="records"), "pass": True})
    else:
        text = frame.to_string(index=False)
    return EXIT_OK, text


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        cfg = make_config(args, load_defaults())
        if args.command == "verify":
            code, text = cmd_verify(cfg)
        elif args.command == "demo":
            code, text = cmd_demo(cfg, args.which, args.preset)
        elif args.command == "diag":
            code, text = cmd_diag(cfg)
        else:
            code, text = cmd_bench(cfg)
    except (
        InvalidGroupSpecError,
        InvalidRingSpecError,
        UnsupportedRingError,
        DemoTooLargeError,
        KeyError,
        ValueError,
    ) as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except (CorrectnessError, GenerationFailedError) as exc:
        logger.error("%s", exc)
        return EXIT_FAILED
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
