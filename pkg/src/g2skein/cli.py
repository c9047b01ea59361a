"""Command-line interface.

Exit codes: 0 success, 1 unparseable or invalid input, 2 internal
invariant violation (including fuzz counterexamples), 3 sorting step
limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional, Sequence

from . import __version__, engine, oracle
from .diagram import parse_diagram
from .errors import (
    InternalInvariantError,
    SkeinFormatError,
    SkeinValidationError,
    StepLimitExceeded,
)

__all__ = ["main"]


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise SkeinFormatError(f"cannot read {path}: {exc}") from exc


def _cmd_validate(args: argparse.Namespace) -> int:
    parse_diagram(_read(args.file))
    print("ok")
    return 0


def _parse_order(text: Optional[str]) -> Optional[list[int]]:
    if not text:
        return None
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError:
        raise SkeinFormatError(f"bad --order value {text!r}") from None


def _cmd_resolve(args: argparse.Namespace) -> int:
    d = parse_diagram(_read(args.file))
    poly = engine.run_pipeline(
        d,
        delta_mode=args.delta,
        aux_substitute=args.aux_substitute,
        order=_parse_order(args.order),
        max_steps=args.max_steps,
        threads=args.threads,
        trace_path=args.trace,
    )
    if args.output == "json":
        print(json.dumps(poly.to_json_obj()))
    else:
        print(poly.text())
    return 0


def _cmd_fuzz(args: argparse.Namespace) -> int:
    checked = 0
    for i in range(args.count):
        seed = args.seed + i
        d = oracle.random_diagram(seed, 2, args.max_crossings)
        failure = None
        try:
            if args.check in ("confluence", "all") and len(d.sign_pairs) <= 5:
                failure = oracle.check_confluence(d)
            if failure is None and args.check in ("invariance", "all"):
                failure = oracle.check_encoding_invariance(d)
        except (InternalInvariantError, StepLimitExceeded) as exc:
            failure = {"property": "pipeline", "error": str(exc)}
        if failure is not None:
            failure["seed"] = seed
            path = f"repro-{seed}.json"
            oracle.write_repro(path, d, failure)
            print(f"FAIL seed {seed}: {failure['property']} (repro written to {path})")
            return 2
        checked += 1
    print(f"{checked} diagrams checked, 0 failures")
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    d = oracle.random_diagram_with_crossings(args.seed, args.crossings, args.crossings)
    stats: dict = {}
    started = time.perf_counter()
    poly = engine.run_pipeline(d, stats=stats)
    elapsed = time.perf_counter() - started
    resolved = stats.get("resolved_terms", 0)
    kept = stats.get("terms_after_resolve_dedup", resolved)
    print(f"crossings: {args.crossings}")
    print(f"terms generated: {resolved}")
    print(f"terms after dedup: {kept}")
    ratio = resolved / kept if kept else 1.0
    print(f"dedup ratio: {ratio:.2f}")
    print(f"wall time: {elapsed:.3f}s")
    print(f"result: {poly.text()}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="g2skein",
        description="Resolve array-encoded genus-2 handlebody skeins to basis polynomials.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a diagram file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("resolve", help="run the full pipeline on a diagram file")
    p.add_argument("file")
    p.add_argument("--delta", choices=["standard", "positive", "symbolic"], default="standard")
    p.add_argument("--aux-substitute", action="store_true")
    p.add_argument("--order", help="comma-separated crossing ids")
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--trace", help="write a line-delimited step trace to this file")
    p.add_argument("--output", choices=["text", "json"], default="text")
    p.set_defaults(func=_cmd_resolve)

    p = sub.add_parser("fuzz", help="run metamorphic checks on random diagrams")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--max-crossings", type=int, default=3)
    p.add_argument("--check", choices=["confluence", "invariance", "all"], default="all")
    p.set_defaults(func=_cmd_fuzz)

    p = sub.add_parser("bench", help="time the pipeline on one random diagram")
    p.add_argument("--crossings", type=int, default=6)
    p.add_argument("--seed", type=int, default=1234)
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SkeinFormatError, SkeinValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except StepLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
