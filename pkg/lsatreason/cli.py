#!/usr/bin/env python3

"""LSAT reasoning toolkit.

Usage:
    lsatreason solve-ar DATASET [--lexicon F] [--mode count|ratio] [--limits N,M]
                                [--seed S] [--trace OUT.jsonl] [--no-gold]
                                [--fallback abstain|random] [--out DIR]
    lsatreason extend-lr DATASET [--seed S] [--out DIR]
    lsatreason parse-program FILE
    lsatreason score --ar P --lr P --rc P [--scale F]
    lsatreason mark-positions FILE

Results are printed to stdout as JSON unless --out is given; logs go to stderr.

Exit codes:
    0 success, 1 usage error, 2 invalid data or program, 3 search limits exceeded.
"""

import argparse
import logging
import os
import sys

from .errors import LsatError
from .harness.dataset import load_dataset
from .harness.metrics import (
    accuracy,
    default_scale,
    load_scale,
    overall_score,
    save_report,
    scaled_score,
)
from .harness.runners import run_ar, run_lr_extend
from .interface.registry import load_config
from .interpret.lexicon import load_lexicon
from .interpret.positions import annotate_positions
from .program.parser import load_programs, print_program
from .solver.limits import SearchLimits
from .solver.scoring import ScoreMode
from .utils.json_utils import serialize_json

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_LIMITS = 3


class ArgumentParser(argparse.ArgumentParser):
    """Reports usage errors with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as f:
        return f.read()


def _limits(value: str) -> SearchLimits:
    """Either `N,M` or the path of a `search_limits(...)` configuration file."""
    if os.path.isfile(value):
        limits = load_config(value)
        if not isinstance(limits, SearchLimits):
            raise LsatError(f"{value} must evaluate to search_limits(...)")
        return limits
    return SearchLimits.parse(value)


def _emit(data):
    print(serialize_json(data))


def solve_ar(args) -> int:
    records = load_dataset(args.dataset, seed=args.seed)
    lexicon = load_lexicon(args.lexicon) if args.lexicon else None
    report = run_ar(
        records,
        lexicon=lexicon,
        limits=_limits(args.limits) if args.limits else None,
        mode=args.mode,
        use_gold=not args.no_gold,
        fallback=args.fallback,
        seed=args.seed,
        trace_path=args.trace,
    )
    logging.info("AR accuracy: %.1f%% over %d questions", accuracy(report), len(report.questions))
    if args.out:
        save_report(report, args.out)
    else:
        _emit(report.to_dict())
    return EXIT_LIMITS if report.extra["limits_hit"] else EXIT_OK


def extend_lr(args) -> int:
    records = load_dataset(args.dataset, seed=args.seed)
    artifacts, report = run_lr_extend(records, out_dir=args.out, seed=args.seed)
    logging.info("LR accuracy: %.1f%% over %d questions", accuracy(report), len(report.questions))
    if args.out:
        save_report(report, args.out)
    else:
        _emit({"report": report.to_dict(), "artifacts": artifacts})
    return EXIT_OK


def parse_program(args) -> int:
    programs = load_programs(_read(args.file))
    _emit([print_program(p) for p in programs])
    return EXIT_OK


def score(args) -> int:
    scale = load_scale(args.scale) if args.scale else default_scale()
    overall = overall_score(args.ar, args.lr, args.rc)
    _emit(
        {
            "overall": round(overall, 2),
            "scaled": {
                "AR": scaled_score(args.ar, scale),
                "LR": scaled_score(args.lr, scale),
                "RC": scaled_score(args.rc, scale),
                "overall": scaled_score(overall, scale),
            },
        }
    )
    return EXIT_OK


def mark_positions(args) -> int:
    _emit({"context": annotate_positions(_read(args.file))})
    return EXIT_OK


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="lsatreason", description="LSAT reasoning toolkit.")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    p = commands.add_parser("solve-ar", help="Solve analytical reasoning questions.")
    p.add_argument("dataset", type=str, help="JSON-lines dataset.")
    p.add_argument("--lexicon", type=str, default=None, help="Trigger lexicon file.")
    p.add_argument("--mode", choices=ScoreMode.names(), default="ratio", help="Option score mode.")
    p.add_argument("--limits", type=str, default=None, help="N,M or a search_limits(...) config file.")
    p.add_argument("--seed", type=int, default=0, help="Seed of padding and random fallback.")
    p.add_argument("--trace", type=str, default=None, help="Write search trees to this JSON-lines file.")
    p.add_argument("--no-gold", action="store_true", help="Interpret the text even when programs are annotated.")
    p.add_argument("--fallback", choices=["abstain", "random"], default="abstain", help="Unanswerable questions.")
    p.add_argument("--out", type=str, default=None, help="Write the report into this directory.")
    p.set_defaults(func=solve_ar)

    p = commands.add_parser("extend-lr", help="Extend logical reasoning contexts.")
    p.add_argument("dataset", type=str, help="JSON-lines dataset.")
    p.add_argument("--seed", type=int, default=0, help="Seed of padding and negative contexts.")
    p.add_argument("--out", type=str, default=None, help="Write artifacts and report into this directory.")
    p.set_defaults(func=extend_lr)

    p = commands.add_parser("parse-program", help="Parse and pretty-print a program file.")
    p.add_argument("file", type=str, help="One program per line; # starts a comment.")
    p.set_defaults(func=parse_program)

    p = commands.add_parser("score", help="Overall and scaled scores from section accuracies.")
    p.add_argument("--ar", type=float, required=True, help="AR accuracy in percent.")
    p.add_argument("--lr", type=float, required=True, help="LR accuracy in percent.")
    p.add_argument("--rc", type=float, required=True, help="RC accuracy in percent.")
    p.add_argument("--scale", type=str, default=None, help="score_scale(...) config file.")
    p.set_defaults(func=score)

    p = commands.add_parser("mark-positions", help="Add paragraph and line tags to a passage.")
    p.add_argument("file", type=str, help="Plain-text passage.")
    p.set_defaults(func=mark_positions)
    return parser


def main(argv=None) -> int:
    """Entry point of the `lsatreason` command."""
    logging.basicConfig(level=logging.INFO)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LsatError as e:
        logging.error("%s", e)
        return EXIT_DATA
    except (OSError, UnicodeDecodeError) as e:
        logging.error("%s", e)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
