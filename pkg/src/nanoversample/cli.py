"""Command-line entry point: ``nanoversample resample`` and ``nanoversample report``."""

from __future__ import annotations

import argparse
import logging
import sys

from .csvio import CsvOptions, read_csv, write_csv
from .exceptions import DataError
from .execution import resample
from .nanpolicy import NanStrategy
from .report import build_report
from .samplers import Method, SynthesisConfig
from .strategy import parse_sampling_spec

log = logging.getLogger(__name__)


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return value


def _seed(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed: {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be a 64-bit unsigned integer: {text!r}")
    return value


def _shrinkage(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number: {text!r}") from None
    if not value >= 0:
        raise argparse.ArgumentTypeError(f"shrinkage must be >= 0: {text!r}")
    return value


def _strategy(text):
    try:
        return parse_sampling_spec(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid strategy {text!r}: {e}") from None


def _add_csv_args(p):
    p.add_argument("--input", required=True, help="input CSV file")
    p.add_argument("--label", default="-1",
                   help="label column name or index (default: last column)")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--no-header", action="store_true", help="input has no header row")
    p.add_argument("--missing", action="append", metavar="TOKEN",
                   help="token read as missing (repeatable; default: '', NaN, nan, NA)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nanoversample",
        description="Oversample imbalanced CSV data without deleting or imputing missing values.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("resample", help="write a rebalanced copy of a CSV file")
    _add_csv_args(p)
    p.add_argument("--output", required=True, help="output CSV file")
    p.add_argument("--method", choices=[m.value for m in Method], default="smote")
    p.add_argument("--strategy", type=_strategy, default="auto",
                   help="auto | minority | not-majority | <ratio> | class=target,...")
    p.add_argument("--nan-strategy", choices=[s.value for s in NanStrategy], default="preserve")
    p.add_argument("--k", type=_positive_int, default=5)
    p.add_argument("--shrinkage", type=_shrinkage, default=1.0)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--batch-size", type=_positive_int, default=64)
    p.add_argument("--missing-out", default="", metavar="TOKEN",
                   help="token written for missing cells (default: empty field)")

    p = sub.add_parser("report", help="summarize class balance and missingness")
    _add_csv_args(p)
    p.add_argument("--json", action="store_true", help="emit a single JSON object")
    return parser


def _csv_options(args, missing_out="") -> CsvOptions:
    tokens = frozenset(args.missing) if args.missing else CsvOptions().missing_tokens_in
    return CsvOptions(
        missing_tokens_in=tokens,
        missing_token_out=missing_out,
        delimiter=args.delimiter,
        has_header=not args.no_header,
    )


def _run(args) -> None:
    if args.command == "report":
        dataset = read_csv(args.input, args.label, _csv_options(args))
        report = build_report(dataset)
        print(report.to_json() if args.json else report.to_text())
        return

    options = _csv_options(args, args.missing_out)
    dataset = read_csv(args.input, args.label, options)
    config = SynthesisConfig(
        method=args.method,
        k=args.k,
        sampling_strategy=args.strategy,
        nan_strategy=args.nan_strategy,
        shrinkage=args.shrinkage,
        seed=args.seed,
        batch_size=args.batch_size,
        jobs=args.jobs,
    )
    result = resample(dataset, config)
    write_csv(result, args.output, options)
    log.info("wrote %d rows (%d synthetic) to %s",
             result.dataset.n_samples, len(result.provenance), args.output)


def cli_main(argv=None) -> int:
    """Run the CLI; returns 0 on success, 1 on a data error, 2 on a usage error."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        _run(args)
    except (DataError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
