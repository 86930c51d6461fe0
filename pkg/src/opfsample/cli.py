"""Command-line interface.

Subcommands:

- ``run``      one method on one dataset, aggregated over seeded trials
- ``compare``  several methods on shared seeds, with signed-rank comparison
- ``inspect``  dataset summary (shape, class balance, missing cells)

Flags may also come from a flat key-value config file (``--config``); values
given on the command line override the file. Exit codes: 0 success, 1 usage
error, 2 data error, 3 experiment failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import harness
from .data import load_csv
from .errors import DataError, ExperimentError, UsageError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_EXPERIMENT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_grid(text: str) -> tuple[int, ...]:
    """Parse ``lo:hi:step`` or a comma-separated list of integers."""
    text = text.strip()
    try:
        if ":" in text:
            parts = [int(p) for p in text.split(":")]
            if len(parts) == 2:
                lo, hi, step = parts[0], parts[1], 1
            elif len(parts) == 3:
                lo, hi, step = parts
            else:
                raise ValueError
            if step < 1 or hi < lo:
                raise ValueError
            return tuple(range(lo, hi + 1, step))
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise UsageError(f"cannot parse grid {text!r}; use lo:hi:step or a comma list") from None


def parse_balance_mode(text: str) -> tuple[str, float]:
    text = text.strip()
    if text in ("balance", harness.BALANCE_TO_MAJORITY):
        return harness.BALANCE_TO_MAJORITY, 1.0
    if text.startswith("ratio:"):
        try:
            return harness.RATIO_MODE, float(text.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"cannot parse balance mode {text!r}") from None
    raise UsageError(f"unknown balance mode {text!r}; use 'balance' or 'ratio:<float>'")


def parse_label_column(text: str):
    try:
        return int(text)
    except ValueError:
        return text


def read_config_file(path: str) -> dict:
    """Flat ``key = value`` lines; keys mirror the long flag names."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected 'key = value'")
                key, value = line.split("=", 1)
                values[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from None
    return values


_CONFIG_KEYS = {
    "data": str,
    "label_col": parse_label_column,
    "missing_token": str,
    "method": str,
    "grid": parse_grid,
    "trials": int,
    "seed": int,
    "balance_mode": str,
    "out_dir": str,
    "format": str,
}


def _apply_config_file(args: argparse.Namespace) -> None:
    if not getattr(args, "config", None):
        return
    values = read_config_file(args.config)
    for key, raw in values.items():
        if key not in _CONFIG_KEYS:
            raise UsageError(f"unknown config key {key!r}")
        if getattr(args, key, None) is None:
            try:
                setattr(args, key, _CONFIG_KEYS[key](raw))
            except ValueError:
                raise UsageError(f"bad value for config key {key!r}: {raw!r}") from None


def _add_data_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key-value config file; flags override it")
    p.add_argument("--data", help="path to the CSV dataset")
    p.add_argument("--label-col", dest="label_col", type=parse_label_column,
                   help="label column name or index (default: last column)")
    p.add_argument("--missing-token", dest="missing_token",
                   help="cell text marking a missing value (default '?')")


def _add_experiment_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid", type=parse_grid,
                   help="hyperparameter grid, 'lo:hi:step' or comma list (default per method)")
    p.add_argument("--trials", type=int, help="number of seeded trials (default 20)")
    p.add_argument("--seed", type=int, help="base seed; trial t uses seed base+t (default 0)")
    p.add_argument("--balance-mode", dest="balance_mode",
                   help="'balance' (to majority count) or 'ratio:<float>' (default balance)")
    p.add_argument("--out-dir", dest="out_dir", help="directory for JSON/CSV reports")
    p.add_argument("--format", choices=("text", "json", "csv"),
                   help="stdout format (default text)")


def build_parser() -> _Parser:
    parser = _Parser(prog="opfsample", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one oversampling method")
    _add_data_flags(run)
    run.add_argument("--method", choices=harness.METHODS, help="oversampling method")
    _add_experiment_flags(run)

    cmp_p = sub.add_parser("compare", help="compare several methods on shared seeds")
    _add_data_flags(cmp_p)
    cmp_p.add_argument("--method", dest="method",
                       help="comma-separated methods (default: all of %s)" % ",".join(harness.METHODS))
    _add_experiment_flags(cmp_p)

    ins = sub.add_parser("inspect", help="summarize a dataset")
    _add_data_flags(ins)
    ins.add_argument("--format", choices=("text", "json"), help="stdout format")
    return parser


def _require_data(args) -> str:
    if not getattr(args, "data", None):
        raise UsageError("--data is required (flag or config file)")
    return args.data


def _base_config(args, method: str) -> harness.ExperimentConfig:
    mode, ratio = parse_balance_mode(args.balance_mode or "balance")
    return harness.ExperimentConfig(
        data_path=_require_data(args),
        label_column=args.label_col if args.label_col is not None else -1,
        missing_token=args.missing_token or "?",
        method=method,
        grid=args.grid if method != "none" else None,
        trials=args.trials if args.trials is not None else 20,
        base_seed=args.seed if args.seed is not None else 0,
        balance_mode=mode,
        ratio=ratio,
    )


def _cmd_run(args) -> int:
    cfg = _base_config(args, args.method or "o2pf")
    report = harness.run_experiment(cfg)
    fmt = args.format or "text"
    if fmt == "text":
        sys.stdout.write(harness.render_report_text(report))
    elif fmt == "json":
        sys.stdout.write(harness.report_to_json(report))
    else:
        sys.stdout.write(harness.trials_csv(report))
    if args.out_dir:
        harness.write_experiment_files(report, args.out_dir)
    return EXIT_OK


def _cmd_compare(args) -> int:
    methods = [m.strip() for m in (args.method or ",".join(harness.METHODS)).split(",") if m.strip()]
    for m in methods:
        if m not in harness.METHODS:
            raise UsageError(f"unknown method {m!r}, expected one of {harness.METHODS}")
    configs = []
    for m in methods:
        grid = args.grid if (args.grid and m != "none") else None
        configs.append(harness.ExperimentConfig(
            data_path=_require_data(args),
            label_column=args.label_col if args.label_col is not None else -1,
            missing_token=args.missing_token or "?",
            method=m,
            grid=grid,
            trials=args.trials if args.trials is not None else 20,
            base_seed=args.seed if args.seed is not None else 0,
            balance_mode=parse_balance_mode(args.balance_mode or "balance")[0],
            ratio=parse_balance_mode(args.balance_mode or "balance")[1],
        ))
    cmp_report = harness.compare_methods(configs)
    fmt = args.format or "text"
    if fmt == "text":
        sys.stdout.write(harness.render_comparison_text(cmp_report))
    elif fmt == "json":
        sys.stdout.write(harness.comparison_to_json(cmp_report))
    else:
        sys.stdout.write(harness.comparison_csv(cmp_report))
    if args.out_dir:
        harness.write_comparison_files(cmp_report, args.out_dir)
    return EXIT_OK


def _cmd_inspect(args) -> int:
    ds = load_csv(
        _require_data(args),
        args.label_col if args.label_col is not None else -1,
        args.missing_token or "?",
    )
    n0, n1 = ds.class_counts
    info = {
        "path": args.data,
        "samples": ds.n_samples,
        "features": ds.n_features,
        "feature_names": list(ds.feature_names),
        "count_label0": n0,
        "count_label1": n1,
        "minority_label": ds.minority_label,
        "minority_fraction": ds.minority_count / ds.n_samples,
        "missing_cells": ds.n_missing,
    }
    if (args.format or "text") == "json":
        sys.stdout.write(json.dumps(info, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(
            f"{info['path']}: {info['samples']} samples x {info['features']} features\n"
            f"  labels: {n0} zeros / {n1} ones "
            f"(minority = {ds.minority_label}, {info['minority_fraction']:.1%})\n"
            f"  missing cells: {info['missing_cells']}\n"
        )
    return EXIT_OK


_COMMANDS = {"run": _cmd_run, "compare": _cmd_compare, "inspect": _cmd_inspect}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _apply_config_file(args)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ExperimentError as exc:
        print(f"experiment failed: {exc}", file=sys.stderr)
        return EXIT_EXPERIMENT


if __name__ == "__main__":
    sys.exit(main())
