"""Command-line surface: one subcommand per reproducible artifact.

Exit codes: 0 success, 1 verification mismatch, 2 usage or input error,
3 refused because the estimated runtime exceeds the budget.
"""

from __future__ import annotations

import argparse
import contextlib
import sys

from . import expmodel, reports, tauio
from .conjectures import default_constants
from .gapstats import tau_histogram
from .reports import BudgetExceeded, DEFAULT_BUDGET_SECONDS, RunConfig, parse_limit
from .sieve import DEFAULT_SEGMENT_SIZE, BoundaryRule

__all__ = ["main"]


def _add_common(parser: argparse.ArgumentParser, *, rule_default: str, first_default: bool) -> None:
    parser.add_argument("--limit", required=True, help="sieve limit, decimal or 2^t")
    parser.add_argument(
        "--rule",
        choices=["strict", "inclusive"],
        default=rule_default,
        help=f"boundary rule at the limit (default {rule_default})",
    )
    group = parser.add_mutually_exclusive_group()
    group.add_argument(
        "--include-first",
        dest="include_first",
        action="store_true",
        default=first_default,
        help="include the unique odd first gap d_1 = 1",
    )
    group.add_argument(
        "--exclude-first", dest="include_first", action="store_false"
    )
    _add_run_flags(parser)


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--segment-size", type=int, default=DEFAULT_SEGMENT_SIZE)
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    parser.add_argument("--budget-seconds", type=float, default=DEFAULT_BUDGET_SECONDS)
    parser.add_argument("--force", action="store_true", help="ignore the runtime budget")


def _parse_ks(text: str) -> tuple[int, ...]:
    try:
        ks = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"moment orders {text!r}: expected comma-separated integers")
    if not ks or any(k < 1 for k in ks):
        raise ValueError(f"moment orders must be positive, got {text!r}")
    return ks


@contextlib.contextmanager
def _output(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="ascii", newline="") as fh:
            yield fh


def _rule(args: argparse.Namespace) -> BoundaryRule:
    return BoundaryRule(args.rule)


def _cmd_taus(args: argparse.Namespace) -> int:
    limit = parse_limit(args.limit)
    reports.check_budget(limit, args.budget_seconds, args.force)
    hist = tau_histogram(
        limit, BoundaryRule.STRICT, include_first=False, segment_size=args.segment_size
    )
    if args.out is None:
        for d in sorted(hist.counts):
            sys.stdout.write(f"{d} {hist.counts[d]}\n")
    else:
        tauio.write_tau(args.out, hist)
    return 0


def _cmd_moments(args: argparse.Namespace) -> int:
    limit = parse_limit(args.limit)
    reports.check_budget(limit, args.budget_seconds, args.force)
    config = RunConfig(
        limit=limit,
        rule=_rule(args),
        include_first=args.include_first,
        ks=_parse_ks(args.k),
        segment_size=args.segment_size,
    )
    with _output(args.out) as out:
        reports.write_figure_moments(out, config, args.segment_size)
    return 0


def _cmd_maximal_gaps(args: argparse.Namespace) -> int:
    limit = parse_limit(args.limit)
    reports.check_budget(limit, args.budget_seconds, args.force)
    records = reports.collect_records(limit, args.segment_size, use_fixture=False)
    config = RunConfig(
        limit=limit,
        rule=BoundaryRule.STRICT,
        include_first=True,
        segment_size=args.segment_size,
    )
    with _output(args.out) as out:
        reports.write_records(out, records, config)
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    limit = parse_limit(args.limit)
    reports.check_budget(limit, args.budget_seconds, args.force)
    if args.kind == "moments":
        config = RunConfig(
            limit=limit,
            rule=_rule(args),
            include_first=args.include_first,
            ks=_parse_ks(args.k),
            segment_size=args.segment_size,
        )
        with _output(args.out) as out:
            reports.write_figure_moments(out, config, args.segment_size)
        return 0
    records = reports.collect_records(
        limit, args.segment_size, use_fixture=args.use_fixture
    )
    config = RunConfig(
        limit=limit,
        rule=BoundaryRule.STRICT,
        include_first=True,
        segment_size=args.segment_size,
    )
    with _output(args.out) as out:
        reports.write_figure_maxgaps(out, records, config)
    return 0


def _cmd_verify_tau(args: argparse.Namespace) -> int:
    limit = parse_limit(args.limit)
    reports.check_budget(limit, args.budget_seconds, args.force)
    result = tauio.verify_tau(args.reference, limit, args.segment_size)
    print(result.summary())
    return 0 if result.matches else 1


def _cmd_expmodel(args: argparse.Namespace) -> int:
    params = expmodel.ExpParams(n=args.n, rate=args.rate)
    lines = [
        f"n={params.n} rate={format(params.rate, '.6g')}",
        f"max_mean_exact={expmodel.order_stat_mean(params.n, params.n, params.rate):.6g}",
        f"max_var_exact={expmodel.order_stat_var(params.n, params.n, params.rate):.6g}",
        f"min_quantile(q={args.q})={expmodel.min_order_quantile(args.q, params):.6g}",
        f"max_quantile(q={args.q})={expmodel.max_order_quantile(args.q, params):.6g}",
    ]
    if params.n > 1:
        lines.append(f"max_mean_asym={expmodel.max_order_mean_asym(params.n):.6g}")
        lines.append(f"max_var_asym={expmodel.max_order_var_asym(params.n):.6g}")
    if args.spacings:
        sample = expmodel.simulate_spacings(args.spacings, args.seed)
        lines.append(
            f"spacings n={sample.n} seed={sample.seed} generator={sample.generator}"
            f" sum={float(sample.spacings.sum()):.12f}"
        )
    with _output(args.out) as out:
        out.write("\n".join(lines) + "\n")
    return 0


def _cmd_table1(args: argparse.Namespace) -> int:
    limits = [parse_limit(part) for part in args.limit.split(",")]
    reports.check_budget(sum(limits), args.budget_seconds, args.force)
    rows = reports.table1_rows(limits, args.segment_size)
    config = RunConfig(
        limit=max(limits),
        rule=BoundaryRule.STRICT,
        include_first=False,
        ks=(1, 2, 3, 4),
        segment_size=args.segment_size,
    )
    with _output(args.out) as out:
        reports.write_table1(out, rows, config)
    return 0


def _cmd_table2(args: argparse.Namespace) -> int:
    limit = parse_limit(args.limit)
    reports.check_budget(limit, args.budget_seconds, args.force)
    records = reports.collect_records(
        limit, args.segment_size, use_fixture=args.use_fixture
    )
    rows = reports.table2_rows(records, default_constants())
    config = RunConfig(
        limit=limit,
        rule=BoundaryRule.STRICT,
        include_first=True,
        segment_size=args.segment_size,
    )
    with _output(args.out) as out:
        reports.write_table2(out, rows, config)
    return 0


def _cmd_figure_data(args: argparse.Namespace) -> int:
    if args.kind == "moments":
        return _cmd_moments(args)
    limit = parse_limit(args.limit)
    reports.check_budget(limit, args.budget_seconds, args.force)
    records = reports.collect_records(
        limit, args.segment_size, use_fixture=args.use_fixture
    )
    config = RunConfig(
        limit=limit,
        rule=BoundaryRule.STRICT,
        include_first=True,
        segment_size=args.segment_size,
    )
    with _output(args.out) as out:
        reports.write_figure_maxgaps(out, records, config)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primegaps",
        description="Prime-gap statistics against the exponential model",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("taus", help="emit tau gap counts in the record-file format")
    p.add_argument("--limit", required=True)
    _add_run_flags(p)
    p.set_defaults(func=_cmd_taus)

    p = sub.add_parser("moments", help="gap moments against k! (log n)^k")
    _add_common(p, rule_default="strict", first_default=False)
    p.add_argument("--k", default="1,2,3,4", help="comma-separated moment orders")
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("maximal-gaps", help="record gaps up to a limit (CSV)")
    p.add_argument("--limit", required=True)
    _add_run_flags(p)
    p.set_defaults(func=_cmd_maximal_gaps)

    p = sub.add_parser("compare", help="observed statistics against model curves")
    p.add_argument("--kind", choices=["moments", "maxgaps"], required=True)
    _add_common(p, rule_default="strict", first_default=False)
    p.add_argument("--k", default="1,2,3,4")
    p.add_argument("--use-fixture", action="store_true",
                   help="extend maxgap rows with the shipped record table")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("verify-tau", help="recompute and diff a tau file")
    p.add_argument("--reference", required=True, help="tau file to check")
    p.add_argument("--limit", required=True)
    _add_run_flags(p)
    p.set_defaults(func=_cmd_verify_tau)

    p = sub.add_parser("expmodel", help="exponential order-statistic closed forms")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rate", type=float, default=1.0)
    p.add_argument("--q", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--spacings", type=int, default=0,
                   help="also simulate this many normalised spacings")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_expmodel)

    p = sub.add_parser("table1", help="moment table over power-of-two limits")
    p.add_argument("--limit", required=True,
                   help="comma-separated power-of-two limits, e.g. 2^15,2^18")
    _add_run_flags(p)
    p.set_defaults(func=_cmd_table1)

    p = sub.add_parser("table2", help="records exceeding the Granville scale")
    p.add_argument("--limit", required=True)
    p.add_argument("--use-fixture", action="store_true")
    _add_run_flags(p)
    p.set_defaults(func=_cmd_table2)

    p = sub.add_parser("figure-data", help="plot-ready CSV for moments or records")
    p.add_argument("--kind", choices=["moments", "maxgaps"], required=True)
    _add_common(p, rule_default="strict", first_default=False)
    p.add_argument("--k", default="1,2,3,4")
    p.add_argument("--use-fixture", action="store_true")
    p.set_defaults(func=_cmd_figure_data)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
