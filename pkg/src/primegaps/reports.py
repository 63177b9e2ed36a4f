"""Report generation: limit parsing, CSV tables and the runtime budget.

Every report starts with a single "#"-prefixed comment line recording
the run configuration, followed by a CSV header and data rows.  Floats
print with six significant digits; integers print in full.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import TextIO

from . import conjectures
from .conjectures import Constants, compare_max_gaps, compare_moments
from .gapstats import (
    GapAccumulator,
    MaxGapRecord,
    gap_statistics,
    max_gap_records,
    moments,
)
from .sieve import DEFAULT_SEGMENT_SIZE, MAX_LIMIT, BoundaryRule

__all__ = [
    "RunConfig",
    "BudgetExceeded",
    "parse_limit",
    "format_value",
    "estimate_seconds",
    "check_budget",
    "Table1Row",
    "table1_rows",
    "write_table1",
    "table2_rows",
    "write_table2",
    "write_records",
    "write_figure_moments",
    "write_figure_maxgaps",
    "collect_records",
]

_LIMIT_RE = re.compile(r"^(?:(\d+)|2\^(\d+))$")


def parse_limit(text: str) -> int:
    """Parse a sieving limit: plain decimal or '2^t'.

    Decimal limits may reach 2^63 - 1; in caret form that caps the
    exponent at 62, since 2^63 itself already overflows the range.
    """
    m = _LIMIT_RE.match(text.strip())
    if not m:
        raise ValueError(f"limit {text!r}: expected a decimal integer or 2^t")
    if m.group(1) is not None:
        value = int(m.group(1))
    else:
        t = int(m.group(2))
        if not 1 <= t <= 62:
            raise ValueError(f"limit {text!r}: exponent must be between 1 and 62")
        value = 2**t
    if value < 3:
        raise ValueError(f"limit {value} too small; need at least 3")
    if value > MAX_LIMIT:
        raise ValueError(f"limit {value} exceeds supported range 2**63 - 1")
    return value


@dataclass(frozen=True)
class RunConfig:
    """The knobs that determine a run's output, echoed into every report."""

    limit: int
    rule: BoundaryRule
    include_first: bool
    ks: tuple[int, ...] = ()
    segment_size: int = DEFAULT_SEGMENT_SIZE
    seed: int | None = None

    def header(self) -> str:
        parts = [
            f"limit={self.limit}",
            f"rule={self.rule.value}",
            f"include_first={str(self.include_first).lower()}",
        ]
        if self.ks:
            parts.append("ks=" + ",".join(str(k) for k in self.ks))
        parts.append(f"segment_size={self.segment_size}")
        if self.seed is not None:
            parts.append(f"seed={self.seed}")
        return "# " + " ".join(parts)


def format_value(value: object) -> str:
    """Six significant digits for floats, full precision for integers."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return f"{value:.6g}"
    return str(value)


def _write_csv(out: TextIO, config: RunConfig, header: list[str], rows: list[tuple]) -> None:
    out.write(config.header() + "\n")
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(format_value(v) for v in row) + "\n")


# Sieve throughput for refusal estimates; calibrated at roughly a
# quarter of the measured rate so slower hosts stay on the safe side.
ESTIMATED_NUMBERS_PER_SECOND = 1.0e8
DEFAULT_BUDGET_SECONDS = 600.0


class BudgetExceeded(RuntimeError):
    def __init__(self, estimate: float, budget: float):
        self.estimate = estimate
        self.budget = budget
        super().__init__(
            f"estimated runtime {estimate:.0f}s exceeds budget {budget:.0f}s; "
            "re-run with --force or raise --budget-seconds"
        )


def estimate_seconds(total_numbers: int) -> float:
    return total_numbers / ESTIMATED_NUMBERS_PER_SECOND


def check_budget(total_numbers: int, budget: float, force: bool) -> None:
    estimate = estimate_seconds(total_numbers)
    if estimate > budget and not force:
        raise BudgetExceeded(estimate, budget)


@dataclass(frozen=True)
class Table1Row:
    t: int
    n: int
    mus: tuple[float, float, float, float]
    max_gap: int


_TABLE1_KS = (1, 2, 3, 4)


def table1_rows(
    limits: list[int], segment_size: int = DEFAULT_SEGMENT_SIZE
) -> list[Table1Row]:
    """Gap-count, first four moments and maximal gap per power-of-two limit."""
    rows = []
    for limit in limits:
        t = limit.bit_length() - 1
        if limit != 1 << t:
            raise ValueError(f"limit {limit} is not a power of two")
        acc = gap_statistics(
            limit, BoundaryRule.STRICT, include_first=False, segment_size=segment_size
        )
        summary = moments(acc, list(_TABLE1_KS))
        rows.append(
            Table1Row(
                t=t,
                n=summary.n,
                mus=tuple(summary.moments[k] for k in _TABLE1_KS),
                max_gap=acc.overall_max,
            )
        )
    return rows


def write_table1(out: TextIO, rows: list[Table1Row], config: RunConfig) -> None:
    header = ["t", "n", "mu_1", "mu_2", "mu_3", "mu_4", "G_n"]
    data = [(r.t, r.n, *r.mus, r.max_gap) for r in rows]
    _write_csv(out, config, header, data)


def table2_rows(
    records: list[MaxGapRecord], constants: Constants | None = None
) -> list[tuple]:
    """The records exceeding Granville's scale, with both squared-log columns."""
    rows = []
    for row in compare_max_gaps(records, constants):
        if row.exceeds_granville:
            rows.append(
                (
                    row.n,
                    int(row.observed),
                    row.x_or_pn,
                    row.model_values["cramer_shanks_n"],
                    row.model_values["cramer_shanks_pn"],
                    row.model_values["granville_n"],
                    row.model_values["granville_pn"],
                )
            )
    return rows


_TABLE2_HEADER = [
    "n",
    "G_n",
    "p_n",
    "log_n_sq",
    "log_pn_sq",
    "granville_n",
    "granville_pn",
]


def write_table2(out: TextIO, rows: list[tuple], config: RunConfig) -> None:
    _write_csv(out, config, _TABLE2_HEADER, rows)


def collect_records(
    limit: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    use_fixture: bool = False,
) -> list[MaxGapRecord]:
    """Sieved records up to the limit, optionally extended by the shipped
    table for records whose p_n lies beyond sieving range."""
    acc = gap_statistics(
        limit, BoundaryRule.STRICT, include_first=True, segment_size=segment_size
    )
    records = max_gap_records(acc)
    if use_fixture:
        known = conjectures.known_max_gap_records()
        best = records[-1].gap if records else 0
        for rec in known:
            if rec.lower_prime + rec.gap >= limit and rec.gap > best:
                records.append(rec)
                best = rec.gap
    return records


def write_records(out: TextIO, records: list[MaxGapRecord], config: RunConfig) -> None:
    header = ["n", "G_n", "p_n"]
    rows = [(r.index, r.gap, r.lower_prime) for r in records]
    _write_csv(out, config, header, rows)


def write_figure_moments(
    out: TextIO,
    config: RunConfig,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
) -> None:
    """Observed moments against k! (log n)^k at one limit."""
    acc = gap_statistics(config.limit, config.rule, config.include_first, segment_size)
    summary = moments(acc, list(config.ks))
    out.write(config.header() + "\n")
    out.write(
        f"# mean={format_value(summary.mean)}"
        f" variance={format_value(summary.variance)}"
        f" taylor_ratio={format_value(summary.taylor_ratio)}\n"
    )
    out.write("n,k,observed,model,ratio\n")
    for row in compare_moments(summary, summary.n, list(config.ks)):
        values = (row.n, row.k, row.observed, row.model_values["exp_moment"], row.ratios["exp_moment"])
        out.write(",".join(format_value(v) for v in values) + "\n")


_FIGURE_MAXGAP_HEADER = [
    "n",
    "G_n",
    "p_n",
    "log_n_sq",
    "log_pn_sq",
    "granville_n",
    "granville_pn",
    "wolf",
    "kourbatov",
    "exceeds_granville_flag",
]


def write_figure_maxgaps(
    out: TextIO,
    records: list[MaxGapRecord],
    config: RunConfig,
    constants: Constants | None = None,
) -> None:
    rows = []
    for row in compare_max_gaps(records, constants):
        rows.append(
            (
                row.n,
                int(row.observed),
                row.x_or_pn,
                row.model_values["cramer_shanks_n"],
                row.model_values["cramer_shanks_pn"],
                row.model_values["granville_n"],
                row.model_values["granville_pn"],
                row.model_values["wolf"],
                row.model_values["kourbatov"],
                bool(row.exceeds_granville),
            )
        )
    _write_csv(out, config, _FIGURE_MAXGAP_HEADER, rows)
