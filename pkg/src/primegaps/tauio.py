"""Reading, writing and verifying tau gap-count files.

A tau file is plain ASCII: one "gap count" pair per line, gaps even and
strictly ascending, counts positive, single space on write, any
whitespace accepted on read, LF line endings, no header and no trailing
blank line.  Writing then reading then writing again is byte-identical.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .gapstats import TauHistogram, tau_histogram
from .sieve import DEFAULT_SEGMENT_SIZE, BoundaryRule

__all__ = ["TauFormatError", "TauDiff", "TauVerification", "write_tau", "read_tau", "verify_tau"]


class TauFormatError(ValueError):
    """A tau file violated the format; message carries the line number."""


def write_tau(path: str | os.PathLike, histogram: TauHistogram) -> None:
    """Write the histogram in the canonical tau format.

    Only the record-file convention is writable: STRICT boundary and
    first gap excluded, so every gap is even.
    """
    if histogram.rule is not BoundaryRule.STRICT or histogram.include_first:
        raise ValueError("tau files hold STRICT, first-gap-excluded histograms only")
    histogram.validate()
    lines = [f"{d} {histogram.counts[d]}\n" for d in sorted(histogram.counts)]
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.writelines(lines)


def read_tau(path: str | os.PathLike, limit: int) -> TauHistogram:
    """Parse a tau file; the limit is metadata supplied by the caller."""
    counts: dict[int, int] = {}
    last_gap = 0
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            fields = line.split()
            if not fields and line.strip() == "":
                raise TauFormatError(f"{path}:{lineno}: blank line")
            if len(fields) != 2:
                raise TauFormatError(
                    f"{path}:{lineno}: expected 'gap count', got {line.rstrip()!r}"
                )
            try:
                gap, count = int(fields[0]), int(fields[1])
            except ValueError as exc:
                raise TauFormatError(f"{path}:{lineno}: non-integer field") from exc
            if gap < 2 or gap % 2:
                raise TauFormatError(f"{path}:{lineno}: invalid gap {gap}")
            if gap <= last_gap:
                raise TauFormatError(
                    f"{path}:{lineno}: gap {gap} not strictly ascending"
                )
            if count <= 0:
                raise TauFormatError(f"{path}:{lineno}: non-positive count {count}")
            counts[gap] = count
            last_gap = gap
    return TauHistogram(
        limit=limit, rule=BoundaryRule.STRICT, include_first=False, counts=counts
    )


@dataclass(frozen=True)
class TauDiff:
    gap: int
    reference: int
    computed: int


@dataclass(frozen=True)
class TauVerification:
    """Outcome of recomputing a tau file from scratch."""

    limit: int
    reference_total: int
    computed_total: int
    differences: list[TauDiff]
    truncated: bool

    @property
    def matches(self) -> bool:
        return not self.differences and self.reference_total == self.computed_total

    def summary(self) -> str:
        if self.matches:
            return f"exact agreement at limit {self.limit} ({self.computed_total} gaps)"
        head = (
            f"MISMATCH at limit {self.limit}: reference holds "
            f"{self.reference_total} gaps, recomputation {self.computed_total}"
        )
        lines = [head]
        for diff in self.differences:
            lines.append(
                f"  gap {diff.gap}: reference {diff.reference}, computed {diff.computed}"
            )
        if self.truncated:
            lines.append("  ... further differences suppressed")
        return "\n".join(lines)


_MAX_REPORTED_DIFFS = 10


def verify_tau(
    reference_path: str | os.PathLike,
    limit: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
) -> TauVerification:
    """Recompute tau counts at the limit and diff against a reference file."""
    reference = read_tau(reference_path, limit)
    computed = tau_histogram(
        limit, BoundaryRule.STRICT, include_first=False, segment_size=segment_size
    )
    diffs = []
    for gap in sorted(set(reference.counts) | set(computed.counts)):
        ref = reference.counts.get(gap, 0)
        got = computed.counts.get(gap, 0)
        if ref != got:
            diffs.append(TauDiff(gap=gap, reference=ref, computed=got))
    return TauVerification(
        limit=limit,
        reference_total=reference.total,
        computed_total=computed.total,
        differences=diffs[:_MAX_REPORTED_DIFFS],
        truncated=len(diffs) > _MAX_REPORTED_DIFFS,
    )
