"""Report rendering as CSV or a plain-text table."""

# stdlib
from __future__ import annotations

import csv
import io
import sys
from dataclasses import astuple
from pathlib import Path
from typing import TYPE_CHECKING

# module
from madp.static.core import REPORT_COLUMNS

if TYPE_CHECKING:
    from madp.structs import ExperimentReport

FORMATS = ("csv", "human")


def _number(value: float) -> str:
    return f"{value:.12g}"


def _cells(report: ExperimentReport) -> list[list[str]]:
    rows = []
    for row in report.rows:
        method, state, value, q_evals, iterations, seed = astuple(row)
        rows.append([method, state, _number(value), str(q_evals), str(iterations), str(seed)])
    return rows


def to_csv(report: ExperimentReport) -> str:
    """One header row, then one row per report entry in REPORT_COLUMNS order."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    writer.writerows(_cells(report))
    return buffer.getvalue()


def to_human(report: ExperimentReport) -> str:
    """Aligned table of the CSV data followed by policies and PI value traces."""
    cells = _cells(report)
    widths = [max(len(line[i]) for line in [list(REPORT_COLUMNS), *cells]) for i in range(len(REPORT_COLUMNS))]
    lines = [f"{report.method} (seed {report.seed})", ""]
    for line in [list(REPORT_COLUMNS), *cells]:
        lines.append("  ".join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip())
    if report.policies:
        lines.append("")
        lines.extend(f"{name}: {summary}" for name, summary in report.policies.items())
    for name, trace in report.traces.items():
        lines.append("")
        lines.append(f"{name} value trace:")
        lines.extend(
            f"  {index + 1}: " + " ".join(_number(value) for value in values) for index, values in enumerate(trace)
        )
    return "\n".join(lines) + "\n"


def format_report(report: ExperimentReport, fmt: str = "csv") -> str:
    """Render a report as "csv" or "human" text."""
    if fmt == "csv":
        return to_csv(report)
    if fmt == "human":
        return to_human(report)
    msg = f"'{fmt}' is not a report format. Expected {FORMATS}"
    raise ValueError(msg)


def emit_report(report: ExperimentReport, fmt: str = "csv", path: Path | str | None = None) -> None:
    """Write the report to a file, or to stdout without a path."""
    text = format_report(report, fmt)
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)
