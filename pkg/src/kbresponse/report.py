"""Report container, human-readable rendering and CSV emission.

Values are stored at full precision. Rounding happens only in
:func:`render_text`: percentages to one decimal, times, rates and
utilizations to three, always half away from zero.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Any, Optional, Sequence

# column / fact kinds
PERCENT = "percent"  # stored as a fraction, shown as 0.0-100.0
TIME = "time"
RATE = "rate"
FRACTION = "fraction"
INT = "int"
TEXT = "text"
FLAG = "flag"

_PLACES = {PERCENT: 1, TIME: 3, RATE: 3, FRACTION: 3}


def round_half_away(value: float, places: int) -> Decimal:
    # repr gives the shortest string that round-trips, so 0.0005 stays 0.0005
    exp = Decimal(1).scaleb(-places)
    return Decimal(repr(float(value))).quantize(exp, rounding=ROUND_HALF_UP)


def format_value(value: Any, kind: str) -> str:
    if value is None:
        return "-"
    if kind == FLAG:
        return "yes" if value else "no"
    if kind in _PLACES:
        if isinstance(value, float) and not math.isfinite(value):
            return str(value)
        if kind == PERCENT:
            value = 100.0 * value
        return str(round_half_away(value, _PLACES[kind]))
    return str(value)


@dataclass
class Table:
    name: str
    columns: Sequence[tuple[str, str]]  # (header, kind)
    rows: list[tuple] = field(default_factory=list)

    @property
    def headers(self) -> list[str]:
        return [h for h, _ in self.columns]


@dataclass
class Report:
    title: str
    facts: list[tuple[str, Any, str]] = field(default_factory=list)
    tables: list[Table] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def fact(self, label: str, value: Any, kind: str = TEXT) -> None:
        self.facts.append((label, value, kind))

    def table(self, name: Optional[str] = None) -> Table:
        if name is None:
            return self.tables[0]
        for t in self.tables:
            if t.name == name:
                return t
        raise KeyError(name)


def render_text(report: Report) -> str:
    out = [report.title, "=" * len(report.title)]
    if report.facts:
        width = max(len(label) for label, _, _ in report.facts)
        for label, value, kind in report.facts:
            out.append(f"{label:<{width}}  {format_value(value, kind)}")
    for t in report.tables:
        out.append("")
        out.append(t.name)
        cells = [[format_value(v, kind) for v, (_, kind) in zip(row, t.columns)] for row in t.rows]
        widths = [
            max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(t.headers)
        ]
        out.append("  ".join(h.rjust(w) for h, w in zip(t.headers, widths)))
        out.append("  ".join("-" * w for w in widths))
        for r in cells:
            out.append("  ".join(c.rjust(w) for c, w in zip(r, widths)))
    if report.notes:
        out.append("")
        out.append("Notes:")
        out.extend(f"  [{i}] {note}" for i, note in enumerate(report.notes, start=1))
    return "\n".join(out) + "\n"


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_csv(report: Report, table: Optional[str] = None) -> str:
    """Header plus one row per table row, values at full precision.

    Percent columns are written as fractions, exactly as stored.
    """
    t = report.table(table)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(t.headers)
    for row in t.rows:
        writer.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def read_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))
