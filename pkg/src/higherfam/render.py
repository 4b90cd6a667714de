"""CSV / JSON / TeX renderings of the exact tables.

Every cell is an exact rational string; nothing is ever printed as a decimal.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Sequence

from .combinatorics import format_rational

FORMATS = ("csv", "json", "tex")


def tex_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return f"${x.numerator}$"
    sign = "-" if x < 0 else ""
    return f"${sign}\\frac{{{abs(x.numerator)}}}{{{x.denominator}}}$"


def _csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _tex_tabular(corner: str, col_labels: Sequence[str], rows: Sequence[tuple[str, list[str]]]) -> str:
    lines = [
        f"\\begin{{tabular}}{{c|{'c' * len(col_labels)}}}",
        " & ".join([corner, *(f"${c}$" for c in col_labels)]) + " \\\\ \\hline",
    ]
    for label, cells in rows:
        lines.append(" & ".join([label, *cells]) + " \\\\")
    lines.append("\\end{tabular}")
    return "\n".join(lines) + "\n"


def bernoulli_table(values: Sequence[Fraction], fmt: str) -> str:
    """Rows (m, B_m) for m = 0..len(values)-1."""
    if fmt == "csv":
        return _csv(["m", "B"], [[m, format_rational(b)] for m, b in enumerate(values)])
    if fmt == "json":
        return _json([{"m": m, "B": format_rational(b)} for m, b in enumerate(values)])
    if fmt == "tex":
        return _tex_tabular(
            "$m$", [str(m) for m in range(len(values))], [("$B_m$", [tex_rational(b) for b in values])]
        )
    raise ValueError(f"unknown format {fmt!r}")


def b_table(j: int, rows: Sequence[Sequence[Fraction]], fmt: str) -> str:
    """``rows[i-1]`` holds b_(i,j,0..i+j); the layout is rows i, columns k."""
    width = max(len(r) for r in rows)
    if fmt == "csv":
        out = []
        for i, r in enumerate(rows, start=1):
            cells = [format_rational(x) for x in r]
            out.append([i, *cells, *[""] * (width - len(cells))])
        return _csv(["i", *(f"k{k}" for k in range(width))], out)
    if fmt == "json":
        return _json(
            {
                "j": j,
                "rows": [
                    {"i": i, "b": [format_rational(x) for x in r]}
                    for i, r in enumerate(rows, start=1)
                ],
            }
        )
    if fmt == "tex":
        return _tex_tabular(
            "$k$",
            [str(k) for k in range(width)],
            [(f"$b_{{({i},{j},k)}}$", [tex_rational(x) for x in r]) for i, r in enumerate(rows, start=1)],
        )
    raise ValueError(f"unknown format {fmt!r}")


def c_table(rows: Sequence[Sequence[Fraction]], fmt: str) -> str:
    """``rows[m-1][p-1]`` holds c_(m,p)."""
    width = max(len(r) for r in rows)
    if fmt == "csv":
        return _csv(
            ["m", *(f"p{p}" for p in range(1, width + 1))],
            [[m, *(format_rational(x) for x in r)] for m, r in enumerate(rows, start=1)],
        )
    if fmt == "json":
        return _json(
            {"rows": [{"m": m, "c": [format_rational(x) for x in r]} for m, r in enumerate(rows, start=1)]}
        )
    if fmt == "tex":
        return _tex_tabular(
            "$p$",
            [str(p) for p in range(1, width + 1)],
            [(f"$c_{{({m},p)}}$", [tex_rational(x) for x in r]) for m, r in enumerate(rows, start=1)],
        )
    raise ValueError(f"unknown format {fmt!r}")
