"""Serialization of dimension tables: JSON records, CSV rows, pretty text."""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable

from .ce import conventions
from .linalg import DimensionTable

CSV_HEADER = ["surface", "field", "weight", "degree", "dim"]


def weight_record(table: DimensionTable, weight: int, surface: str | None = None) -> dict:
    """One JSON result object for a single weight."""
    degs = table.by_degree(weight)
    start = min(0, min(degs, default=0))
    dims = table.dims_list(weight, start)
    rec = {
        "surface": surface or table.metadata.get("surface", ""),
        "field": table.metadata.get("field", ""),
        "weight": weight,
        "k": weight,
        "dims_by_total_degree": dims,
        "dims": dims,
        "bidegrees": table.bidegree_rows(weight),
        "conventions": {k: table.metadata.get(k, v) for k, v in conventions().items()},
    }
    if start:
        rec["degree_offset"] = start
    return rec


def table_from_records(records: Iterable[dict]) -> DimensionTable:
    """Inverse of :func:`weight_record` (up to metadata)."""
    tab = DimensionTable()
    weights = []
    for rec in records:
        w = rec["weight"]
        weights.append(w)
        tab.metadata.setdefault("field", rec.get("field", ""))
        tab.metadata.setdefault("surface", rec.get("surface", ""))
        tab.metadata.update(rec.get("conventions", {}))
        if rec.get("bidegrees"):
            for row in rec["bidegrees"]:
                tab.add(w, row["s"], row["t"], row["dim"])
        else:
            off = rec.get("degree_offset", 0)
            for i, n in enumerate(rec["dims_by_total_degree"]):
                if n:
                    tab.totals[(w, off + i)] = n
    tab.metadata["weights"] = weights
    return tab


def to_json_lines(table: DimensionTable, surface: str | None = None) -> str:
    return "\n".join(json.dumps(weight_record(table, w, surface)) for w in table.weights())


def to_csv(table: DimensionTable, surface: str | None = None) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(CSV_HEADER)
    surf = surface or table.metadata.get("surface", "")
    for w in table.weights():
        for d, n in enumerate(table.dims_list(w)):
            wr.writerow([surf, table.metadata.get("field", ""), w, d, n])
    return buf.getvalue()


def to_pretty(table: DimensionTable, title: str = "") -> str:
    weights = table.weights()
    top = max((max(table.by_degree(w), default=0) for w in weights), default=0)
    head = ["k \\ i"] + [str(i) for i in range(top + 1)]
    rows = [[str(w)] + [str(table.get(w, i)) for i in range(top + 1)] for w in weights]
    widths = [max(len(r[c]) for r in [head] + rows) for c in range(len(head))]
    lines = []
    if title:
        lines.append(title)
    for r in [head] + rows:
        lines.append("  ".join(x.rjust(n) for x, n in zip(r, widths)))
    return "\n".join(lines)
