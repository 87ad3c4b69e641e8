"""Row tables rendered as CSV or JSON with exact rationals kept as ``"a/b"`` strings."""

import csv
import io
import json
from fractions import Fraction
from typing import List, Optional, Sequence

SCHEMA_VERSION = 1


def _cell(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    return v


def _json_cell(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (int, float)) or v is None:
        return v
    # numpy scalars
    return v.item()


def render(rows: Sequence[dict], columns: List[str], fmt: str = "csv", manifest: Optional[str] = None) -> str:
    if fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, "columns": list(columns),
               "rows": [{c: _json_cell(r.get(c)) for c in columns} for r in rows]}
        if manifest:
            doc["manifest"] = manifest
        return json.dumps(doc, indent=2) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    if manifest:
        buf.write(f"# manifest: {manifest}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow(["" if r.get(c) is None else _cell(r.get(c)) for c in columns])
    return buf.getvalue()


def parse_value(v):
    """Inverse of the cell encoding: ints, rationals ``a/b``, floats, empty -> None."""
    if v is None or isinstance(v, (int, float)):
        return v
    if v == "":
        return None
    if "/" in v:
        return Fraction(v)
    try:
        return int(v)
    except ValueError:
        return float(v)


def parse(text: str, fmt: str = "csv") -> List[dict]:
    if fmt == "json":
        doc = json.loads(text)
        # strings only ever hold rationals in JSON, so "1" stays a Fraction
        conv = lambda v: Fraction(v) if isinstance(v, str) else v
        return [{k: conv(v) for k, v in row.items()} for row in doc["rows"]]
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return [{k: parse_value(v) for k, v in row.items()} for row in csv.DictReader(lines)]
