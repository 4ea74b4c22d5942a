"""JSON and CSV encodings of the report objects.

Rationals become ``{"num": "...", "den": "..."}`` and big integers decimal
strings, so nothing is lost through a float.  JSON is written with sorted keys
and a trailing newline; re-serializing a parsed report reproduces it byte for
byte.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict
from fractions import Fraction
from typing import Any, Sequence

SCHEMA_VERSION = 1


def rational_to_json(q: Fraction) -> dict[str, str]:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def rational_from_json(obj: dict[str, str]) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def clean_float(x: float) -> float | None:
    return None if math.isnan(x) or math.isinf(x) else x


def exact_stats_json(stats) -> dict[str, Any]:
    return {
        "k": stats.k,
        "a": rational_to_json(stats.a),
        "s2": str(stats.s2),
        "s2_normalized": rational_to_json(stats.s2_normalized),
        "var": rational_to_json(stats.variance),
    }


def oracle_json(report) -> dict[str, Any]:
    return {
        "m": report.m,
        "f": report.f,
        "total_vectors": str(report.total_vectors),
        "per_k": [{"k": k, "sum_mk": str(s), "sum_mk_sq": str(sq)} for k, s, sq in report.per_k],
    }


def summary_json(summary) -> dict[str, Any]:
    return {
        "m": summary.m,
        "f": summary.f,
        "trials": summary.trials,
        "seed": str(summary.seed),
        "window": summary.window,
        "per_k": [
            {
                "k": s.k,
                "mean_ratio": s.mean_ratio,
                "sample_variance": s.sample_variance,
                "within_window_fraction": s.within_window_fraction,
                "sum_mk": str(s.sum_mk),
                "sum_mk_sq": str(s.sum_mk_sq),
            }
            for s in summary.per_k
        ],
    }


def dataclass_json(obj) -> dict[str, Any]:
    return _scrub(asdict(obj))


def _scrub(value):
    if isinstance(value, dict):
        return {k: _scrub(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_scrub(v) for v in value]
    if isinstance(value, frozenset):
        return sorted(value)
    if isinstance(value, float):
        return clean_float(value)
    if isinstance(value, Fraction):
        return rational_to_json(value)
    return value


def envelope(command: str, body: dict[str, Any]) -> dict[str, Any]:
    return {"schema_version": SCHEMA_VERSION, "command": command, **body}


def dumps_json(obj: dict[str, Any]) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def dumps_csv(rows: Sequence[dict[str, Any]]) -> str:
    if not rows:
        return ""
    fields: list[str] = []
    for row in rows:
        for key in row:
            if key not in fields:
                fields.append(key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()
