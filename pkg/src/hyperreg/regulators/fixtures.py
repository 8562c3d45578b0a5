"""Fixture files: expected ratios and externally supplied L-values.

fixtures/<case>.json holds a list of entries
  {"t": "p/q" | null, "expected_ratio": "p/q" | null,
   "L_value": decimal string | null, "L_derivative_order": 0|1|2}
plus free-form provenance keys.  The loader refuses L-values carrying
fewer digits than the active precision target.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from ..mpnum import PrecisionPolicy

__all__ = ["FixtureError", "load_fixture", "fixture_L_value"]


class FixtureError(ValueError):
    pass


def load_fixture(case: str, fixtures_dir) -> list:
    path = Path(fixtures_dir) / f"{case}.json"
    if not path.exists():
        return []
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{path}: {exc}") from None
    if not isinstance(doc, list):
        raise FixtureError(f"{path}: expected a list of entries")
    out = []
    for row in doc:
        entry = dict(row)
        entry["t"] = Fraction(row["t"]) if row.get("t") else None
        entry["expected_ratio"] = (Fraction(row["expected_ratio"])
                                   if row.get("expected_ratio") else None)
        out.append(entry)
    return out


def _decimal_digits(text: str) -> int:
    mantissa = text.split("e")[0].split("E")[0].lstrip("+-")
    return len(mantissa.replace(".", "").lstrip("0"))


def fixture_L_value(entry: dict, pol: PrecisionPolicy):
    """The stored L-value as an mpf, or None; refuses underprecise fixtures."""
    raw = entry.get("L_value")
    if raw is None:
        return None
    if _decimal_digits(raw) < pol.target_digits:
        raise FixtureError(
            f"fixture L-value has {_decimal_digits(raw)} digits; "
            f"policy requires {pol.target_digits}")
    return pol.ctx.mpf(raw)
