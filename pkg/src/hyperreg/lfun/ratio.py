"""Ratio reports: L-derivative over regulator determinant, per case and point."""

from __future__ import annotations

from fractions import Fraction

from ..mpnum import PrecisionPolicy
from ..regulators import appb, cy0, k2, k4
from ..regulators.fixtures import fixture_L_value, load_fixture
from ..regulators.reporting import (CaseError, RegulatorReport, check_case,
                                    detect_rational)

__all__ = ["ratio_report"]


def _find_entry(rows: list, t: Fraction):
    for row in rows:
        if row.get("t") == t:
            return row
    return None


def ratio_report(case: str, t: Fraction, pol: PrecisionPolicy,
                 fixtures_dir="fixtures") -> RegulatorReport:
    """Assemble r(t) and, when L-data is available, the measured ratio."""
    check_case(case)
    rows = load_fixture(case, fixtures_dir)
    entry = _find_entry(rows, t)
    lval = fixture_L_value(entry, pol) if entry else None

    if case == "k4":
        rep = k4.k4_det(t, pol, fixture=lval)
        if entry and entry.get("expected_ratio") is not None:
            rep.expected_ratio = entry["expected_ratio"]
    elif case == "k2":
        rep = k2.k2_det(t, pol, fixture=lval)
        if entry and entry.get("expected_ratio") is not None:
            rep.expected_ratio = entry["expected_ratio"]
    elif case == "appB":
        rep = appb.appB_det(t, pol)
        if lval is not None:
            rep.measured_ratio = lval / rep.r_value
            rep.detected_ratio = detect_rational(rep.measured_ratio, pol.tol)
        if entry and entry.get("expected_ratio") is not None:
            rep.expected_ratio = entry["expected_ratio"]
    elif case == "cy0":
        if t.numerator != 1:
            raise CaseError("cy0 ratio points are t = 1/n")
        rep = cy0.cy0_class_number_check(t.denominator, pol)
    else:
        raise CaseError(f"no ratio pipeline for case {case!r}")

    if rep.measured_ratio is None and lval is None and case != "cy0":
        rep.notes.append("regulator-only: no L-data available")
    return rep
