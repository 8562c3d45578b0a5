"""CY0 (quadratic fields) and the elliptic-family identities."""

from __future__ import annotations

from fractions import Fraction

import pytest

from hyperreg.mpnum import special
from hyperreg.regulators.cy0 import (class_number_real_quadratic,
                                     cy0_class_number_check, cy0_regulator,
                                     is_squarefree, selected_cy0_cases)
from hyperreg.regulators.elliptic import elliptic_psi, conifold_catalan_identity
from hyperreg.regulators.reporting import CaseError

F = Fraction


def test_cy0_closed_form(pol):
    ctx = pol.ctx
    r, dev = cy0_regulator(F(1, 7), pol)
    assert abs(r - 2 * ctx.log((5 + ctx.sqrt(21)) / 2)) < pol.tol
    assert dev < pol.tol
    r5, _ = cy0_regulator(F(1, 5), pol)
    assert abs(r5 - 2 * ctx.log((3 + ctx.sqrt(5)) / 2)) < pol.tol
    with pytest.raises(CaseError):
        cy0_regulator(F(1, 3), pol)


def test_cy0_small_t_limit(pol):
    ctx = pol.ctx
    t = F(1, 10 ** 10)
    r, _ = cy0_regulator(t, pol)
    assert abs(r + 2 * ctx.log(ctx.mpf(1) / 10 ** 10)) < ctx.mpf(10) ** -9


def test_class_numbers_known():
    known = {5: 1, 8: 1, 12: 1, 13: 1, 21: 1, 24: 1, 77: 1,
             165: 2, 229: 3, 33: 1, 136: 2, 305: 2}
    for D, h in known.items():
        assert class_number_real_quadratic(D) == h, D


def test_cy0_ratio_oracle(pol):
    ctx = pol.ctx
    for n, h in ((7, 1), (11, 1), (15, 2)):
        rep = cy0_class_number_check(n, pol)
        oracle = F(h, 8)
        assert rep.expected_ratio == oracle
        assert abs(rep.measured_ratio
                   - ctx.mpf(oracle.numerator) / oracle.denominator) < 100 * pol.tol
        assert rep.detected_ratio == oracle
    with pytest.raises(CaseError):
        cy0_class_number_check(9, pol)      # 45 not squarefree


def test_cy0_intro_anchor(pol):
    """zeta'_{Q(sqrt5)}(0) = -(1/2) log((1+sqrt5)/2)."""
    from hyperreg.lfun.dirichlet import dedekind_quadratic_deriv0
    ctx = pol.ctx
    val = dedekind_quadratic_deriv0(5, pol)
    assert abs(val + ctx.log((1 + ctx.sqrt(5)) / 2) / 2) < pol.tol


def test_selected_cases():
    sel = selected_cy0_cases(50)
    assert sel and all(is_squarefree(n * (n - 4)) for n in sel)
    assert all(class_number_real_quadratic(n * (n - 4)) == 1 for n in sel)
    assert 7 in sel and 11 in sel


def test_conifold_identity(pol40):
    ctx = pol40.ctx
    dev, lhs = conifold_catalan_identity(pol40)
    assert dev < ctx.mpf(10) ** -30
    assert abs(lhs - 8 * special("catalan", pol40) / ctx.pi) < ctx.mpf(10) ** -30


def test_psi_interior_and_limit(pol):
    ctx = pol.ctx
    val = elliptic_psi(F(1, 32), pol)
    assert abs(ctx.re(val)) < pol.tol
    # Psi(t)/(-2 pi i) - log t -> 0 as t -> 0
    t = F(1, 10 ** 12)
    dev = elliptic_psi(t, pol) / (-2 * ctx.pi * ctx.mpc(0, 1)) \
        - ctx.log(ctx.mpf(1) / 10 ** 12)
    assert abs(dev) < ctx.mpf(10) ** -11


def test_quadrature_vs_summation_overlap(pol):
    """Quadrature and direct summation agree on the overlap of their domains."""
    from hyperreg.regulators.elliptic import _sum_interior, _sum_quadrature
    for t in (F(1, 20), F(1, 32), F(3, 64)):
        assert abs(_sum_interior(t, pol) - _sum_quadrature(t, pol)) < 10 * pol.tol
