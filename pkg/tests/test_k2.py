from __future__ import annotations

from fractions import Fraction

import pytest

from hyperreg.regulators import k2
from hyperreg.regulators.reporting import CaseError

F = Fraction


def test_gamma_half_zero(pol):
    ctx = pol.ctx
    g = k2.gamma_alpha0(F(1, 2), pol)
    assert abs(g - 2 * ctx.sqrt(2) * ctx.pi) < pol.tol


def test_S_at_infinity(pol):
    """S_alpha(z) -> Gamma^alpha_0 as z -> infinity (k = 0 term only)."""
    ctx = pol.ctx
    for alpha in (F(1, 4), F(1, 2), F(3, 4)):
        big = ctx.mpf(10) ** 18
        assert abs(k2.S_alpha(alpha, big, pol) - k2.gamma_alpha0(alpha, pol)) \
            < ctx.mpf(10) ** -15


def test_theta_ladder_exact():
    assert k2.theta_ladder_residual(24) == 0


def test_entries_real(pol):
    ctx = pol.ctx
    mat = k2.k2_entries(ctx.mpf(1024), pol)
    for row in mat.entries:
        for e in row:
            assert getattr(e, "imag", 0) == 0 or abs(ctx.im(e)) < pol.tol


def test_mb_three_way(pol):
    ctx = pol.ctx
    tol15 = ctx.mpf(10) ** -15
    for z in ("0.5", "0.9"):
        dev, _ = k2.mb_compare(ctx.mpf(z), pol)
        assert dev < tol15, z
    for z in ("1.2", "2", "10"):
        dev, q = k2.mb_compare(ctx.mpf(z), pol)
        assert q is not None and dev < tol15, z


def test_mb_right_leading_term(pol):
    """n = 0 term of the right series is 2 sqrt(z)."""
    ctx = pol.ctx
    z = ctx.mpf(10) ** -24
    val = k2.mb_right_series(z, pol)
    assert abs(val - 2 * ctx.sqrt(z)) < ctx.mpf(10) ** -30


def test_dtilde_harmonic_atom():
    """D~ bracket at k = 1: 4 H_5 - 10 H_2 + 6 H_1 + 1/1 = 137/15 - 8 = 17/15."""
    H = [F(0)]
    for j in range(1, 6):
        H.append(H[-1] + F(1, j))
    assert 4 * H[5] == F(137, 15)
    val = 4 * H[5] - 10 * H[2] + 6 * H[1] + F(1, 1)
    assert val == F(17, 15)


def test_monodromy_chain_reality(pol):
    ctx = pol.ctx
    R1, R2, R3, R4 = k2.k2_monodromy_chain(ctx.mpf(1024), pol)
    assert abs(ctx.im(R1)) < pol.tol
    assert abs(ctx.im(R4)) < pol.tol


def test_monodromy_rotation(pol):
    """Once-around substitution: R4 -> R3 and R3 -> -R4."""
    ctx = pol.ctx
    zv = ctx.mpf(1024)
    _, _, R3, R4 = k2.k2_monodromy_chain(zv, pol)
    At = k2._tilde_series(F(1, 4), zv, pol)
    Bt = k2._tilde_series(F(3, 4), zv, pol)
    i = ctx.mpc(0, 1)
    z14 = zv ** ctx.mpf("0.25")
    R4_rot = 4 * ctx.pi * At * (i * z14) + 4 * ctx.pi * Bt * (-i / z14)
    assert abs(R4_rot - R3) < pol.tol * max(1, abs(R3))
    R3_rot = 4 * ctx.pi * i * At * (i * z14) - 4 * ctx.pi * i * Bt * (-i / z14)
    assert abs(R3_rot + R4) < pol.tol * max(1, abs(R4))


def test_chain_vs_entries(pol):
    dev = k2.chain_vs_entries(pol.ctx.mpf(1024), pol)
    assert dev < 100 * pol.tol


def test_det_continuity(pol):
    ctx = pol.ctx
    zv = ctx.mpf(1024)
    r1 = k2.k2_entries(zv, pol).det()
    r2 = k2.k2_entries(zv * (1 + ctx.mpf(10) ** -8), pol).det()
    assert abs(r1 - r2) < ctx.mpf(10) ** -6


def test_integral_model_points():
    for t in (F(1, 16), F(1, 4), F(1), F(9), F(25), F(49), F(4, 1), F(9, 4)):
        assert k2.integral_model_point(t), t
    for t in (F(2), F(3), F(5, 4), F(1, 2)):
        assert not k2.integral_model_point(t), t


def test_k2_det_reports(pol):
    rep = k2.k2_det(F(9), pol)
    assert rep.expected_ratio == F(3)
    assert rep.r_value > 0
    rep2 = k2.k2_det(F(2), pol)
    assert any("not of the form" in n for n in rep2.notes)
    with pytest.raises(CaseError):
        k2.k2_det(F(1, 2048), pol)
