"""Elliptic family: the vanishing-cycle regulator period and its boundary value.

Psi(t) = -2 pi i (log t + sum_{m>0} binom(2m,m)^2 t^m / m) for 0 < |t| <= 1/16.
At the conifold boundary t = 1/16 the series converges only like 1/m^2, so
the value is produced by quadrature of the hypergeometric integrand, and
the identity log 16 - sum = (8/pi) L(chi_-4, 2) is checked to full precision.
"""

from __future__ import annotations

from fractions import Fraction

from ..mpnum import PrecisionPolicy, special
from .reporting import CaseError


def _sum_interior(t: Fraction, pol: PrecisionPolicy):
    ctx = pol.ctx
    tv = ctx.mpf(t.numerator) / t.denominator
    acc = ctx.mpf(0)
    binom = 1
    tp = ctx.mpf(1)
    tol = ctx.mpf(10) ** (-pol.working_digits - 5)
    m = 0
    while True:
        m += 1
        binom = binom * 2 * (2 * m - 1) // m
        tp *= tv
        term = ctx.mpf(binom) ** 2 * tp / m
        acc += term
        if term < tol and m > 8:
            return acc
        if m > pol.max_terms:
            raise CaseError("series cap hit inside the disk; raise max_terms")


def _sum_quadrature(t: Fraction, pol: PrecisionPolicy):
    """sum_{m>0} binom(2m,m)^2 t^m / m = int_0^t (2F1(1/2,1/2;1;16x) - 1) dx/x,
    valid up to and including the conifold boundary t = 1/16."""
    ctx = pol.ctx
    tv = ctx.mpf(t.numerator) / t.denominator
    with ctx.workdps(pol.working_digits + 10):
        def f(x):
            return (ctx.hyp2f1(ctx.mpf(1) / 2, ctx.mpf(1) / 2, 1, 16 * x) - 1) / x
        val = ctx.quad(f, [0, tv / 2, 3 * tv / 4, tv])
    return +val


def psi_sum(t: Fraction, pol: PrecisionPolicy):
    """sum_{m>0} binom(2m,m)^2 t^m / m on (0, 1/16]."""
    if not (0 < t <= Fraction(1, 16)):
        raise CaseError(f"t = {t} outside (0, 1/16]")
    if 16 * t > Fraction(99, 100):
        # too close to the boundary for geometric summation
        return _sum_quadrature(t, pol)
    return _sum_interior(t, pol)


def elliptic_psi(t: Fraction, pol: PrecisionPolicy):
    """Psi(t) = -2 pi i (log t + sum binom^2 t^m/m)."""
    ctx = pol.ctx
    s = psi_sum(t, pol)
    tv = ctx.mpf(t.numerator) / t.denominator
    return -2 * ctx.pi * ctx.mpc(0, 1) * (ctx.log(tv) + s)


def conifold_catalan_identity(pol: PrecisionPolicy):
    """|log 16 - sum_{m>0} binom(2m,m)^2/(16^m m) - 8 Catalan / pi|."""
    ctx = pol.ctx
    lhs = ctx.log(16) - _sum_quadrature(Fraction(1, 16), pol)
    rhs = 8 * special("catalan", pol) / ctx.pi
    return abs(lhs - rhs), lhs
