"""Rank-2 number-field regulators from Puiseux-type hypergeometric series.

For index data (a, b) define
    G(s)   = prod_i Gamma(s - a_i + 1)^-1 * prod_i Gamma(-s + b_i)^-1,
    S_Aj(t) = sum_l G(l + a_j) (lam t)^(l + a_j) / (l + a_j),
    S_n(t) = (1/G(0)) sum_j e(n a_j) S_Aj(t),
with lam = exp(sum psi(a_i) - sum psi(b_i)) = 1/C, C the exact rational
scale of the data.  Exponentials of suitable S_n are roots of quintic
polynomials; their logs assemble the rank-2 regulator determinant.
"""

from __future__ import annotations

from fractions import Fraction

from ..hypergeom import HGData, parse_hg, scale_C
from ..mpnum import PrecisionPolicy
from .reporting import CaseError, RegulatorReport

DATA_J0 = parse_hg("1/10,3/10,7/10,9/10;1/4,1/2,3/4,1")
DATA_J1 = parse_hg("1/5,2/5,3/5,4/5;1/4,1/2,3/4,1")


def gamma_big(h: HGData, s, pol: PrecisionPolicy):
    """G(s) = prod Gamma(s - a_i + 1)^-1 prod Gamma(-s + b_i)^-1."""
    ctx = pol.ctx
    val = ctx.mpf(1)
    for ai in h.a:
        val /= ctx.gamma(s - ctx.mpf(ai.numerator) / ai.denominator + 1)
    for bi in h.b:
        val /= ctx.gamma(-s + ctx.mpf(bi.numerator) / bi.denominator)
    return val


def _gamma_ratio(h: HGData, s: Fraction) -> Fraction:
    """G(s+1)/G(s) = prod_i (b_i - s - 1) / prod_i (s + 1 - a_i), exact."""
    num = Fraction(1)
    for bi in h.b:
        num *= bi - s - 1
    den = Fraction(1)
    for ai in h.a:
        den *= s + 1 - ai
    return num / den


def S_A(h: HGData, j: int, t: Fraction, pol: PrecisionPolicy):
    """S_{A_j}(t), converging for |t| < C (ratio lam*t = t/C)."""
    ctx = pol.ctx
    C = scale_C(h)
    lam_t = Fraction(t, 1) / C
    if not (0 < lam_t < 1):
        raise CaseError(f"series for S_A diverges at t = {t} (lam t = {lam_t})")
    aj = h.a[j]
    x = ctx.mpf(lam_t.numerator) / lam_t.denominator
    g = gamma_big(h, ctx.mpf(aj.numerator) / aj.denominator, pol)
    xp = ctx.power(x, ctx.mpf(aj.numerator) / aj.denominator)
    acc = ctx.mpf(0)
    tol = ctx.mpf(10) ** (-pol.working_digits - 5)
    s = aj
    l = 0
    while True:
        denom = ctx.mpf(s.numerator) / s.denominator
        term = g * xp / denom
        acc += term
        if abs(term) < tol * max(1, abs(acc)) and l > 8:
            break
        if l > pol.max_terms:
            raise CaseError("S_A truncation cap hit")
        r = _gamma_ratio(h, s)
        g = g * ctx.mpf(r.numerator) / r.denominator
        xp *= x
        s += 1
        l += 1
    return acc


def S_n(h: HGData, n: int, t: Fraction, pol: PrecisionPolicy):
    """S_n(t) = (1/G(0)) sum_j e(n a_j) S_Aj(t)."""
    ctx = pol.ctx
    g0 = gamma_big(h, ctx.mpf(0), pol)
    acc = ctx.mpc(0)
    for j, aj in enumerate(h.a):
        phase = ctx.expjpi(2 * n * ctx.mpf(aj.numerator) / aj.denominator)
        acc += phase * S_A(h, j, t, pol)
    return acc / g0


def quintic_S(J: int, n: int, t: Fraction, pol: PrecisionPolicy):
    if J not in (0, 1):
        raise CaseError("J selects the 0 or 1 index family")
    return S_n(DATA_J0 if J == 0 else DATA_J1, n, t, pol)


def _poly_J1(x, t, ctx):
    return (x - 1) ** 5 - t ** 2 * x


def _poly_J0(X, t, ctx):
    return (X - 1) ** 5 + 16 * t * (X ** 3 + X ** 2)


def quintic_roots_residuals(pol: PrecisionPolicy, t: Fraction = Fraction(1)):
    """Residuals of the Puiseux exponentials in their quintics at t,
    minimized over the branch index n; returns (res0, res1, branch0, branch1)."""
    ctx = pol.ctx
    tv = ctx.mpf(t.numerator) / t.denominator
    best0 = best1 = None
    for n in range(1, 5):
        x1 = ctx.exp(quintic_S(1, n, t * t, pol))
        r1 = abs(_poly_J1(x1, tv, ctx))
        if best1 is None or r1 < best1[0]:
            best1 = (r1, n)
        x0 = ctx.exp(quintic_S(0, n, 256 * t * t, pol) / 5)
        r0 = abs(_poly_J0(x0, tv * tv, ctx))
        if best0 is None or r0 < best0[0]:
            best0 = (r0, n)
    return best0[0], best1[0], best0[1], best1[1]


def quintic_intertwining(pol: PrecisionPolicy, t: Fraction = Fraction(1)):
    """phi(exp(S1(t^2))) = exp(S0(256 t^2)/5) with
    phi(x) = -((x-1)^3 - t x + t/2) * 2/t; residual minimized over branches."""
    ctx = pol.ctx
    tv = ctx.mpf(t.numerator) / t.denominator
    best = None
    for n in range(1, 5):
        x1 = ctx.exp(quintic_S(1, n, t * t, pol))
        phi = -((x1 - 1) ** 3 - tv * x1 + tv / 2) * 2 / tv
        for n0 in range(1, 5):
            x0 = ctx.exp(quintic_S(0, n0, 256 * t * t, pol) / 5)
            r = abs(phi - x0)
            if best is None or r < best[0]:
                best = (r, n, n0)
    return best


def quintic_det(pol: PrecisionPolicy) -> RegulatorReport:
    """(25/2) det Re [[S0_1(256), S1_1(1)], [S0_3(256), S1_3(1)]]."""
    ctx = pol.ctx
    m = [[quintic_S(0, 1, Fraction(256), pol), quintic_S(1, 1, Fraction(1), pol)],
         [quintic_S(0, 3, Fraction(256), pol), quintic_S(1, 3, Fraction(1), pol)]]
    det = ctx.re(m[0][0]) * ctx.re(m[1][1]) - ctx.re(m[0][1]) * ctx.re(m[1][0])
    val = ctx.mpf(25) / 2 * det
    rep = RegulatorReport("quintic", None, val)
    res0, res1, b0, b1 = quintic_roots_residuals(pol)
    rep.check("puiseux_root_residual_J0", res0, pol)
    rep.check("puiseux_root_residual_J1", res1, pol)
    inter = quintic_intertwining(pol)
    rep.check("phi_intertwining_residual", inter[0], pol)
    rep.notes.append(f"branch assignment: roots (n0={b0}, n1={b1}), "
                     f"intertwining pair {inter[1:]} chosen by minimal residual")
    return rep
