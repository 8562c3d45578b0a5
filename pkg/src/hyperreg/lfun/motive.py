"""Smoothed approximate-functional-equation evaluator for motive L-functions.

Lambda(s) = N^(s/2) gamma(s) L(s) with gamma(s) a product of
Gamma_R(s + mu) = pi^(-(s+mu)/2) Gamma((s+mu)/2) and
Gamma_C(s + nu) = 2 (2 pi)^(-(s+nu)) Gamma(s + nu) factors, satisfying
Lambda(s) = sign * Lambda(w + 1 - s).

The incomplete-Mellin kernel F(s, y) = (1/2 pi i) int gamma(s+u) y^(-u) du/u
is computed on a truncated vertical line with a uniform trapezoid rule;
nodes are cached per (gamma data, s, precision) and reused across all y
through a single complex-power recurrence.  Derivatives in s use kernels
with the digamma-weighted integrand.  At points where gamma has a pole of
order m (trivial zeros), the order-m derivative comes from the leading
Taylor coefficient Lambda(s0) / (N^(s0/2) lim (s-s0)^m gamma(s)).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from ..mpnum import PrecisionPolicy
from .euler import EulerFactorTable, dirichlet_coefficients

__all__ = ["LFunctionSpec", "motive_L", "lambda_derivs", "CoverageError",
           "MotiveError"]


class MotiveError(ValueError):
    pass


class CoverageError(MotiveError):
    """Euler table does not cover the primes the error target demands."""

    def __init__(self, msg, required):
        super().__init__(msg)
        self.required = required


@dataclass
class LFunctionSpec:
    degree: int
    weight: int
    conductor: int
    gamma_shifts: tuple            # of ("R"|"C", Fraction)
    sign: complex = 1
    euler: EulerFactorTable | None = None
    poles: tuple = ()              # of (s0, residue of Lambda), simple poles
    label: str = ""

    def __post_init__(self):
        if self.conductor < 1:
            raise MotiveError("conductor must be positive")
        for kind, _ in self.gamma_shifts:
            if kind not in ("R", "C"):
                raise MotiveError("gamma factor kind must be R or C")

    def gamma_signature(self):
        return tuple((k, Fraction(sh)) for k, sh in self.gamma_shifts)


def _gamma_value(spec, ctx, s):
    val = ctx.mpf(1)
    for kind, sh in spec.gamma_shifts:
        x = s + ctx.mpf(Fraction(sh).numerator) / Fraction(sh).denominator
        if kind == "R":
            val = val * ctx.power(ctx.pi, -x / 2) * ctx.gamma(x / 2)
        else:
            val = val * 2 * ctx.power(2 * ctx.pi, -x) * ctx.gamma(x)
    return val


def _gamma_logderiv(spec, ctx, s, order):
    """order 1 -> sum dlog factors; order 2 -> its derivative."""
    acc = ctx.mpf(0)
    for kind, sh in spec.gamma_shifts:
        x = s + ctx.mpf(Fraction(sh).numerator) / Fraction(sh).denominator
        if kind == "R":
            acc += (-ctx.log(ctx.pi) / 2 + ctx.psi(0, x / 2) / 2) if order == 1 \
                else ctx.psi(1, x / 2) / 4
        else:
            acc += (-ctx.log(2 * ctx.pi) + ctx.psi(0, x)) if order == 1 \
                else ctx.psi(1, x)
    return acc


def gamma_pole_order(spec, s0: Fraction) -> int:
    m = 0
    for kind, sh in spec.gamma_shifts:
        x = Fraction(s0) + Fraction(sh)
        if kind == "R":
            if x <= 0 and x.denominator == 1 and x % 2 == 0:
                m += 1
        else:
            if x <= 0 and x.denominator == 1:
                m += 1
    return m


def _gamma_pole_limit(spec, ctx, s0: Fraction):
    """lim (s - s0)^m gamma(s) at a pole of order m."""
    val = ctx.mpf(1)
    s0v = ctx.mpf(s0.numerator) / s0.denominator
    for kind, sh in spec.gamma_shifts:
        x = Fraction(s0) + Fraction(sh)
        xv = s0v + ctx.mpf(Fraction(sh).numerator) / Fraction(sh).denominator
        if kind == "R":
            if x <= 0 and x.denominator == 1 and x % 2 == 0:
                j = int(-x) // 2
                val *= 2 * (-1) ** j * ctx.power(ctx.pi, j) / ctx.factorial(j)
            else:
                val *= ctx.power(ctx.pi, -xv / 2) * ctx.gamma(xv / 2)
        else:
            if x <= 0 and x.denominator == 1:
                j = int(-x)
                val *= 2 * (-1) ** j * ctx.power(2 * ctx.pi, j) / ctx.factorial(j)
            else:
                val *= 2 * ctx.power(2 * ctx.pi, -xv) * ctx.gamma(xv)
    return val


# ---------------------------------------------------------------------------
# kernel on a truncated vertical line
# ---------------------------------------------------------------------------

_kernel_cache: dict = {}
_kernel_lock = threading.Lock()


class _Kernel:
    """F_d(s, y) = (1/2 pi i) int gamma(s+u) ell(s+u)^indicators y^-u du/u.

    deriv 0, 1, 2 multiply the integrand by 1, ell, ell^2 + ell'.
    Valid for real s, c > 0, y > 0.
    """

    def __init__(self, spec, s_val, c, pol: PrecisionPolicy, deriv: int = 0):
        ctx = pol.ctx
        self.ctx = ctx
        wd = pol.working_digits
        # real parts of the integrand poles in u: u = 0 plus the gamma poles
        u_poles = [ctx.mpf(0)]
        for kind, sh in spec.gamma_shifts:
            shv = ctx.mpf(Fraction(sh).numerator) / Fraction(sh).denominator
            base = -(s_val + shv)
            step = 2 if kind == "R" else 1
            u = base
            while u > ctx.mpf("0.01"):
                u_poles.append(u)
                u -= step
        u_max = max(u_poles)
        c = max(c, u_max + ctx.mpf("0.75"))
        self.c = c
        # trapezoid step from the distance to the nearest pole of the strip
        d_min = min(c - u for u in u_poles)
        d_min = min(d_min, c)
        self.h = 2 * ctx.pi * d_min / ((wd + 8) * ctx.log(10))
        nodes = []
        k = 0
        floor = ctx.mpf(10) ** (-(wd + 8))
        while True:
            t = k * self.h
            u = ctx.mpc(c, t)
            g = _gamma_value(spec, ctx, s_val + u)
            if deriv >= 1:
                ell = _gamma_logderiv(spec, ctx, s_val + u, 1)
                g = g * ell if deriv == 1 else g * (ell * ell + _gamma_logderiv(spec, ctx, s_val + u, 2))
            val = g / u
            nodes.append(val)
            if k > 8 and abs(val) < floor:
                break
            if k > 40000:
                raise MotiveError("kernel quadrature failed to decay")
            k += 1
        self.nodes = nodes

    def __call__(self, y):
        ctx = self.ctx
        lny = ctx.log(y)
        rot = ctx.expj(-self.h * lny)
        acc = self.nodes[0] / 2
        r = ctx.mpc(1)
        for g in self.nodes[1:]:
            r = r * rot
            acc += g * r
        # full-line trapezoid via conjugate symmetry: f(-t) = conj(f(t))
        total = 2 * acc.real * self.h / (2 * ctx.pi)
        return ctx.power(y, -self.c) * total


def _kernel(spec, s_val, c, pol, deriv):
    key = (spec.gamma_signature(), repr(s_val), repr(c), pol.working_digits, deriv)
    with _kernel_lock:
        if key in _kernel_cache:
            return _kernel_cache[key]
    k = _Kernel(spec, s_val, c, pol, deriv)
    with _kernel_lock:
        _kernel_cache[key] = k
    return k


# ---------------------------------------------------------------------------
# Lambda and L values
# ---------------------------------------------------------------------------

def _sum_side(spec, s_val, pol, order: int, A, mirror: bool):
    """sum_n a_n n^(-sigma) N^(sigma/2) (d/ds)^order [...] for one side.

    mirror = False: sigma = s0, argument y = n/(A sqrt(N));
    mirror = True:  sigma = w+1-s0, y = n A / sqrt(N); d/ds brings a -1.
    """
    ctx = pol.ctx
    w = spec.weight
    sigma = (w + 1 - s_val) if mirror else s_val
    sig_abs = ctx.mpf(w) / 2 + 1
    c = max(sig_abs - sigma + ctx.mpf("0.75"), ctx.mpf("0.75"))
    kers = [_kernel(spec, sigma, c, pol, d) for d in range(order + 1)]
    sqN = ctx.sqrt(ctx.mpf(spec.conductor))
    lnN2 = ctx.log(spec.conductor) / 2
    if spec.euler is None:
        raise MotiveError("spec has no Euler data")
    # break threshold above the kernel's trapezoid noise plateau
    floor = ctx.mpf(10) ** (-(pol.working_digits - 6))
    M_cap = spec.euler.p_max
    a = dirichlet_coefficients(spec.euler, M_cap)
    total = ctx.mpf(0)
    quiet = 0
    n_used = 0
    for n in range(1, M_cap + 1):
        an = a[n]
        yn = n / (sqN * A) if not mirror else n * A / sqN
        n_used = n
        if an == 0:
            # the kernel only shrinks with n; reuse the quiet counter
            if quiet:
                quiet += 1
                if quiet >= 8 and n > sqN:
                    break
            continue
        base = an * ctx.power(n, -sigma) * ctx.power(ctx.mpf(spec.conductor), sigma / 2)
        if order == 0:
            term = base * kers[0](yn)
        else:
            sgn = -1 if mirror else 1
            lfac = (-ctx.log(n) + lnN2)
            if order == 1:
                term = base * (sgn * lfac * kers[0](yn) + sgn * kers[1](yn))
            else:
                term = base * (lfac * lfac * kers[0](yn) + 2 * lfac * kers[1](yn)
                               + kers[2](yn))
        total += term
        if abs(term) < floor and n > sqN:
            quiet += 1
            if quiet >= 8:
                break
        else:
            quiet = 0
    else:
        needed = int(2 * M_cap) + 100
        raise CoverageError(
            f"Euler coverage P_max={spec.euler.p_max} insufficient "
            f"(series still contributing at n={M_cap}); need roughly {needed}",
            required=needed)
    return total, n_used


def _pole_correction(spec, ctx, s_val, order, A):
    corr = ctx.mpf(0)
    for (p0, res) in spec.poles:
        p0v = ctx.mpf(Fraction(p0).numerator) / Fraction(p0).denominator
        d = p0v - s_val
        if d == 0:
            raise MotiveError("evaluation point sits on a pole of Lambda")
        Au = ctx.power(A, d)
        lnA = ctx.log(A)
        if order == 0:
            corr += res * Au / d
        elif order == 1:
            corr += res * Au * (-lnA / d + 1 / d ** 2)
        else:
            corr += res * Au * (lnA ** 2 / d - 2 * lnA / d ** 2 + 2 / d ** 3)
    return corr


def lambda_derivs(spec: LFunctionSpec, s0, order: int, pol: PrecisionPolicy,
                  cutoff_A=None):
    """[Lambda(s0), ..., Lambda^(order)(s0)] by the smoothed AFE."""
    ctx = pol.ctx
    A = ctx.mpf(1) if cutoff_A is None else ctx.convert(cutoff_A)
    s_val = ctx.mpf(Fraction(s0).numerator) / Fraction(s0).denominator \
        if isinstance(s0, (int, Fraction)) else ctx.convert(s0)
    out = []
    for d in range(order + 1):
        right, _ = _sum_side(spec, s_val, pol, d, A, mirror=False)
        left, _ = _sum_side(spec, s_val, pol, d, A, mirror=True)
        sign = ctx.mpc(spec.sign) if not isinstance(spec.sign, (int, float)) \
            else ctx.mpf(spec.sign)
        val = right + sign * left - _pole_correction(spec, ctx, s_val, d, A)
        if hasattr(val, "imag") and abs(val.imag) < ctx.mpf(10) ** (-pol.target_digits):
            val = val.real
        out.append(val)
    return out


def motive_L(spec: LFunctionSpec, s0, derivative_order: int, pol: PrecisionPolicy,
             cutoff_A=None, self_test: bool = True):
    """L-derivative at s0 with an error estimate: returns (value, err).

    At trivial zeros forced by gamma poles of order m, only
    derivative_order == m is meaningful and the value is
    m! Lambda(s0) / (N^(s0/2) lim (s-s0)^m gamma(s)).
    """
    ctx = pol.ctx
    s0f = Fraction(s0) if isinstance(s0, (int, Fraction)) else None
    m = gamma_pole_order(spec, s0f) if s0f is not None else 0
    err = ctx.mpf(0)
    if self_test:
        lamA = lambda_derivs(spec, s0, 0, pol, cutoff_A=ctx.mpf("1.31"))[0]
        lam1 = lambda_derivs(spec, s0, 0, pol)[0]
        err = abs(lamA - lam1)
        if err > ctx.mpf(10) ** (-pol.target_digits + 4):
            raise MotiveError(
                f"functional-equation self-test residual {ctx.nstr(err, 4)} too large")
    if m > 0:
        if derivative_order != m:
            raise MotiveError(
                f"gamma pole of order {m} at s0: only the order-{m} derivative "
                "(leading Taylor coefficient) is supported here")
        lam = lambda_derivs(spec, s0, 0, pol, cutoff_A)[0]
        g = _gamma_pole_limit(spec, ctx, s0f)
        s0v = ctx.mpf(s0f.numerator) / s0f.denominator
        val = ctx.factorial(m) * lam / (ctx.power(ctx.mpf(spec.conductor), s0v / 2) * g)
        return val, err
    lams = lambda_derivs(spec, s0, derivative_order, pol, cutoff_A)
    s_val = ctx.convert(s0) if not isinstance(s0, (int, Fraction)) \
        else ctx.mpf(Fraction(s0).numerator) / Fraction(s0).denominator
    # L = Lambda / (N^(s/2) gamma): divide with the product rule
    g0 = _gamma_value(spec, ctx, s_val)
    lnN2 = ctx.log(spec.conductor) / 2
    ell1 = _gamma_logderiv(spec, ctx, s_val, 1) + lnN2
    pref = ctx.power(ctx.mpf(spec.conductor), s_val / 2) * g0
    L0 = lams[0] / pref
    if derivative_order == 0:
        return L0, err
    L1 = (lams[1] - ell1 * lams[0]) / pref
    if derivative_order == 1:
        return L1, err
    ell2 = _gamma_logderiv(spec, ctx, s_val, 2)
    # (log pref)'' = ell2 ; Lambda = pref * L =>
    # Lambda'' = pref (L'' + 2 ell1 L' + (ell1^2 + ell2) L)
    L2 = (lams[2] - 2 * ell1 * pref * L1 - (ell1 ** 2 + ell2) * pref * L0) / pref
    if derivative_order == 2:
        return L2, err
    raise MotiveError("derivative_order must be 0, 1, or 2")
