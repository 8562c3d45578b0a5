"""Arbitrary-precision numeric kernel.

Everything downstream computes with mpmath reals/complexes at a working
precision fixed by a :class:`PrecisionPolicy`.  Each policy owns a private
mpmath context, so concurrent evaluations with different policies never
fight over a global precision setting.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mp

RationalX = Fraction

_CONSTANT_NAMES = ("pi", "catalan", "euler_gamma", "zeta2", "zeta3")


class MPNumError(ValueError):
    pass


class PolesError(MPNumError):
    """Argument hit a pole of the requested function."""


@dataclass(frozen=True)
class PrecisionPolicy:
    """Requested accuracy plus working headroom.

    working precision (decimal digits) = target_digits + guard_digits,
    with guard_digits >= 10 so the last requested digit is trustworthy.
    """

    target_digits: int = 30
    guard_digits: int = 15
    max_terms: int = 4000
    _local: threading.local = field(default_factory=threading.local,
                                    repr=False, compare=False)

    def __post_init__(self):
        if self.target_digits < 1:
            raise MPNumError("target_digits must be positive")
        if self.guard_digits < 10:
            raise MPNumError("guard_digits must be at least 10")
        if self.max_terms < 16:
            raise MPNumError("max_terms must be at least 16")

    @property
    def working_digits(self) -> int:
        return self.target_digits + self.guard_digits

    @property
    def ctx(self):
        """Private mpmath context at the working precision.

        One clone per thread: sharing a live context between threads is
        not bit-deterministic, and the concurrency contract promises
        results independent of scheduling.
        """
        c = getattr(self._local, "ctx", None)
        if c is None:
            c = mp.clone()
            c.dps = self.working_digits
            self._local.ctx = c
        return c

    def doubled(self) -> "PrecisionPolicy":
        return PrecisionPolicy(2 * self.target_digits, self.guard_digits,
                               2 * self.max_terms)

    @property
    def tol(self):
        return self.ctx.mpf(10) ** (-self.target_digits)


# RealMP / ComplexMP are mpmath values produced under a policy's context.
RealMP = mpmath.mpf
ComplexMP = mpmath.mpc

_const_cache: dict = {}
_const_lock = threading.Lock()


def special(name: str, pol: PrecisionPolicy):
    """Transcendental constants, memoized per working precision."""
    key = (name, pol.working_digits)
    with _const_lock:
        if key in _const_cache:
            return _const_cache[key]
    ctx = pol.ctx
    if name == "pi":
        val = +ctx.pi
    elif name == "catalan":
        val = +ctx.catalan
    elif name == "euler_gamma":
        val = +ctx.euler
    elif name == "zeta2":
        val = ctx.pi ** 2 / 6
    elif name == "zeta3":
        val = ctx.zeta(3)
    else:
        raise MPNumError(f"unknown constant {name!r}; expected one of {_CONSTANT_NAMES}")
    with _const_lock:
        _const_cache[key] = val
    return val


def _check_not_nonpositive_integer(ctx, x):
    xc = ctx.mpc(x)
    if xc.imag == 0:
        xr = xc.real
        if xr <= 0 and xr == ctx.nint(xr):
            raise PolesError(f"pole at non-positive integer argument {xr}")


def loggamma(x, pol: PrecisionPolicy):
    """Principal branch of log Gamma."""
    ctx = pol.ctx
    _check_not_nonpositive_integer(ctx, x)
    return ctx.loggamma(x)


def digamma(x, order: int, pol: PrecisionPolicy):
    """psi(x) for order 0, psi'(x) for order 1 (orders up to 3 supported)."""
    ctx = pol.ctx
    if order not in (0, 1, 2, 3):
        raise MPNumError("digamma order must be 0..3")
    _check_not_nonpositive_integer(ctx, x)
    return ctx.psi(order, x)


def hurwitz_zeta(s, x, derivative_in_s: int, pol: PrecisionPolicy):
    """zeta(s, x) or d/ds zeta(s, x) for x in (0, 1]."""
    ctx = pol.ctx
    if derivative_in_s not in (0, 1):
        raise MPNumError("derivative_in_s must be 0 or 1")
    sc = ctx.mpc(s)
    if sc == 1:
        raise PolesError("Hurwitz zeta pole at s = 1")
    xr = ctx.mpf(x) if not isinstance(x, Fraction) else ctx.mpf(x.numerator) / x.denominator
    if not (0 < xr <= 1):
        raise MPNumError("x must lie in (0, 1]")
    if sc.imag == 0:
        sc = sc.real
    return ctx.zeta(sc, xr, derivative_in_s)


def dilog(x, pol: PrecisionPolicy):
    """Li_2 on the principal branch (cut along [1, oo), limit from above)."""
    ctx = pol.ctx
    xc = ctx.mpc(x)
    if xc.imag == 0 and xc.real > 1:
        # boundary of the cut: approach from above
        xc = ctx.mpc(xc.real, ctx.mpf(10) ** (-2 * pol.working_digits))
    val = ctx.polylog(2, xc)
    if ctx.im(val) == 0:
        return ctx.re(val)
    return val
