"""Truncated log-power series algebra.

The carriers here are:

* :class:`PowSeries` -- sum_k c_k z^(rho+k), rho a rational leading
  exponent, truncated after K coefficients;
* :class:`LogSeries` -- sum_j (log z)^j * PowSeries_j, the universal
  carrier of periods and regulator entries;
* :class:`SLaurent`  -- truncated Laurent series in a deformation
  parameter s whose coefficients are LogSeries, with an optional log(s)
  marker slot, used by Frobenius deformations and the annulus-residue
  ("Hadamard") computations.

Coefficients are exact (int / Fraction / ExactNum) or floating (mpf/mpc);
the two modes are never mixed inside one series.  Exact series convert
losslessly to floating at any precision policy via ``to_floating``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .exactnum import ExactNum
from .mpnum import PrecisionPolicy

__all__ = ["PowSeries", "LogSeries", "SLaurent", "ResidueRule", "EpsExpansion",
           "SeriesError", "OffsetMismatch", "DivergenceError", "TailBoundError",
           "theta", "anti_dlog", "hadamard", "residue_extract",
           "sp_mul", "sp_inv", "sp_exp", "sp_add", "sp_scale"]


class SeriesError(ValueError):
    pass


class OffsetMismatch(SeriesError):
    """Offsets differ by a non-integer; padding cannot reconcile them."""


class DivergenceError(ArithmeticError):
    pass


class TailBoundError(ArithmeticError):
    pass


def _is_exact(c) -> bool:
    return isinstance(c, (int, Rational, ExactNum))


def _czero(c) -> bool:
    if isinstance(c, ExactNum):
        return c.is_zero()
    return c == 0


def _to_mp(c, ctx):
    if isinstance(c, ExactNum):
        return c.to_mp(ctx)
    if isinstance(c, Rational):
        return ctx.mpf(c.numerator) / c.denominator
    return c


# ---------------------------------------------------------------------------
# PowSeries
# ---------------------------------------------------------------------------

class PowSeries:
    """sum_{k<K} coeffs[k] * z^(offset+k), truncated at z^(offset+K)."""

    __slots__ = ("offset", "coeffs")

    def __init__(self, offset, coeffs):
        self.offset = Fraction(offset)
        self.coeffs = list(coeffs)

    @property
    def K(self) -> int:
        return len(self.coeffs)

    @property
    def bound(self) -> Fraction:
        """Exponent through which the series is trusted (exclusive)."""
        return self.offset + len(self.coeffs)

    def is_exact(self) -> bool:
        return all(_is_exact(c) for c in self.coeffs)

    def copy(self) -> "PowSeries":
        return PowSeries(self.offset, self.coeffs)

    def __repr__(self):
        head = ", ".join(repr(c) for c in self.coeffs[:4])
        tail = ", ..." if len(self.coeffs) > 4 else ""
        return f"PowSeries(z^{self.offset} * [{head}{tail}], K={self.K})"

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other: "PowSeries") -> "PowSeries":
        d = other.offset - self.offset
        if d.denominator != 1:
            raise OffsetMismatch(
                f"offsets {self.offset} and {other.offset} differ by a non-integer")
        lo = min(self.offset, other.offset)
        hi = min(self.bound, other.bound)
        n = int(hi - lo)
        if n <= 0:
            raise SeriesError("truncation windows do not overlap")
        out = [0] * n
        for src in (self, other):
            base = int(src.offset - lo)
            for k, c in enumerate(src.coeffs):
                j = base + k
                if j < n:
                    out[j] = out[j] + c
        return PowSeries(lo, out)

    def __neg__(self) -> "PowSeries":
        return PowSeries(self.offset, [-c for c in self.coeffs])

    def __sub__(self, other: "PowSeries") -> "PowSeries":
        return self + (-other)

    def __mul__(self, other: "PowSeries") -> "PowSeries":
        n = min(self.K, other.K)
        if n == 0:
            return PowSeries(self.offset + other.offset, [])
        out = [0] * n
        for i, a in enumerate(self.coeffs[:n]):
            if _czero(a):
                continue
            for j, b in enumerate(other.coeffs[: n - i]):
                if _czero(b):
                    continue
                out[i + j] = out[i + j] + a * b
        return PowSeries(self.offset + other.offset, out)

    def scale(self, c) -> "PowSeries":
        return PowSeries(self.offset, [c * x for x in self.coeffs])

    def shift(self, m) -> "PowSeries":
        """Multiply by z^m."""
        return PowSeries(self.offset + Fraction(m), self.coeffs)

    def truncate(self, K: int) -> "PowSeries":
        return PowSeries(self.offset, self.coeffs[:K])

    def __eq__(self, other):
        if not isinstance(other, PowSeries):
            return NotImplemented
        return _ps_equal(self, other)

    def to_floating(self, pol: PrecisionPolicy) -> "PowSeries":
        ctx = pol.ctx
        return PowSeries(self.offset, [_to_mp(c, ctx) for c in self.coeffs])


def _ps_equal(a: PowSeries, b: PowSeries) -> bool:
    """Equality of the stored coefficient windows (zero-padded alignment)."""
    d = b.offset - a.offset
    if d.denominator != 1:
        return all(_czero(c) for c in a.coeffs) and all(_czero(c) for c in b.coeffs)
    lo = min(a.offset, b.offset)
    hi = max(a.bound, b.bound)
    for e in range(int(hi - lo)):
        exp = lo + e
        ca = a.coeffs[int(exp - a.offset)] if a.offset <= exp < a.bound else 0
        cb = b.coeffs[int(exp - b.offset)] if b.offset <= exp < b.bound else 0
        if isinstance(ca, ExactNum) or isinstance(cb, ExactNum):
            if ExactNum._coerce(ca) != ExactNum._coerce(cb):
                return False
        elif ca != cb:
            return False
    return True


# ---------------------------------------------------------------------------
# LogSeries
# ---------------------------------------------------------------------------

class LogSeries:
    """sum_j (log z)^j * parts[j]; parts[j] is a PowSeries or None."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = list(parts)
        while parts and parts[-1] is None:
            parts.pop()
        self.parts = parts

    @classmethod
    def from_pow(cls, ps: PowSeries, log_power: int = 0) -> "LogSeries":
        return cls([None] * log_power + [ps])

    @classmethod
    def constant(cls, c, K: int = 1) -> "LogSeries":
        return cls([PowSeries(0, [c] + [0] * (K - 1))])

    @property
    def J(self) -> int:
        return len(self.parts) - 1

    def part(self, j: int):
        if 0 <= j < len(self.parts):
            return self.parts[j]
        return None

    def is_exact(self) -> bool:
        return all(p is None or p.is_exact() for p in self.parts)

    def is_zero(self) -> bool:
        return all(p is None or all(_czero(c) for c in p.coeffs) for p in self.parts)

    def __repr__(self):
        body = ", ".join(f"log^{j}: {p!r}" for j, p in enumerate(self.parts) if p is not None)
        return f"LogSeries({body})"

    def __add__(self, other: "LogSeries") -> "LogSeries":
        n = max(len(self.parts), len(other.parts))
        out = []
        for j in range(n):
            a, b = self.part(j), other.part(j)
            if a is None:
                out.append(b.copy() if b is not None else None)
            elif b is None:
                out.append(a.copy())
            else:
                out.append(a + b)
        return LogSeries(out)

    def __neg__(self) -> "LogSeries":
        return LogSeries([None if p is None else -p for p in self.parts])

    def __sub__(self, other: "LogSeries") -> "LogSeries":
        return self + (-other)

    def __mul__(self, other: "LogSeries") -> "LogSeries":
        out: list = [None] * (len(self.parts) + len(other.parts) - 1) if self.parts and other.parts else []
        for i, a in enumerate(self.parts):
            if a is None:
                continue
            for j, b in enumerate(other.parts):
                if b is None:
                    continue
                prod = a * b
                out[i + j] = prod if out[i + j] is None else out[i + j] + prod
        return LogSeries(out)

    def scale(self, c) -> "LogSeries":
        return LogSeries([None if p is None else p.scale(c) for p in self.parts])

    def shift(self, m) -> "LogSeries":
        return LogSeries([None if p is None else p.shift(m) for p in self.parts])

    def __eq__(self, other):
        if not isinstance(other, LogSeries):
            return NotImplemented
        n = max(len(self.parts), len(other.parts))
        zero = PowSeries(0, [])
        for j in range(n):
            a = self.part(j) or zero
            b = other.part(j) or zero
            if not _ps_equal(a, b):
                return False
        return True

    def to_floating(self, pol: PrecisionPolicy) -> "LogSeries":
        return LogSeries([None if p is None else p.to_floating(pol) for p in self.parts])

    # -- evaluation ------------------------------------------------------
    def evaluate(self, z0, pol: PrecisionPolicy, require_tail: bool = True):
        """Numeric value at z0 > 0 with a tail estimate.

        Sums each log-part in ascending k (fixed order, scheduling
        independent) and bounds the tail by last-term / (1 - ratio) with
        the ratio observed over the trailing terms.  Raises
        DivergenceError when the terms persistently fail to decay, and
        TailBoundError when the requested accuracy is out of reach for
        the retained truncation (if require_tail).
        """
        ctx = pol.ctx
        z = ctx.mpf(z0.numerator) / z0.denominator if isinstance(z0, Rational) else ctx.convert(z0)
        if z <= 0:
            raise SeriesError("evaluation point must be positive")
        lg = ctx.log(z)
        total = ctx.mpf(0)
        tail = ctx.mpf(0)
        for j, p in enumerate(self.parts):
            if p is None or p.K == 0:
                continue
            zp = z ** (ctx.mpf(p.offset.numerator) / p.offset.denominator)
            acc = ctx.mpf(0)
            terms = []
            for c in p.coeffs:
                t = _to_mp(c, ctx) * zp
                acc = acc + t
                terms.append(abs(t))
                zp = zp * z
            part_val = acc * lg ** j
            total = total + part_val
            # tail estimate from the trailing decay; the observed ratios of
            # the series arising here approach their limit from below like 1/k,
            # so extrapolate before bounding the geometric tail
            nz = [t for t in terms[-8:] if t > 0]
            if len(terms) >= 4 and nz:
                ratios = [terms[i + 1] / terms[i] for i in range(len(terms) - 4, len(terms) - 1)
                          if terms[i] > 0]
                r = max(ratios) if ratios else ctx.mpf(0)
                if len(ratios) >= 2 and ratios[-1] > ratios[-2]:
                    r = ratios[-1] + (ratios[-1] - ratios[-2]) * len(terms)
                r = min(r, ctx.mpf("0.9995"))
                if r >= ctx.mpf("0.999"):
                    raise DivergenceError(
                        f"term ratio {ctx.nstr(r, 6)} >= 0.999; z0 outside disk of convergence")
                last = terms[-1]
                tail = tail + abs(lg) ** j * last * r / (1 - r) * ctx.mpf("1.25")
        if require_tail and tail > pol.tol:
            raise TailBoundError(
                f"tail estimate {ctx.nstr(tail, 3)} exceeds 10^-{pol.target_digits}; "
                "increase K or max_terms")
        return total, tail

    # -- serialization ---------------------------------------------------
    def to_json(self, pol: PrecisionPolicy | None = None) -> str:
        def enc(c):
            if isinstance(c, int):
                return f"{c}/1"
            if isinstance(c, Rational):
                return f"{c.numerator}/{c.denominator}"
            if isinstance(c, ExactNum):
                if c.is_rational():
                    q = c.as_rational()
                    return f"{q.numerator}/{q.denominator}"
                ctx = (pol or PrecisionPolicy()).ctx
                return ctx.nstr(c.to_mp(ctx), (pol or PrecisionPolicy()).target_digits)
            ctx = (pol or PrecisionPolicy()).ctx
            return ctx.nstr(c, (pol or PrecisionPolicy()).target_digits)

        doc = {"parts": [
            None if p is None else {
                "offset": f"{p.offset.numerator}/{p.offset.denominator}",
                "coeffs": [enc(c) for c in p.coeffs],
            }
            for p in self.parts]}
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "LogSeries":
        doc = json.loads(text)
        parts = []
        for p in doc["parts"]:
            if p is None:
                parts.append(None)
                continue
            coeffs = []
            for c in p["coeffs"]:
                if "/" in c:
                    coeffs.append(Fraction(c))
                else:
                    import mpmath
                    coeffs.append(mpmath.mpf(c))
            parts.append(PowSeries(Fraction(p["offset"]), coeffs))
        return cls(parts)


# ---------------------------------------------------------------------------
# theta = z d/dz and its inverse
# ---------------------------------------------------------------------------

def theta(a: LogSeries) -> LogSeries:
    """D = z d/dz applied termwise:
    D(z^e log^j z) = e z^e log^j z + j z^e log^(j-1) z."""
    nparts = len(a.parts)
    out: list = [None] * nparts
    for j, p in enumerate(a.parts):
        if p is None:
            continue
        scaled = PowSeries(p.offset, [(p.offset + k) * c for k, c in enumerate(p.coeffs)])
        out[j] = scaled if out[j] is None else out[j] + scaled
        if j >= 1:
            down = p.scale(j)
            out[j - 1] = down if out[j - 1] is None else out[j - 1] + down
    return LogSeries(out)


def anti_dlog(a: LogSeries, constant=0) -> LogSeries:
    """Primitive under D with value `constant` in the z^0 log^0 slot.

    theta(anti_dlog(a, c)) == a exactly.  A nonzero z^0 log^j coefficient
    integrates to log^(j+1) z / (j+1).
    """
    out_parts: dict = {}

    def put(j, e, c):
        if _czero(c):
            return
        slots = out_parts.setdefault(j, {})
        slots[e] = slots.get(e, 0) + c

    maxj = len(a.parts) + 1
    for j, p in enumerate(a.parts):
        if p is None:
            continue
        for k, c in enumerate(p.coeffs):
            if _czero(c):
                continue
            e = p.offset + k
            if e == 0:
                put(j + 1, Fraction(0), Fraction(1, j + 1) * c)
                continue
            # D(z^e sum_i d_i log^i) = a-term requires d_j = c/e and the
            # downward ladder d_i = -(i+1) d_{i+1} / e
            cur = c / e
            put(j, e, cur)
            for i in range(j - 1, -1, -1):
                cur = -((i + 1) * cur) / e
                put(i, e, cur)
    put(0, Fraction(0), constant)

    # the D-primitive is known through the same exponent bound as the input
    bounds = [p.bound for p in a.parts if p is not None and p.K]
    B = min(bounds) if bounds else Fraction(1)

    parts = []
    for j in range(maxj):
        slots = out_parts.get(j)
        if not slots:
            parts.append(None)
            continue
        exps = sorted(slots)
        lo = exps[0]
        span = B - lo
        n = max(int(exps[-1] - lo) + 1,
                int(span) if span.denominator == 1 else int(span) + 1)
        coeffs = [0] * n
        for e, c in slots.items():
            step = e - lo
            if step.denominator != 1:
                raise OffsetMismatch("primitive produced mixed exponent lattices")
            coeffs[int(step)] = c
        parts.append(PowSeries(lo, coeffs))
    return LogSeries(parts)


def hadamard(a: PowSeries, b: PowSeries) -> PowSeries:
    """Coefficientwise product (A . B)_k = a_k b_k (integer-offset-0 series)."""
    if a.offset != 0 or b.offset != 0:
        raise SeriesError("hadamard requires both offsets 0")
    n = min(a.K, b.K)
    return PowSeries(0, [a.coeffs[k] * b.coeffs[k] for k in range(n)])


# ---------------------------------------------------------------------------
# Laurent series in the deformation parameter s
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ResidueRule:
    orientation: str = "counterclockwise"   # or "clockwise"
    eps_symbol: str = "eps"

    def __post_init__(self):
        if self.orientation not in ("counterclockwise", "clockwise"):
            raise SeriesError("orientation must be clockwise or counterclockwise")


class SLaurent:
    """Truncated Laurent series in s with LogSeries coefficients.

    terms maps (s_exponent, log_s_power in {0,1}) -> LogSeries.
    Frobenius-deformation instances keep min_order >= -1; annulus-residue
    integrands may go deeper (min_order = -K).
    """

    __slots__ = ("terms", "s_order", "min_order")

    def __init__(self, terms: dict, s_order: int, min_order: int = -1):
        self.terms = {k: v for k, v in terms.items() if v is not None and not v.is_zero()}
        self.s_order = s_order
        self.min_order = min_order
        for (m, lg) in self.terms:
            if lg not in (0, 1):
                raise SeriesError("log(s) power must be 0 or 1")
            if m < min_order or m > s_order:
                raise SeriesError(f"s-exponent {m} outside [{min_order}, {s_order}]")

    def slot(self, m: int, lg: int = 0) -> LogSeries:
        return self.terms.get((m, lg), LogSeries([]))

    def __add__(self, other: "SLaurent") -> "SLaurent":
        s_order = min(self.s_order, other.s_order)
        min_order = min(self.min_order, other.min_order)
        out = {}
        keys = set(self.terms) | set(other.terms)
        for k in keys:
            if not (min_order <= k[0] <= s_order):
                continue
            a, b = self.terms.get(k), other.terms.get(k)
            out[k] = a + b if a is not None and b is not None else (a or b)
        return SLaurent(out, s_order, min_order)

    def __neg__(self) -> "SLaurent":
        return SLaurent({k: -v for k, v in self.terms.items()}, self.s_order, self.min_order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "SLaurent") -> "SLaurent":
        # truncation: degrees above min(s_order_i + min_order_j shifts) are unsafe;
        # we keep the conservative window [min1+min2, min(so1+min2, so2+min1)]
        s_order = min(self.s_order + other.min_order, other.s_order + self.min_order)
        min_order = self.min_order + other.min_order
        out: dict = {}
        for (m1, l1), a in self.terms.items():
            for (m2, l2), b in other.terms.items():
                if l1 + l2 > 1:
                    raise SeriesError("unsupported integrand shape: log(s)^2 or deeper")
                m = m1 + m2
                if m > s_order or m < min_order:
                    continue
                key = (m, l1 + l2)
                prod = a * b
                out[key] = prod if key not in out else out[key] + prod
        return SLaurent(out, s_order, min_order)

    def scale(self, c) -> "SLaurent":
        return SLaurent({k: v.scale(c) for k, v in self.terms.items()},
                        self.s_order, self.min_order)

    def mul_log_s(self) -> "SLaurent":
        out = {}
        for (m, lg), v in self.terms.items():
            if lg == 1:
                raise SeriesError("unsupported integrand shape: log(s)^2 or deeper")
            out[(m, 1)] = v
        return SLaurent(out, self.s_order, self.min_order)

    def s_antiderivative(self) -> "SLaurent":
        """Integral from 0 in s, termwise (no log-s slots, no 1/s term)."""
        out = {}
        for (m, lg), v in self.terms.items():
            if lg != 0:
                raise SeriesError("antiderivative of log(s) terms not supported")
            if m == -1:
                raise SeriesError("antiderivative of s^-1 not supported")
            out[(m + 1, 0)] = v.scale(Fraction(1, m + 1))
        return SLaurent(out, self.s_order + 1, self.min_order + 1)

    def theta_z(self) -> "SLaurent":
        return SLaurent({k: theta(v) for k, v in self.terms.items()},
                        self.s_order, self.min_order)

    def __eq__(self, other):
        if not isinstance(other, SLaurent):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        for k in keys:
            a = self.terms.get(k, LogSeries([]))
            b = other.terms.get(k, LogSeries([]))
            if not (a == b):
                return False
        return True


class EpsExpansion:
    """Residue-extraction output: LogSeries coefficients of eps-monomials.

    keys: ("one",), ("logeps",), ("epspow", m) with m != 0.
    Positive powers of eps vanish in the annulus limit eps -> 0 and are
    dropped by ``finite``; log(eps) and negative powers must cancel.
    """

    def __init__(self, slots: dict | None = None):
        self.slots = {k: v for k, v in (slots or {}).items() if not v.is_zero()}

    def add(self, key, series: LogSeries):
        if key in self.slots:
            self.slots[key] = self.slots[key] + series
        else:
            self.slots[key] = series
        if self.slots[key].is_zero():
            del self.slots[key]

    def __add__(self, other: "EpsExpansion") -> "EpsExpansion":
        out = EpsExpansion(dict(self.slots))
        for k, v in other.slots.items():
            out.add(k, v)
        return out

    def scale(self, c) -> "EpsExpansion":
        return EpsExpansion({k: v.scale(c) for k, v in self.slots.items()})

    def surviving_eps_terms(self) -> list:
        bad = []
        for k, v in self.slots.items():
            if k == ("one",):
                continue
            if k == ("logeps",) or (k[0] == "epspow" and k[1] < 0):
                if not v.is_zero():
                    bad.append(k)
        return bad

    def finite(self, strict: bool = True) -> LogSeries:
        """The eps-free part; raises if log(eps)/eps^-m terms survive."""
        if strict:
            bad = self.surviving_eps_terms()
            if bad:
                raise SeriesError(f"eps-dependent terms survive combination: {bad}")
        return self.slots.get(("one",), LogSeries([]))


def residue_extract(integrand: SLaurent, rule: ResidueRule) -> EpsExpansion:
    """(1/2 pi i) * contour integral of integrand * ds/s over |s| = eps.

    Closed-form table (counterclockwise):
      s^m, no log:  m == 0 -> coefficient, else 0;
      s^0 log s  -> log(eps);
      s^-m log s (m>0) -> (-1)^(m-1) / (m eps^m);
      s^m log s (m>0)  -> (-1)^m eps^m / m   (vanishes as eps -> 0).
    Clockwise orientation flips the global sign.
    """
    sign = 1 if rule.orientation == "counterclockwise" else -1
    out = EpsExpansion()
    for (m, lg), v in integrand.terms.items():
        if lg == 0:
            if m == 0:
                out.add(("one",), v.scale(sign))
        else:
            if m == 0:
                out.add(("logeps",), v.scale(sign))
            elif m < 0:
                mm = -m
                out.add(("epspow", -mm), v.scale(sign * Fraction((-1) ** (mm - 1), mm)))
            else:
                out.add(("epspow", m), v.scale(sign * Fraction((-1) ** m, m)))
    return out


# ---------------------------------------------------------------------------
# dense truncated power series helpers in one auxiliary variable
# (used for expansions in the Frobenius parameter s)
# ---------------------------------------------------------------------------

def sp_add(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def sp_scale(a: list, c) -> list:
    return [c * x for x in a]


def sp_mul(a: list, b: list, order: int) -> list:
    out = [0] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if _czero(x):
            continue
        for j, y in enumerate(b[: order + 1 - i]):
            if _czero(y):
                continue
            out[i + j] = out[i + j] + x * y
    return out


def sp_inv(a: list, order: int) -> list:
    """Multiplicative inverse of a truncated series, a[0] != 0."""
    if _czero(a[0]):
        raise SeriesError("cannot invert series with zero constant term")
    c0 = a[0]
    inv0 = Fraction(1) / c0 if isinstance(c0, Rational) else 1 / c0
    out = [inv0] + [0] * order
    for n in range(1, order + 1):
        acc = 0
        for i in range(1, n + 1):
            if i < len(a) and not _czero(a[i]):
                acc = acc + a[i] * out[n - i]
        out[n] = -inv0 * acc
    return out


def sp_exp(a: list, order: int) -> list:
    """exp of a truncated series with a[0] == 0."""
    if a and not _czero(a[0]):
        raise SeriesError("sp_exp requires zero constant term")
    out = [1] + [0] * order
    # out' = a' * out  =>  (n+1) out[n+1] = sum_{i} (i+1) a[i+1] out[n-i]
    for n in range(order):
        acc = 0
        for i in range(n + 1):
            if i + 1 < len(a) and not _czero(a[i + 1]):
                acc = acc + (i + 1) * a[i + 1] * out[n - i]
        out[n + 1] = Fraction(1, n + 1) * acc
    return out
