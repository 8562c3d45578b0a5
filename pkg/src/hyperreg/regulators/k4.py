"""K4 case: data ((1/2)^4, (1)^4), z = 256 t, rank-two regulator on (0, 4^-4).

The four matrix entries are built twice and compared slot by slot:

* closed harmonic-sum formulas with G_k = H_2k - H_k and
  G'_k = 8 G_k^2 - 2 H'_2k + H'_k + zeta(2);
* generic Frobenius deformation: s-expansion of
  sum_k binom(2k+2s, k+s)^4 t^(k+s) / (k+s+shift), shift 0 or 1/2.

Both live in the exact atom ring, so equality is asserted coefficientwise.
The determinant of the regulator matrix is

    r(t) = (sqrt primitive) * (log deformed) - (sqrt deformed) * (log primitive)
         = -sqrt(t)/(4 pi^2) * (N0 M2 - N2 M0)(t)

in terms of the inner series below.

The log^2-coefficients of the closed forms are 1/(2(k+1/2)) resp.
1/(2k): the factor 2 is forced by the s^2-extraction (quotations of these
sums sometimes drop it), and the dual-path identity pins it down exactly.
"""

from __future__ import annotations

from fractions import Fraction

from ..exactnum import EX_Z3, ExactNum, ex_zeta2
from ..hypergeom import parse_hg
from ..mpnum import PrecisionPolicy
from ..series import LogSeries, PowSeries, SLaurent, sp_inv, sp_mul, theta
from .reporting import CaseError, RegulatorReport, detect_rational

DATA = parse_hg("1/2,1/2,1/2,1/2;1,1,1,1")
SCALE = 256          # z = 256 t
T_POINTS = (Fraction(1, 4 ** 5), Fraction(1, 4 ** 6),
            Fraction(1, 4 ** 7), Fraction(1, 4 ** 8))
EXPECTED_RATIOS = (Fraction(4), Fraction(64, 3), Fraction(8), Fraction(4))


# -- harmonic atoms ----------------------------------------------------------

def harmonic(K: int) -> list:
    H = [Fraction(0)]
    for k in range(1, K + 1):
        H.append(H[-1] + Fraction(1, k))
    return H


def harmonic2(K: int) -> list:
    H = [Fraction(0)]
    for k in range(1, K + 1):
        H.append(H[-1] + Fraction(1, k * k))
    return H


def G_list(K: int) -> list:
    H = harmonic(2 * K)
    return [H[2 * k] - H[k] for k in range(K + 1)]


def Gp_list(K: int) -> list:
    """G'_k = 8 G_k^2 - 2 H'_2k + H'_k + zeta(2) in the atom ring."""
    H2 = harmonic2(2 * K)
    G = G_list(K)
    z2 = ex_zeta2()
    out = []
    for k in range(K + 1):
        out.append(ExactNum.from_rational(8 * G[k] ** 2 - 2 * H2[2 * k] + H2[k]) + z2)
    return out


def binom4_list(K: int) -> list:
    out = [1]
    b = 1
    for k in range(1, K + 1):
        b = b * 2 * (2 * k - 1) // k
        out.append(b ** 4)
    return out


# -- closed-form entries -----------------------------------------------------

def log_primitive_series(K: int) -> LogSeries:
    """log t + sum_{k>0} binom(2k,k)^4 t^k / k."""
    B = binom4_list(K)
    coeffs = [Fraction(0)] + [Fraction(B[k], k) for k in range(1, K + 1)]
    return LogSeries([PowSeries(0, coeffs),
                      PowSeries(0, [Fraction(1)] + [0] * K)])


def sqrt_primitive_inner(K: int) -> LogSeries:
    """sum_k binom(2k,k)^4 t^k / (k + 1/2); the entry is sqrt(t) times this."""
    B = binom4_list(K)
    return LogSeries([PowSeries(0, [B[k] / (k + Fraction(1, 2)) for k in range(K + 1)])])


def sqrt_deformed_inner(K: int) -> LogSeries:
    """Braced series of the sqrt(t)/(-4 pi^2) entry (log^2-coefficient halved)."""
    B = binom4_list(K)
    G = G_list(K)
    Gp = Gp_list(K)
    c0, c1, c2 = [], [], []
    for k in range(K + 1):
        kh = k + Fraction(1, 2)
        c0.append((Gp[k] * (4 * kh * kh) + Fraction(-8) * G[k] * kh + 1)
                  * Fraction(1, 1) / kh ** 3 * B[k])
        c1.append(Fraction(B[k]) * (8 * G[k] * kh - 1) / kh ** 2)
        c2.append(Fraction(B[k], 1) / (2 * kh))
    return LogSeries([PowSeries(0, c0), PowSeries(0, c1), PowSeries(0, c2)])


def log_deformed_inner(K: int) -> LogSeries:
    """Braced series of the (-1/4 pi^2) entry (log^2-coefficient halved)."""
    B = binom4_list(K)
    G = G_list(K)
    Gp = Gp_list(K)
    z3 = EX_Z3
    z2 = ex_zeta2()
    c0 = [ExactNum.from_rational(0) - 8 * z3]
    c1 = [4 * z2]
    c2 = [Fraction(0)]
    c3 = [Fraction(1, 6)]
    for k in range(1, K + 1):
        c0.append((Gp[k] * (4 * k * k) + Fraction(-8 * k) * G[k] + 1)
                  * Fraction(1, k ** 3) * B[k])
        c1.append(Fraction(B[k]) * (8 * G[k] * k - 1) / Fraction(k * k))
        c2.append(Fraction(B[k], 2 * k))
        c3.append(Fraction(0))
    return LogSeries([PowSeries(0, c0), PowSeries(0, c1),
                      PowSeries(0, c2), PowSeries(0, c3)])


# -- Frobenius path ----------------------------------------------------------

def _binom2s_pow4(s_order: int) -> list:
    """binom(2s, s)^4 = exp(4 sum_m (2^m - 2)/m! psi^(m-1)(1) s^m) in atoms."""
    z2 = ex_zeta2()
    z4 = ExactNum.atom("pi", 4, Fraction(1, 90))
    psi2 = -2 * EX_Z3       # psi''(1)
    log_c = [ExactNum.from_rational(0)] * (s_order + 1)
    vals = {2: z2, 3: psi2, 4: 6 * z4}     # psi^(m-1)(1) for m = 2, 3, 4
    fac = 1
    for m in range(1, s_order + 1):
        fac *= m
        if m == 1:
            continue
        log_c[m] = vals[m] * Fraction(4 * (2 ** m - 2), fac)
    out = [ExactNum.from_rational(1)] + [ExactNum.from_rational(0)] * s_order
    # exp of the series
    from ..series import sp_exp
    return sp_exp(log_c, s_order)


def _ratio_spoly(k: int, s_order: int) -> list:
    """binom(2k+2+2s, k+1+s)^4 / binom(2k+2s, k+s)^4 = (2(2k+2s+1)/(k+1+s))^4."""
    num = [Fraction(2 * (2 * k + 1)), Fraction(4)] + [Fraction(0)] * (s_order - 1)
    den = [Fraction(k + 1), Fraction(1)] + [Fraction(0)] * (s_order - 1)
    r = sp_mul(num, sp_inv(den, s_order), s_order)
    r2 = sp_mul(r, r, s_order)
    return sp_mul(r2, r2, s_order)


def frobenius_generator(K: int, s_order: int, shift: Fraction) -> SLaurent:
    """sum_k binom(2k+2s,k+s)^4 t^(k+s) / (k+s+shift) as an SLaurent in s.

    shift = 1/2 gives the N-series; shift = 0 the M-series (whose k = 0
    term carries the s^-1 slot).
    """
    pole = (shift == 0)
    min_order = -1 if pole else 0
    c0 = _binom2s_pow4(s_order + (1 if pole else 0))
    # rational parts R_k(s) (relative to c0) and 1/(k+s+shift)
    slots: dict = {}
    o = s_order + (1 if pole else 0)
    Rk = [Fraction(1)] + [Fraction(0)] * o
    fac = [1]
    for j in range(1, o + 1):
        fac.append(fac[-1] * j)
    for k in range(K + 1):
        if k == 0 and pole:
            # t^s / s: slot (m) gets log^j t / j! at m = j - 1
            for j in range(o + 1):
                m = j - 1
                if m > s_order:
                    continue
                ls = slots.setdefault(m, {})
                ls.setdefault(j, {})[0] = ls.get(j, {}).get(0, 0) + Fraction(1, fac[j])
        else:
            inv = sp_inv([k + shift, Fraction(1)] + [Fraction(0)] * (o - 1), o)
            cks = sp_mul(Rk, inv, o)
            # t^(k+s): distribute log powers
            for m in range(s_order + 1):
                ls = slots.setdefault(m, {})
                for j in range(m + 1):
                    cc = cks[m - j] * Fraction(1, fac[j])
                    if cc:
                        ls.setdefault(j, {})[k] = ls.get(j, {}).get(k, 0) + cc
        Rk = sp_mul(Rk, _ratio_spoly(k, o), o)
    # assemble LogSeries per s-slot, multiply through by c0(s)
    base = {}
    for m, ls in slots.items():
        parts = []
        for j in range(max(ls) + 1 if ls else 0):
            coeffs = [Fraction(0)] * (K + 1)
            for k, v in ls.get(j, {}).items():
                coeffs[k] = v
            parts.append(PowSeries(0, coeffs))
        base[(m, 0)] = LogSeries(parts)
    gen = SLaurent(base, s_order, min_order)
    # multiply by c0(s) in s
    out: dict = {}
    for (m, _), v in gen.terms.items():
        for i, ci in enumerate(c0):
            mm = m + i
            if mm > s_order:
                continue
            piece = v.scale(ci)
            key = (mm, 0)
            out[key] = piece if key not in out else out[key] + piece
    return SLaurent(out, s_order, min_order)


# -- the case-study surface --------------------------------------------------

def k4_entries(K: int):
    """The four exact inner series with the dual-path check.

    Returns dict with the four closed-form LogSeries; raises on any
    cross-path disagreement.
    """
    M = frobenius_generator(K, 2, Fraction(0))
    N = frobenius_generator(K, 2, Fraction(1, 2))
    closed = {
        "log_primitive": log_primitive_series(K),
        "sqrt_primitive_inner": sqrt_primitive_inner(K),
        "sqrt_deformed_inner": sqrt_deformed_inner(K),
        "log_deformed_inner": log_deformed_inner(K),
    }
    pairs = [
        ("log_primitive", M.slot(0)),
        ("log_deformed_inner", M.slot(2)),
        ("sqrt_primitive_inner", N.slot(0)),
        ("sqrt_deformed_inner", N.slot(2)),
    ]
    for name, frob in pairs:
        if not (closed[name] == frob):
            raise CaseError(f"dual-path disagreement in {name}")
    # r_{-1} slot is the constant 1 (times (2 pi i)^4 after scaling)
    rm1 = M.slot(-1)
    if not (rm1 == LogSeries.constant(Fraction(1))):
        raise CaseError("r_-1 slot is not the expected constant")
    # derivative ladder: theta(M) reproduces the period generator slotwise
    E0 = theta(closed["log_primitive"])
    per = LogSeries([PowSeries(0, [Fraction(b) for b in binom4_list(K)])])
    if not (E0 == per):
        raise CaseError("theta of the log primitive does not reproduce the period")
    th = theta(closed["sqrt_primitive_inner"]) + closed["sqrt_primitive_inner"].scale(Fraction(1, 2))
    if not (th == per):
        raise CaseError("theta ladder fails for the sqrt primitive")
    return closed


def generator_derivative_identity(K: int) -> bool:
    """D applied to the deformed antiderivative reproduces the deformed
    period slotwise: theta_z of sum binom^4(s) t^(k+s)/(k+s) equals
    sum binom^4(s) t^(k+s) in every retained (s, log) slot."""
    M = frobenius_generator(K, 2, Fraction(0))
    DM = M.theta_z()
    E = frobenius_generator_period(K, 2)
    for m in range(-1, 3):
        if not (DM.slot(m) == E.slot(m)):
            return False
    return True


def frobenius_generator_period(K: int, s_order: int) -> SLaurent:
    """sum_k binom(2k+2s, k+s)^4 t^(k+s) as an SLaurent in s."""
    c0 = _binom2s_pow4(s_order)
    slots: dict = {}
    Rk = [Fraction(1)] + [Fraction(0)] * s_order
    fac = [1]
    for j in range(1, s_order + 1):
        fac.append(fac[-1] * j)
    for k in range(K + 1):
        for m in range(s_order + 1):
            ls = slots.setdefault(m, {})
            for j in range(m + 1):
                cc = Rk[m - j] * Fraction(1, fac[j])
                if cc:
                    ls.setdefault(j, {})[k] = cc
        Rk = sp_mul(Rk, _ratio_spoly(k, s_order), s_order)
    base = {}
    for m, ls in slots.items():
        parts = []
        for j in range(max(ls) + 1 if ls else 0):
            coeffs = [Fraction(0)] * (K + 1)
            for k, v in ls.get(j, {}).items():
                coeffs[k] = v
            parts.append(PowSeries(0, coeffs))
        base[(m, 0)] = LogSeries(parts)
    gen = SLaurent(base, s_order, 0)
    out: dict = {}
    for (m, _), v in gen.terms.items():
        for i, ci in enumerate(c0):
            mm = m + i
            if mm > s_order:
                continue
            piece = v.scale(ci)
            key = (mm, 0)
            out[key] = piece if key not in out else out[key] + piece
    return SLaurent(out, s_order, 0)


def k4_entry_values(t: Fraction, pol: PrecisionPolicy, K: int = 40):
    """Numeric (log primitive, sqrt primitive, sqrt deformed, log deformed)
    at t, from the cross-checked series."""
    ctx = pol.ctx
    ent = k4_entries(K)
    tv = ctx.mpf(t.numerator) / t.denominator
    sq = ctx.sqrt(tv)
    pref = -1 / (4 * ctx.pi ** 2)

    def ev(name):
        v, _ = ent[name].to_floating(pol).evaluate(t, pol, require_tail=False)
        return v

    return (ev("log_primitive"), sq * ev("sqrt_primitive_inner"),
            sq * pref * ev("sqrt_deformed_inner"), pref * ev("log_deformed_inner"))


def k4_det(t: Fraction, pol: PrecisionPolicy, K: int | None = None,
           fixture=None) -> RegulatorReport:
    """The 2x2 determinant r(t) for t in (0, 4^-4)."""
    if not (0 < t < Fraction(1, 256)):
        raise CaseError(f"t = {t} outside (0, 1/256)")
    if K is None:
        import math
        K = max(32, int((pol.working_digits + 10) * math.log(10)
                        / -math.log(256 * float(t))) + 8)
    ent = k4_entries(K) if K <= 40 else _entries_unchecked(K)
    val = _det_value(ent, t, pol)
    # stability: doubled precision and doubled truncation
    pol2 = pol.doubled()
    val2 = _det_value(_entries_unchecked(2 * K), t, pol2)
    stab = abs(val - pol.ctx.convert(val2))
    rep = RegulatorReport("k4", t, val)
    rep.check("precision_doubling_stability", stab, pol)
    rep.notes.append("integral model at t = 4^-5 .. 4^-8")
    if fixture is not None:
        rep.measured_ratio = fixture / val
        rep.detected_ratio = detect_rational(rep.measured_ratio, pol.tol)
    return rep


def _entries_unchecked(K: int):
    return {
        "log_primitive": log_primitive_series(K),
        "sqrt_primitive_inner": sqrt_primitive_inner(K),
        "sqrt_deformed_inner": sqrt_deformed_inner(K),
        "log_deformed_inner": log_deformed_inner(K),
    }


def _det_value(ent, t: Fraction, pol: PrecisionPolicy):
    ctx = pol.ctx
    tv = ctx.mpf(t.numerator) / t.denominator
    sq = ctx.sqrt(tv)
    pref = -1 / (4 * ctx.pi ** 2)

    def ev(ls: LogSeries):
        v, _ = ls.to_floating(pol).evaluate(t, pol, require_tail=False)
        return v

    lp = ev(ent["log_primitive"])
    sp = sq * ev(ent["sqrt_primitive_inner"])
    sd = sq * pref * ev(ent["sqrt_deformed_inner"])
    ld = pref * ev(ent["log_deformed_inner"])
    return sp * ld - sd * lp
