"""Hypergeometric data and the Frobenius deformation machinery.

A datum (a, b) is a pair of equal-length lists of rationals in (0, 1].
Everything here is exact: coefficient streams, the deformed coefficients
c_k(s) = prod [a_j+s]_k / prod [b_j+s]_k (rational s-series), the
deformation generating series Phi(s, z), the inhomogeneous solutions W_r,
the gamma-vector dictionary, and the kappa / cycle-type classifiers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import EX_B4, EX_CAT, EX_LN2, EX_Z3, ExactNum
from .mpnum import PrecisionPolicy
from .series import (LogSeries, PowSeries, SLaurent,
                     sp_exp, sp_inv, sp_mul)

__all__ = ["HGData", "GammaVector", "CycleType", "HGError",
           "parse_hg", "parse_gamma", "from_gamma", "scale_C",
           "coeff_ak", "coeff_stream", "ck_s", "alpha_s", "ak_s",
           "frobenius_phi", "frobenius_E", "z_s_logs", "W_r",
           "kappa", "classify", "constant_term_oracle"]


class HGError(ValueError):
    pass


@dataclass(frozen=True)
class HGData:
    a: tuple
    b: tuple

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise HGError("index lists must have equal cardinality")
        if not self.a:
            raise HGError("empty hypergeometric data")
        for x in self.a + self.b:
            if not isinstance(x, Fraction) or not (0 < x <= 1):
                raise HGError(f"index {x} outside (0, 1]")

    @property
    def m(self) -> int:
        return len(self.a)

    def b_all_ones(self) -> bool:
        return all(x == 1 for x in self.b)

    def __str__(self):
        fa = ",".join(str(x) for x in self.a)
        fb = ",".join(str(x) for x in self.b)
        return f"{fa};{fb}"


@dataclass(frozen=True)
class GammaVector:
    entries: tuple

    def __post_init__(self):
        if not self.entries or any(g == 0 for g in self.entries):
            raise HGError("gamma entries must be nonzero")
        if sum(self.entries) != 0:
            raise HGError("gamma entries must sum to 0")


@dataclass(frozen=True)
class CycleType:
    label: str            # Ia | Ib | II | IV | generic
    p: int | None         # twist
    k_theory: str | None  # K0 | K2 | K4


def parse_hg(text: str) -> HGData:
    try:
        sa, sb = text.split(";")
        a = tuple(Fraction(x) for x in sa.split(",") if x.strip())
        b = tuple(Fraction(x) for x in sb.split(",") if x.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise HGError(f"cannot parse hypergeometric data {text!r}: {exc}") from None
    if not a or not b:
        raise HGError(f"empty index list in {text!r}")
    return HGData(a, b)


def parse_gamma(text: str) -> GammaVector:
    try:
        entries = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise HGError(f"cannot parse gamma vector {text!r}: {exc}") from None
    return GammaVector(entries)


# ---------------------------------------------------------------------------
# gamma vector <-> (a, b), and the rational scale C
# ---------------------------------------------------------------------------

def _mobius(n: int) -> int:
    result, p, m = 1, 2, n
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def _roots_of_unity(n: int) -> list:
    """Roots of T^n - 1 as fractions in (0, 1]."""
    return [Fraction(j, n) if j else Fraction(1) for j in range(n)]


def from_gamma(g: GammaVector) -> tuple:
    """Match roots of prod_{g>0}(T^g - 1) / prod_{g<0}(T^|g| - 1) into (a, b).

    Returns (HGData, C) where z = C t is the rational rescaling making the
    t-coefficients integral; C = prod |gamma_i|^{gamma_i}, with sides
    canonicalized so that an all-ones list (maximal unipotent side) is b.
    """
    num: dict = {}
    den: dict = {}
    for gam in g.entries:
        target = num if gam > 0 else den
        for r in _roots_of_unity(abs(gam)):
            target[r] = target.get(r, 0) + 1
    # cancel
    for r in sorted(set(num) & set(den)):
        c = min(num[r], den[r])
        num[r] -= c
        den[r] -= c
        if not num[r]:
            del num[r]
        if not den[r]:
            del den[r]
    a = tuple(sorted(r for r, c in num.items() for _ in range(c)))
    b = tuple(sorted(r for r, c in den.items() for _ in range(c)))
    C = Fraction(1)
    for gam in g.entries:
        C *= Fraction(abs(gam)) ** gam
    if not a and not b:
        # degenerate trivial local system
        return HGData((Fraction(1),), (Fraction(1),)), Fraction(1)
    if len(a) != len(b):
        raise HGError("gamma vector produced unbalanced data")
    h = HGData(a, b)
    if not h.b_all_ones() and all(x == 1 for x in a):
        h = HGData(b, a)
        C = 1 / C
    return h, C


def _cyclotomic_counts(indices: tuple) -> dict:
    """Decompose a Galois-stable multiset of e(p/q) into cyclotomic counts."""
    from math import gcd
    counts: dict = {}
    pool: dict = {}
    for x in indices:
        pool[x] = pool.get(x, 0) + 1
    while pool:
        x = next(iter(pool))
        q = x.denominator if x != 1 else 1
        prim = [Fraction(p, q) for p in range(1, q + 1) if gcd(p, q) == 1]
        if q == 1:
            prim = [Fraction(1)]
        mult = min(pool.get(r, 0) for r in prim)
        if mult == 0:
            raise HGError(f"index multiset not Galois-stable at denominator {q}")
        counts[q] = counts.get(q, 0) + mult
        for r in prim:
            pool[r] -= mult
            if not pool[r]:
                del pool[r]
    return counts


def scale_C(h: HGData) -> Fraction:
    """The rational C with z = C t (equivalently 1/lambda of the S-series)."""
    ca = _cyclotomic_counts(h.a)
    cb = _cyclotomic_counts(h.b)
    exps: dict = {}
    for counts, sign in ((ca, 1), (cb, -1)):
        for q, c in counts.items():
            for d in range(1, q + 1):
                if q % d == 0:
                    mu = _mobius(q // d)
                    if mu:
                        exps[d] = exps.get(d, 0) + sign * mu * c
    C = Fraction(1)
    for d, e in exps.items():
        C *= Fraction(d) ** (d * e)
    return C


# ---------------------------------------------------------------------------
# coefficient streams
# ---------------------------------------------------------------------------

def _ratio(h: HGData, k: int) -> Fraction:
    num = Fraction(1)
    for aj in h.a:
        num *= k + aj
    den = Fraction(1)
    for bj in h.b:
        den *= k + bj
    return num / den


def coeff_ak(h: HGData, k: int) -> Fraction:
    """a_k = prod_j [a_j]_k / prod_j [b_j]_k, exactly."""
    if k < 0:
        raise HGError("k must be nonnegative")
    val = Fraction(1)
    for i in range(k):
        val *= _ratio(h, i)
    return val


def coeff_stream(h: HGData, K: int, scale: Fraction = Fraction(1)) -> list:
    """[a_0, a_1 C, a_2 C^2, ...]: coefficients in t when z = C t."""
    out = [Fraction(1)]
    for k in range(K - 1):
        out.append(out[-1] * _ratio(h, k) * scale)
    return out


# ---------------------------------------------------------------------------
# s-deformation
# ---------------------------------------------------------------------------

def _linear_pochhammer(c0: Fraction, k: int, order: int) -> list:
    """[c0 + s]_k as a truncated s-polynomial (dense, rational)."""
    out = [Fraction(1)] + [Fraction(0)] * order
    for i in range(k):
        out = sp_mul(out, [c0 + i, Fraction(1)], order)
    return out


def ck_s(h: HGData, k: int, s_order: int) -> list:
    """c_k(s) = prod_j [a_j+s]_k / prod_j [b_j+s]_k, truncated s-series.

    For b all ones this is a_k(s)/alpha(s), the Frobenius-normalized
    deformation with purely rational coefficients.
    """
    num = [Fraction(1)] + [Fraction(0)] * s_order
    for aj in h.a:
        num = sp_mul(num, _linear_pochhammer(aj, k, s_order), s_order)
    den = [Fraction(1)] + [Fraction(0)] * s_order
    for bj in h.b:
        den = sp_mul(den, _linear_pochhammer(bj, k, s_order), s_order)
    return sp_mul(num, sp_inv(den, s_order), s_order)


# psi^(m)(a) - psi^(m)(1) for the supported exact indices
_PSI_BASE_DIFF = {
    (Fraction(1), 0): ExactNum.from_rational(0),
    (Fraction(1), 1): ExactNum.from_rational(0),
    (Fraction(1), 2): ExactNum.from_rational(0),
    (Fraction(1), 3): ExactNum.from_rational(0),
    (Fraction(1, 2), 0): -2 * EX_LN2,
    (Fraction(1, 2), 1): ExactNum.atom("pi", 2, Fraction(1, 3)),
    (Fraction(1, 2), 2): -12 * EX_Z3,
    (Fraction(1, 2), 3): ExactNum.atom("pi", 4, Fraction(14, 15)),
    (Fraction(1, 4), 0): -3 * EX_LN2 - ExactNum.atom("pi", 1, Fraction(1, 2)),
    (Fraction(1, 4), 1): ExactNum.atom("pi", 2, Fraction(5, 6)) + 8 * EX_CAT,
    (Fraction(1, 4), 2): ExactNum.atom("pi", 3, Fraction(-2)) - 54 * EX_Z3,
    (Fraction(1, 4), 3): ExactNum.atom("pi", 4, Fraction(119, 15)) + 768 * EX_B4,
    (Fraction(3, 4), 0): -3 * EX_LN2 + ExactNum.atom("pi", 1, Fraction(1, 2)),
    (Fraction(3, 4), 1): ExactNum.atom("pi", 2, Fraction(5, 6)) - 8 * EX_CAT,
    (Fraction(3, 4), 2): ExactNum.atom("pi", 3, Fraction(2)) - 54 * EX_Z3,
    (Fraction(3, 4), 3): ExactNum.atom("pi", 4, Fraction(119, 15)) - 768 * EX_B4,
}

EXACT_INDICES = (Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(3, 4))


def psi_diff_exact(a: Fraction, m: int, k: int = 0) -> ExactNum:
    """psi^(m)(k+a) - psi^(m)(k+1) in harmonic-number atoms."""
    if (a, m) not in _PSI_BASE_DIFF:
        raise HGError(f"no exact polygamma reduction for index {a}, order {m}")
    base = _PSI_BASE_DIFF[(a, m)]
    fac = 1
    for i in range(1, m + 1):
        fac *= i
    sign_fac = Fraction((-1) ** m * fac)
    tail_a = sum((Fraction(1) / (a + j) ** (m + 1) for j in range(k)), Fraction(0))
    tail_1 = sum((Fraction(1, j ** (m + 1)) for j in range(1, k + 1)), Fraction(0))
    return base + sign_fac * (tail_a - tail_1)


def alpha_s(h: HGData, s_order: int, pol: PrecisionPolicy | None = None,
            mode: str = "exact") -> list:
    """alpha(s) = prod_j Gamma(s+a_j) / (Gamma(a_j) Gamma(s+1)) as an s-series.

    mode "exact" needs all a_j in {1, 1/2, 1/4, 3/4} (harmonic-number
    atoms); "floating" falls back to numeric polygamma under pol;
    "symbolic" returns opaque generators alpha_1..alpha_order, useful for
    residual checks that must hold for arbitrary alpha.
    """
    if not h.b_all_ones():
        raise HGError("alpha(s) is defined for maximal unipotent data (b all ones)")
    if mode == "symbolic":
        out = [ExactNum.from_rational(1)]
        out += [ExactNum.atom(f"alpha{m}") for m in range(1, s_order + 1)]
        return out
    if mode == "exact":
        if any(aj not in EXACT_INDICES for aj in h.a):
            raise HGError(f"unsupported a_j for exact mode in {h}; use floating")
        log_alpha = [ExactNum.from_rational(0)] * (s_order + 1)
        fac = 1
        for m in range(1, s_order + 1):
            fac *= m
            acc = ExactNum.from_rational(0)
            for aj in h.a:
                acc = acc + psi_diff_exact(aj, m - 1, 0)
            log_alpha[m] = acc * Fraction(1, fac)
        return sp_exp(log_alpha, s_order)
    if mode == "floating":
        if pol is None:
            raise HGError("floating mode requires a precision policy")
        ctx = pol.ctx
        log_alpha = [ctx.mpf(0)] * (s_order + 1)
        fac = 1
        for m in range(1, s_order + 1):
            fac *= m
            acc = ctx.mpf(0)
            for aj in h.a:
                acc += ctx.psi(m - 1, ctx.mpf(aj.numerator) / aj.denominator) \
                    - ctx.psi(m - 1, 1)
            log_alpha[m] = acc / fac
        return sp_exp(log_alpha, s_order)
    raise HGError(f"unknown mode {mode!r}")


def ak_s(h: HGData, k: int, s_order: int, pol: PrecisionPolicy | None = None,
         mode: str = "exact") -> list:
    """a_k(s) = alpha(s) c_k(s): the deformed coefficient as an s-series."""
    if s_order > 4:
        raise HGError("s_order is capped at 4")
    alpha = alpha_s(h, s_order, pol, mode)
    return sp_mul(alpha, ck_s(h, k, s_order), s_order)


def z_s_logs(s_order: int, K: int = 1) -> SLaurent:
    """z^s = sum_j s^j log^j z / j! as an SLaurent with K retained z-terms."""
    fac = 1
    terms = {}
    for j in range(s_order + 1):
        if j:
            fac *= j
        ps = PowSeries(0, [Fraction(1, fac)] + [0] * (K - 1))
        terms[(j, 0)] = LogSeries.from_pow(ps, j)
    return SLaurent(terms, s_order, 0)


def frobenius_phi(h: HGData, K: int, s_order: int) -> SLaurent:
    """Phi-hat(s, z) = sum_k c_k(s) z^(k+s), exact rational coefficients.

    For b = 1's this is the generating series of Frobenius periods:
    its s^m coefficient phi_m satisfies phi_m - log^m z / m! -> 0 at z=0.
    """
    if s_order > 4:
        raise HGError("s_order is capped at 4")
    cks = [ck_s(h, k, s_order) for k in range(K)]
    fac = [1] * (s_order + 1)
    for j in range(1, s_order + 1):
        fac[j] = fac[j - 1] * j
    terms = {}
    for m in range(s_order + 1):
        # log-power j carries the s^j piece of z^s times c_k's s^(m-j) piece
        parts = []
        for j in range(m + 1):
            coeffs = [cks[k][m - j] * Fraction(1, fac[j]) for k in range(K)]
            parts.append(PowSeries(0, coeffs))
        terms[(m, 0)] = LogSeries(parts)
    return SLaurent(terms, s_order, 0)


def frobenius_E(h: HGData, K: int, s_order: int,
                pol: PrecisionPolicy | None = None, mode: str = "exact") -> SLaurent:
    """E(s, z) = alpha(s) * Phi(s, z), the Betti-period generating series."""
    phi = frobenius_phi(h, K, s_order)
    alpha = alpha_s(h, s_order, pol, mode)
    terms = {}
    for m in range(s_order + 1):
        acc = None
        for i in range(m + 1):
            a = alpha[i]
            sub = phi.slot(m - i)
            if sub.is_zero():
                continue
            piece = sub.scale(a)
            acc = piece if acc is None else acc + piece
        if acc is not None:
            terms[(m, 0)] = acc
    return SLaurent(terms, s_order, 0)


def W_r(h: HGData, r: int, K: int) -> LogSeries:
    """The unique solution of L(.) = z^(1/r) vanishing at z = 0:
    W_r(z) = sum_k prod_j ([a_j + 1/r]_k / [1/r]_(k+1)) z^(k + 1/r)."""
    if not h.b_all_ones():
        raise HGError("W_r requires b all ones")
    if r < 2:
        raise HGError("r must be at least 2")
    rr = Fraction(1, r)
    coeffs = []
    cur = Fraction(1)
    for aj in h.a:
        cur *= Fraction(1) / rr
    coeffs.append(cur)
    for k in range(K - 1):
        ratio = Fraction(1)
        for aj in h.a:
            ratio *= (aj + rr + k) / (rr + k + 1)
        cur *= ratio
        coeffs.append(cur)
    return LogSeries.from_pow(PowSeries(rr, coeffs))


# ---------------------------------------------------------------------------
# classifiers
# ---------------------------------------------------------------------------

def kappa(h: HGData) -> int:
    """Number of integer indices (the number of times 1 occurs)."""
    return sum(1 for x in h.a + h.b if x == 1)


_TABLE_LABELS = {
    (Fraction(1, 5), Fraction(2, 5), Fraction(3, 5), Fraction(4, 5)): "Ia",
    (Fraction(1, 4), Fraction(1, 2), Fraction(1, 2), Fraction(3, 4)): "Ib",
    (Fraction(1, 3), Fraction(1, 3), Fraction(2, 3), Fraction(2, 3)): "II",
    (Fraction(1, 2),) * 4: "IV",
}


def classify(h: HGData) -> CycleType:
    """Cycle type expected for the second normal function (weight-3 regime).

    Implements the observed table rule: p = 2 + #(a_j = 1/2)/2 and
    K-theory type K_(2p-4).  Outside the (1,1,1,1) maximal unipotent
    regime the type is generic/undetermined.
    """
    if len(h.a) != 4 or not h.b_all_ones():
        return CycleType("generic", None, None)
    halves = sum(1 for x in h.a if x == Fraction(1, 2))
    if halves % 2:
        raise HGError("odd count of a_j = 1/2 in the 14-case regime")
    p = 2 + halves // 2
    label = _TABLE_LABELS.get(tuple(sorted(h.a)), "generic")
    return CycleType(label, p, f"K{2 * p - 4}")


# ---------------------------------------------------------------------------
# constant-term oracle
# ---------------------------------------------------------------------------

def constant_term_oracle(phi: dict, k: int, cap: int = 6,
                         max_monomials: int = 2_000_000) -> int:
    """Constant term of phi^k by brute-force expansion.

    phi maps exponent vectors (tuples of ints) to integer coefficients.
    """
    if k < 0 or k > cap:
        raise HGError(f"k = {k} exceeds the oracle cap {cap}")
    if k == 0:
        return 1
    nvars = len(next(iter(phi)))
    acc = {(0,) * nvars: 1}
    for _ in range(k):
        new: dict = {}
        for e1, c1 in acc.items():
            for e2, c2 in phi.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                new[e] = new.get(e, 0) + c1 * c2
                if len(new) > max_monomials:
                    raise HGError("expansion exceeds memory cap")
        acc = new
    return acc.get((0,) * nvars, 0)
