"""Hypergeometric differential operators and exact residual checks.

Operators act on LogSeries purely symbolically through the D-action table
(D = z d/dz); no numerical differentiation happens anywhere, so residuals
of the Frobenius and inhomogeneous equations can be asserted to be
*exactly* zero in exact mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .hypergeom import HGData, W_r, frobenius_E, frobenius_phi, z_s_logs, alpha_s
from .mpnum import PrecisionPolicy
from .series import LogSeries, PowSeries, SLaurent, sp_mul, theta

__all__ = ["HGOperator", "ResidualReport", "hg_operator", "apply_operator",
           "residual_frobenius", "residual_inhomogeneous"]


@dataclass(frozen=True)
class HGOperator:
    """L = prod_j (D + b_j - 1) - scale * z * prod_j (D + a_j)."""
    b_part: tuple
    a_part: tuple
    var: str = "z"          # written in z (scale 1) or t (z = scale * t)
    scale: Fraction = Fraction(1)

    @property
    def degree(self) -> int:
        return len(self.b_part)


def hg_operator(h: HGData, var: str = "z", scale: Fraction = Fraction(1)) -> HGOperator:
    if var not in ("z", "t"):
        raise ValueError("var must be 'z' or 't'")
    if var == "z":
        scale = Fraction(1)
    return HGOperator(tuple(h.b), tuple(h.a), var, Fraction(scale))


def _apply_shifted_chain(factors, f: LogSeries) -> LogSeries:
    """prod (D + c) applied to f, exactly."""
    out = f
    for c in factors:
        out = theta(out) + out.scale(Fraction(c))
    return out


def apply_operator(L: HGOperator, f: LogSeries) -> LogSeries:
    """L f; input truncated at K terms, output exact through the same window."""
    lead = _apply_shifted_chain([bj - 1 for bj in L.b_part], f)
    tail = _apply_shifted_chain(list(L.a_part), f).shift(1).scale(L.scale)
    return lead - tail


def apply_operator_s(L: HGOperator, F: SLaurent) -> SLaurent:
    """L applied slotwise in s (D touches only the z-dependence)."""
    return SLaurent({k: apply_operator(L, v) for k, v in F.terms.items()},
                    F.s_order, F.min_order)


@dataclass
class ResidualReport:
    max_abs_residual: object     # 0 (exact mode) or an mpf
    terms_checked: int
    mode: str                    # "exact" | "floating"

    @property
    def exact_zero(self) -> bool:
        return self.mode == "exact" and self.max_abs_residual == 0


def _s_poly_b_shift(h: HGData, s_order: int) -> list:
    """prod_j (s + b_j - 1) as an s-polynomial (s^(n+1) for b all ones)."""
    out = [Fraction(1)] + [Fraction(0)] * s_order
    for bj in h.b:
        out = sp_mul(out, [bj - 1, Fraction(1)], s_order)
    return out


def _mul_spoly_slaurent(poly: list, F: SLaurent) -> SLaurent:
    terms: dict = {}
    for (m, lg), v in F.terms.items():
        for i, c in enumerate(poly):
            key = (m + i, lg)
            if key[0] > F.s_order:
                continue
            piece = v.scale(c)
            if key in terms:
                terms[key] = terms[key] + piece
            else:
                terms[key] = piece
    return SLaurent(terms, F.s_order, F.min_order)


def _count_and_max(diff: SLaurent, pol: PrecisionPolicy | None):
    n = 0
    mx = 0
    for (_, _), v in diff.terms.items():
        for p in v.parts:
            if p is None:
                continue
            for c in p.coeffs:
                n += 1
                if pol is not None:
                    mag = abs(c) if not hasattr(c, "to_mp") else abs(c.to_mp(pol.ctx))
                    if mag > mx:
                        mx = mag
    return n, mx


def residual_frobenius(h: HGData, s_order: int, K: int,
                       pol: PrecisionPolicy | None = None,
                       mode: str = "exact") -> ResidualReport:
    """Verify L E = prod_j(s + b_j - 1) alpha(s) z^s and the Phi analogue.

    The Phi residual is a purely rational computation.  The E residual is
    run with alpha(s) carried as opaque symbolic coefficients, so a zero
    here is an identity valid for every value of alpha -- no numeric alpha
    enters in exact mode.
    """
    if s_order > 4:
        raise ValueError("s_order capped at 4")
    L = hg_operator(h)
    rhs_poly = _s_poly_b_shift(h, s_order)
    zs = z_s_logs(s_order, K)

    phi = frobenius_phi(h, K, s_order)
    lhs = apply_operator_s(L, phi)
    rhs = _mul_spoly_slaurent(rhs_poly, zs)
    diff = lhs - rhs
    n1, _ = _count_and_max(lhs, None)
    checked = n1

    if h.b_all_ones():
        # E = alpha * Phi with alpha carried symbolically: the residual is
        # asserted as a polynomial identity in alpha_1..alpha_s_order.
        alpha_mode = "symbolic" if mode == "exact" else "floating"
        E = frobenius_E(h, K, s_order, pol, alpha_mode)
        lhsE = apply_operator_s(L, E)
        alpha = alpha_s(h, s_order, pol, alpha_mode)
        rhsE = _mul_spoly_slaurent(sp_mul(rhs_poly, alpha, s_order), zs)
        diffE = lhsE - rhsE
    else:
        diffE = SLaurent({}, s_order, 0)

    if mode == "exact":
        bad = not (_is_zero_slaurent(diff) and _is_zero_slaurent(diffE))
        return ResidualReport(1 if bad else 0, checked, "exact")
    _, m1 = _count_and_max(diff, pol)
    _, m2 = _count_and_max(diffE, pol)
    return ResidualReport(max(m1, m2), checked, "floating")


def _is_zero_slaurent(F: SLaurent) -> bool:
    return all(v.is_zero() for v in F.terms.values())


def residual_inhomogeneous(h: HGData, r: int, K: int,
                           pol: PrecisionPolicy | None = None,
                           mode: str = "exact") -> ResidualReport:
    """Verify L W_r = z^(1/r) in every retained coefficient slot."""
    L = hg_operator(h)
    w = W_r(h, r, K)
    lhs = apply_operator(L, w)
    rhs = LogSeries.from_pow(PowSeries(Fraction(1, r), [Fraction(1)] + [0] * (K - 1)))
    diff = lhs - rhs
    n = sum(len(p.coeffs) for p in lhs.parts if p is not None)
    if mode == "exact":
        return ResidualReport(0 if diff.is_zero() else 1, n, "exact")
    mx = 0
    ctx = pol.ctx
    for p in diff.parts:
        if p is None:
            continue
        for c in p.coeffs:
            mag = abs(c) if not hasattr(c, "to_mp") else abs(c.to_mp(ctx))
            mx = max(mx, mag)
    return ResidualReport(mx, n, "floating")
