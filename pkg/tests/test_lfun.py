from __future__ import annotations

import json
from fractions import Fraction

import pytest

from hyperreg.lfun.dirichlet import (LfunError, dedekind_quadratic_deriv0,
                                     dirichlet_L, functional_equation_residual,
                                     kronecker_character, quartic_character_mod5)
from hyperreg.lfun.euler import (EulerError, EulerFactorTable,
                                 check_multiplicativity, dirichlet_coefficients,
                                 euler_from_character, euler_ingest)
from hyperreg.lfun.motive import (CoverageError, LFunctionSpec, MotiveError,
                                  gamma_pole_order, motive_L)
from hyperreg.lfun.web import NotFoundError, lmfdb_fetch
from hyperreg.mpnum import PrecisionPolicy, special

F = Fraction


def test_L_chi4_at_2(pol):
    ctx = pol.ctx
    chi4 = kronecker_character(-4)
    assert abs(dirichlet_L(chi4, 2, 0, pol) - special("catalan", pol)) < pol.tol


def test_Lprime_chi5_at_0(pol):
    ctx = pol.ctx
    chi5 = kronecker_character(5)
    assert abs(dirichlet_L(chi5, 0, 1, pol)
               - ctx.log((1 + ctx.sqrt(5)) / 2)) < pol.tol


def test_intro_chi_minus3_identity(pol):
    from hyperreg.mpnum import dilog
    ctx = pol.ctx
    theta = ctx.expjpi(ctx.mpf(2) / 3)
    lhs = ctx.sqrt(3) / 9 * ctx.pi ** 2 * ctx.im(dilog(theta, pol))
    rhs = ctx.zeta(2) * dirichlet_L(kronecker_character(-3), 2, 0, pol)
    assert abs(lhs - rhs) < pol.tol


def test_dedekind_values(pol):
    ctx = pol.ctx
    assert abs(dedekind_quadratic_deriv0(5, pol)
               + ctx.log((1 + ctx.sqrt(5)) / 2) / 2) < pol.tol
    assert abs(dedekind_quadratic_deriv0(21, pol)
               + ctx.log((5 + ctx.sqrt(21)) / 2) / 2) < pol.tol
    with pytest.raises(LfunError):
        dedekind_quadratic_deriv0(12 + 3, pol)       # 15 not fundamental... is it?


def test_functional_equations_ten_characters(pol):
    ctx = pol.ctx
    s_points = [ctx.mpc("0.7", "0.3"), ctx.mpc("1.4", "-0.8")]
    chars = [kronecker_character(D) for D in (5, -4, -3, 8, -8, 12, 13, 21, -7, 77)]
    chars.append(quartic_character_mod5())
    for chi in chars:
        for s in s_points:
            res = functional_equation_residual(chi, s, pol)
            assert res < ctx.mpf(10) ** (-pol.target_digits + 5)


def test_L_at_1(pol):
    ctx = pol.ctx
    chi5 = kronecker_character(5)
    expect = 2 * ctx.log((1 + ctx.sqrt(5)) / 2) / ctx.sqrt(5)
    assert abs(dirichlet_L(chi5, 1, 0, pol) - expect) < pol.tol


def test_euler_ingest_roundtrip(tmp_path):
    path = tmp_path / "t.jsonl"
    path.write_text('{"p": 2, "factor": [1]}\n{"p": 3, "factor": [1, -1, 3]}\n')
    table = euler_ingest(path)
    assert table.factors == {2: [1], 3: [1, -1, 3]}
    # serialize round-trips byte-equal modulo key order
    text = table.to_jsonl()
    path2 = tmp_path / "t2.jsonl"
    path2.write_text(text)
    assert euler_ingest(path2).factors == table.factors
    assert euler_ingest(path2).to_jsonl() == text


def test_euler_ingest_errors(tmp_path):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"p": 2, "factor": [1, -1]}\n{"p": 3, "factor": [2, 1]}\n')
    with pytest.raises(EulerError) as err:
        euler_ingest(bad)
    assert ":2:" in str(err.value)          # reports the line number
    bad2 = tmp_path / "bad2.jsonl"
    bad2.write_text("not json\n")
    with pytest.raises(EulerError) as err2:
        euler_ingest(bad2)
    assert ":1:" in str(err2.value)


def test_degree_zero_bad_factor():
    table = EulerFactorTable({2: [1]}, 4)
    assert not table.good(2)
    assert table.p_max == 2


def test_multiplicativity_brute(fixtures_dir):
    table = euler_ingest(fixtures_dir / "euler" / "quintic_field.jsonl")
    a = dirichlet_coefficients(table, 10 ** 4)
    assert a[1] == 1
    assert check_multiplicativity(a)


def test_multiplicativity_closed_under_products():
    chi = kronecker_character(-4)
    table = euler_from_character(chi, 300)
    a = dirichlet_coefficients(table, 300)
    # also a_{p^2} = a_p^2 for this totally multiplicative character
    for p in (3, 5, 7, 13):
        assert a[p * p] == a[p] ** 2


def test_gamma_pole_order():
    spec = LFunctionSpec(4, 0, 2869, (("C", F(0)), ("C", F(0))), 1, None)
    assert gamma_pole_order(spec, F(0)) == 2
    assert gamma_pole_order(spec, F(1)) == 0
    spec2 = LFunctionSpec(4, 3, 1, (("C", F(0)), ("C", F(-1))), 1, None)
    assert gamma_pole_order(spec2, F(0)) == 2       # the K4 L''(0) regime
    assert gamma_pole_order(spec2, F(1)) == 1       # the K2 L'(1) regime


@pytest.mark.slow
def test_motive_zeta(pol):
    ctx = pol.ctx
    primes = [p for p in range(2, 120) if all(p % q for q in range(2, p))]
    table = EulerFactorTable({p: [1, -1] for p in primes}, 1, "zeta")
    spec = LFunctionSpec(1, 0, 1, (("R", F(0)),), 1, table,
                         poles=((F(1), 1), (F(0), -1)), label="zeta")
    pol12 = PrecisionPolicy(14)
    val, err = motive_L(spec, 2, 0, pol12)
    assert abs(val - pol12.ctx.pi ** 2 / 6) < pol12.ctx.mpf(10) ** -12


@pytest.mark.slow
def test_motive_chi4_and_derivatives():
    pol = PrecisionPolicy(18)
    ctx = pol.ctx
    chi4 = kronecker_character(-4)
    spec = LFunctionSpec(1, 0, 4, (("R", F(1)),), 1,
                         euler_from_character(chi4, 400), label="chi_-4")
    val, err = motive_L(spec, 2, 0, pol)
    assert abs(val - ctx.catalan) < ctx.mpf(10) ** -15
    # derivative kernels vs central finite differences
    L1, _ = motive_L(spec, 2, 1, pol, self_test=False)
    L2, _ = motive_L(spec, 2, 2, pol, self_test=False)
    h = ctx.mpf(10) ** -4
    f = lambda s: motive_L(spec, s, 0, pol, self_test=False)[0]
    assert abs(L1 - (f(2 + h) - f(2 - h)) / (2 * h)) < ctx.mpf(10) ** -7
    assert abs(L2 - (f(2 + h) - 2 * f(2) + f(2 - h)) / h ** 2) < ctx.mpf(10) ** -6
    # and against the independent Hurwitz route
    assert abs(L1 - dirichlet_L(chi4, 2, 1, pol)) < ctx.mpf(10) ** -15


@pytest.mark.slow
def test_motive_trivial_zero_leading(pol):
    """L'(chi_5, 0) through the gamma-pole leading-coefficient path."""
    pol18 = PrecisionPolicy(18)
    ctx = pol18.ctx
    chi5 = kronecker_character(5)
    spec = LFunctionSpec(1, 0, 5, (("R", F(0)),), 1,
                         euler_from_character(chi5, 400), label="chi_5")
    val, _ = motive_L(spec, 0, 1, pol18)
    assert abs(val - ctx.log((1 + ctx.sqrt(5)) / 2)) < ctx.mpf(10) ** -15
    with pytest.raises(MotiveError):
        motive_L(spec, 0, 0, pol18)     # order must match the pole order


@pytest.mark.slow
def test_motive_cutoff_stability():
    """Varying the smoothing cutoff changes nothing beyond the error estimate."""
    pol = PrecisionPolicy(16)
    ctx = pol.ctx
    chi4 = kronecker_character(-4)
    spec = LFunctionSpec(1, 0, 4, (("R", F(1)),), 1,
                         euler_from_character(chi4, 400))
    v1, _ = motive_L(spec, 2, 0, pol, self_test=False)
    v2, _ = motive_L(spec, 2, 0, pol, cutoff_A=2, self_test=False)
    assert abs(v1 - v2) < ctx.mpf(10) ** -14


def test_coverage_error():
    table = EulerFactorTable({2: [1, -1], 3: [1, -1], 5: [1, -1], 7: [1, -1]}, 1)
    spec = LFunctionSpec(1, 0, 10 ** 6, (("R", F(0)),), 1, table,
                         poles=((F(1), 1), (F(0), -1)))
    pol = PrecisionPolicy(20)
    with pytest.raises(CoverageError) as err:
        motive_L(spec, 2, 0, pol, self_test=False)
    assert err.value.required > 7


def test_web_cache_roundtrip(tmp_path):
    body = json.dumps({"degree": 2, "factors": {"2": [1, -1], "3": [1, 2]}}).encode()
    calls = []

    def opener(url):
        calls.append(url)
        return body

    t1 = lmfdb_fetch("test/label/1-2-3", tmp_path, opener=opener)
    assert t1.factors == {2: [1, -1], 3: [1, 2]}
    assert len(calls) == 1
    # re-fetch is a cache hit: bit-identical, no second network call
    t2 = lmfdb_fetch("test/label/1-2-3", tmp_path, opener=opener)
    assert len(calls) == 1
    assert t2.factors == t1.factors
    cached = list((tmp_path / "lmfdb").glob("*.json"))
    assert any(p.read_bytes() == body for p in cached)
    # offline miss is a distinct error
    with pytest.raises(NotFoundError):
        lmfdb_fetch("missing/label", tmp_path, offline=True)
