"""Command-line surface: period, regulator, verify, lfun, fetch, hadamard.

Exit codes: 0 success, 2 usage/parse error, 3 numerical divergence,
4 verification failure.  All rational inputs are exact "p/q" strings;
decimals are rejected for t-points.  A key=value config file may supply
defaults; explicit flags win.  HYPERREG_CACHE overrides the cache dir.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import hypergeom
from .mpnum import PrecisionPolicy
from .series import DivergenceError, TailBoundError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DIVERGENCE = 3
EXIT_VERIFY = 4


class CliError(Exception):
    def __init__(self, msg, code=EXIT_USAGE):
        super().__init__(msg)
        self.code = code


def _parse_rational(text: str) -> Fraction:
    if not text or any(ch in text for ch in ".eE"):
        raise CliError(f"t-points must be exact rationals 'p/q', got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"cannot parse rational {text!r}: {exc}")


def _load_config(path):
    out = {}
    if not path:
        return out
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise CliError(f"config line without '=': {line!r}")
                k, v = line.split("=", 1)
                out[k.strip()] = v.strip()
    except OSError as exc:
        raise CliError(f"cannot read config: {exc}")
    return out


def _add_common(parser, suppress=False):
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--config", help="key=value defaults file", default=d)
    parser.add_argument("--digits", type=int, default=d)
    parser.add_argument("--max-terms", type=int, default=d)
    parser.add_argument("--mode", choices=("exact", "floating"), default=d)
    parser.add_argument("--fixtures", default=d)
    parser.add_argument("--cache", default=d)
    parser.add_argument("--offline", action="store_true",
                        default=argparse.SUPPRESS if suppress else False)
    parser.add_argument("--json", action="store_true", dest="as_json",
                        default=argparse.SUPPRESS if suppress else False)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)
    ap = argparse.ArgumentParser(prog="hyperreg", description=__doc__)
    _add_common(ap)
    sub = ap.add_subparsers(dest="command", required=True,
                            parser_class=lambda **kw: argparse.ArgumentParser(
                                parents=[common], **kw))

    p = sub.add_parser("period", help="hypergeometric coefficient stream")
    p.add_argument("data", help="'a1,..;b1,..' or a gamma vector via --gamma "
                               "(negative entries need a '--' separator), "
                               "or the literal appB:pi0")
    p.add_argument("--gamma", action="store_true",
                   help="interpret data as a gamma vector")
    p.add_argument("--var", choices=("z", "t"), default="z")
    p.add_argument("-K", type=int, default=8)
    p.add_argument("--point", default=None, help="evaluate at this rational")

    r = sub.add_parser("regulator", help="case-study regulator report")
    r.add_argument("--case", required=True)
    r.add_argument("--t", required=True,
                   help="rational t-point, or a comma-separated list "
                        "(evaluated concurrently, output in input order)")
    r.add_argument("--workers", type=int, default=4)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=("identities", "ode", "continuation",
                                     "ratios", "all"))

    lf = sub.add_parser("lfun", help="evaluate an L-function spec")
    lf.add_argument("spec", help="JSON file with degree/weight/conductor/"
                                 "gamma_shifts/sign/euler_path[/poles]")
    lf.add_argument("--s", required=True)
    lf.add_argument("--order", type=int, default=0)

    f = sub.add_parser("fetch", help="populate the web cache for a label")
    f.add_argument("label")

    h = sub.add_parser("hadamard", help="run the annulus-residue engines")
    h.add_argument("which", choices=("k4", "k2_R0"))
    h.add_argument("-K", type=int, default=20)
    return ap


def _policy(args) -> PrecisionPolicy:
    digits = args.digits if args.digits else 30
    max_terms = args.max_terms if args.max_terms else 4000
    return PrecisionPolicy(digits, max_terms=max_terms)


def cmd_period(args, pol: PrecisionPolicy):
    if args.data == "appB:pi0":
        from .regulators.appb import pi0_relative_coefficients
        coeffs = pi0_relative_coefficients(args.K)
        return {"series": "appB-pi0-relative",
                "coefficients": [str(c) for c in coeffs]}
    try:
        if args.gamma:
            h, C = hypergeom.from_gamma(hypergeom.parse_gamma(args.data))
        else:
            h = hypergeom.parse_hg(args.data)
            C = hypergeom.scale_C(h) if args.var == "t" else Fraction(1)
    except hypergeom.HGError as exc:
        raise CliError(str(exc))
    scale = C if args.var == "t" else Fraction(1)
    coeffs = hypergeom.coeff_stream(h, args.K, scale)
    if args.mode == "floating":
        ctx = pol.ctx
        shown = [ctx.nstr(ctx.mpf(c.numerator) / c.denominator, pol.target_digits)
                 for c in coeffs]
    else:
        shown = [str(c) for c in coeffs]
    out = {"data": str(h), "var": args.var, "scale": str(scale),
           "mode": args.mode or "exact", "coefficients": shown}
    if args.point:
        t0 = _parse_rational(args.point)
        from .series import LogSeries, PowSeries
        ls = LogSeries.from_pow(PowSeries(0, coeffs))
        try:
            val, tail = ls.to_floating(pol).evaluate(t0, pol, require_tail=False)
        except DivergenceError as exc:
            raise CliError(str(exc), EXIT_DIVERGENCE)
        out["value"] = pol.ctx.nstr(val, pol.target_digits)
        out["tail_bound"] = pol.ctx.nstr(tail, 3)
    return out


def cmd_regulator(args, pol: PrecisionPolicy):
    from .lfun.ratio import ratio_report
    from .regulators.reporting import CaseError, check_case, t_interval_ok
    case = args.case
    try:
        check_case(case)
    except CaseError as exc:
        raise CliError(str(exc))
    points = [_parse_rational(x) for x in args.t.split(",") if x.strip()]
    if not points:
        raise CliError("no t-points given")
    for t in points:
        if not t_interval_ok(case, t):
            raise CliError(f"t = {t} outside the validity interval of case {case}")
    fixtures_dir = args.fixtures or "fixtures"

    def run_one(t):
        return json.loads(ratio_report(case, t, pol, fixtures_dir).to_json(pol))

    try:
        if len(points) == 1:
            return run_one(points[0])
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=max(1, args.workers)) as pool:
            return list(pool.map(run_one, points))
    except (DivergenceError, TailBoundError) as exc:
        raise CliError(str(exc), EXIT_DIVERGENCE)
    except CaseError as exc:
        raise CliError(str(exc), EXIT_VERIFY)


def cmd_verify(args, pol: PrecisionPolicy):
    from .verify import run_suite
    results, ok = run_suite(args.suite, pol, args.fixtures or "fixtures")
    if not ok:
        raise CliError(json.dumps(results, indent=1), EXIT_VERIFY)
    return results


def cmd_lfun(args, pol: PrecisionPolicy):
    from .lfun.euler import euler_ingest
    from .lfun.motive import LFunctionSpec, motive_L, MotiveError
    try:
        with open(args.spec, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        table = euler_ingest(doc["euler_path"], doc.get("degree"))
        spec = LFunctionSpec(
            degree=int(doc["degree"]), weight=int(doc["weight"]),
            conductor=int(doc["conductor"]),
            gamma_shifts=tuple((k, Fraction(s)) for k, s in doc["gamma_shifts"]),
            sign=doc.get("sign", 1), euler=table,
            poles=tuple((Fraction(p), r) for p, r in doc.get("poles", [])),
            label=doc.get("label", ""))
    except (OSError, KeyError, ValueError) as exc:
        raise CliError(f"bad spec file: {exc}")
    try:
        val, err = motive_L(spec, Fraction(args.s), args.order, pol)
    except MotiveError as exc:
        raise CliError(str(exc), EXIT_DIVERGENCE)
    return {"label": spec.label, "s": args.s, "order": args.order,
            "value": pol.ctx.nstr(val, pol.target_digits),
            "self_test_residual": pol.ctx.nstr(err, 3)}


def cmd_fetch(args, pol: PrecisionPolicy):
    from .lfun.web import FetchError, lmfdb_fetch
    cache = args.cache or os.environ.get("HYPERREG_CACHE", ".hyperreg-cache")
    try:
        table = lmfdb_fetch(args.label, cache, offline=args.offline)
    except FetchError as exc:
        raise CliError(str(exc), EXIT_DIVERGENCE)
    return {"label": args.label, "p_max": table.p_max,
            "primes": len(table.factors), "provenance": table.provenance}


def cmd_hadamard(args, pol: PrecisionPolicy):
    from .regulators.hadamard import hadamard_regulator
    from .regulators.reporting import CaseError
    try:
        out = hadamard_regulator(args.which, args.K)
    except CaseError as exc:
        raise CliError(str(exc), EXIT_VERIFY)
    return {"engine": args.which, "K": args.K,
            "series": json.loads(out.to_json(pol)),
            "verified": "matches closed form coefficientwise"}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        cfg = _load_config(args.config)
        for key in ("digits", "max_terms", "mode", "fixtures", "cache"):
            if getattr(args, key, None) in (None, False) and key in cfg:
                val = cfg[key]
                setattr(args, key, int(val) if key in ("digits", "max_terms") else val)
        pol = _policy(args)
        handler = {
            "period": cmd_period, "regulator": cmd_regulator,
            "verify": cmd_verify, "lfun": cmd_lfun,
            "fetch": cmd_fetch, "hadamard": cmd_hadamard,
        }[args.command]
        result = handler(args, pol)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (DivergenceError, TailBoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE
    if args.as_json:
        print(json.dumps(result, sort_keys=True))
    else:
        print(json.dumps(result, indent=1, sort_keys=True))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
