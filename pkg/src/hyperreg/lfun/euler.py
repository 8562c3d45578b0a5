"""Euler-factor tables: ingestion, expansion, multiplicativity.

Local factors are ingested from JSON-lines files (or the web cache); they
are trusted as given, with provenance recorded.  Nothing here ever
computes a local factor from hypergeometric data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

__all__ = ["EulerFactorTable", "euler_ingest", "euler_from_character",
           "dirichlet_coefficients", "check_multiplicativity", "EulerError"]


class EulerError(ValueError):
    pass


def _primes_upto(n: int) -> list:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(n ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(sieve[p * p::p]))
    return [i for i, v in enumerate(sieve) if v]


@dataclass
class EulerFactorTable:
    factors: dict                      # prime -> [1, c1, c2, ...] ints
    degree: int                        # motive degree (good-prime degree)
    provenance: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        for p, f in self.factors.items():
            if not f or f[0] != 1:
                raise EulerError(f"factor at p={p} must have constant term 1")
            if len(f) - 1 > self.degree:
                raise EulerError(f"factor at p={p} exceeds degree {self.degree}")

    @property
    def p_max(self) -> int:
        return max(self.factors) if self.factors else 0

    def good(self, p: int) -> bool:
        return p in self.factors and len(self.factors[p]) - 1 == self.degree

    def to_jsonl(self) -> str:
        lines = []
        for p in sorted(self.factors):
            lines.append(json.dumps({"p": p, "factor": self.factors[p]}, sort_keys=True))
        return "\n".join(lines) + "\n"


def euler_ingest(path, degree: int | None = None) -> EulerFactorTable:
    """Read a JSONL file of {"p": int, "factor": [1, c1, ...]} lines."""
    path = Path(path)
    factors = {}
    maxdeg = 0
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                p = int(obj["p"])
                fac = [int(c) for c in obj["factor"]]
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise EulerError(f"{path}:{lineno}: malformed line ({exc})") from None
            if not fac or fac[0] != 1:
                raise EulerError(f"{path}:{lineno}: factor constant term must be 1")
            if p in factors:
                raise EulerError(f"{path}:{lineno}: duplicate prime {p}")
            factors[p] = fac
            maxdeg = max(maxdeg, len(fac) - 1)
    if degree is None:
        degree = maxdeg
    return EulerFactorTable(factors, degree, provenance=str(path))


def euler_from_character(chi, P: int) -> EulerFactorTable:
    """Degree-1 table for a Dirichlet character with exact +-1/0 values
    (real characters only)."""
    factors = {}
    for p in _primes_upto(P):
        ang = chi.angles[p % chi.modulus]
        if ang is None:
            factors[p] = [1]
        elif ang == 0:
            factors[p] = [1, -1]
        elif 2 * ang == 1:
            factors[p] = [1, 1]
        else:
            raise EulerError("euler_from_character needs a real character")
    return EulerFactorTable(factors, 1, provenance=f"character mod {chi.modulus}")


def dirichlet_coefficients(table: EulerFactorTable, M: int,
                           require_coverage: bool = True) -> list:
    """a_1..a_M (index 0 unused) from 1/f_p(p^-s) expansions."""
    missing = [p for p in _primes_upto(M) if p not in table.factors]
    if missing and require_coverage:
        raise EulerError(f"missing Euler factors for primes {missing[:5]}..."
                         f" (P_max={table.p_max}, need {M})")
    a = [0] * (M + 1)
    a[1] = 1
    for p in _primes_upto(M):
        f = table.factors.get(p)
        if f is None:
            continue
        # inverse power series of f in x = p^-s, up to p^e <= M
        emax = 0
        pe = 1
        while pe * p <= M:
            pe *= p
            emax += 1
        inv = [1] + [0] * emax
        for n in range(1, emax + 1):
            acc = 0
            for i in range(1, min(n, len(f) - 1) + 1):
                acc += f[i] * inv[n - i]
            inv[n] = -acc
        # multiply into a[] along p-powers (standard multiplicative sieve)
        pe = [1]
        while pe[-1] * p <= M:
            pe.append(pe[-1] * p)
        for n in range(M, 0, -1):
            if n % p == 0:
                continue
            for e in range(1, len(pe)):
                if n * pe[e] > M:
                    break
                a[n * pe[e]] = a[n] * inv[e]
    return a


def check_multiplicativity(a: list, limit: int | None = None) -> bool:
    """Brute-force a_{mn} = a_m a_n for gcd(m,n) = 1."""
    from math import gcd
    M = len(a) - 1 if limit is None else min(limit, len(a) - 1)
    for m in range(2, M + 1):
        for n in range(2, M // m + 1):
            if gcd(m, n) == 1 and a[m * n] != a[m] * a[n]:
                return False
    return True
