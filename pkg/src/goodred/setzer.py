"""Setzer's criterion for Q(sqrt m) and the counts R(x), I(x), R_d(x), I_d(x)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import factor, is_squarefree, kronecker
from .goodd import Census


@dataclass(frozen=True)
class FieldCount:
    x: float
    R: int
    I: int
    good_d_scan_bound: int
    incomplete: bool = False

    def as_json(self) -> dict:
        x = int(self.x) if float(self.x).is_integer() else self.x
        return {"x": x, "R": self.R, "I": self.I, "scan_r_max": self.good_d_scan_bound}


@dataclass(frozen=True)
class Admission:
    """Result of admits_gre_q; truthiness is the verdict."""

    admits: bool
    witness: tuple[int, int] | None
    incomplete: bool

    def __bool__(self) -> bool:
        return self.admits


def _eps(d: int) -> int:
    return 1 if d % 4 == 1 else -1


def _qr_odd_primes(a: int, primes) -> bool:
    return all(kronecker(a, p) == 1 for p in primes if p != 2)


def qr_mod_squarefree(a: int, k: int) -> bool:
    """Is a a square modulo |k|, for squarefree k coprime to a."""
    if not is_squarefree(k):
        raise ValueError(f"modulus {k} is not squarefree")
    if math.gcd(a, k) != 1:
        raise ValueError(f"gcd({a}, {k}) != 1")
    return _qr_odd_primes(a, factor(k).primes)


def discriminant(m: int) -> int:
    """Discriminant of Q(sqrt m), m squarefree and != 0, 1."""
    return m if m % 4 == 1 else 4 * m


def _pair_ok(d: int, n: int, d_primes, n_primes) -> bool:
    m = d * n
    e = _eps(d)
    if d % 2 == 0 and n % 8 != (d + 1) % 8:
        return False
    if d % 8 in (3, 5) and m % 4 != 1:
        return False
    if e * d < 0 and m < 0:
        return False
    return _qr_odd_primes(e * d, n_primes) and _qr_odd_primes(-e * n, d_primes)


def setzer_pair_ok(d: int, n: int) -> bool:
    """All five conditions of the criterion for the split m = d * n."""
    m = d * n
    if m in (0, 1) or not is_squarefree(m):
        raise ValueError(f"m = {m} must be squarefree and not 0 or 1")
    return _pair_ok(d, n, factor(d).primes, factor(n).primes)


class _CensusIndex:
    def __init__(self, census: Census):
        self.census = census
        self.primes = {rec.d: factor(rec.d).primes for rec in census.records}
        self.ds = sorted(self.primes)


def admits_gre_q(m: int, census: Census) -> Admission:
    if m in (0, 1) or not is_squarefree(m):
        raise ValueError(f"m = {m} must be squarefree and not 0 or 1")
    fac = factor(m)
    incomplete = census.max_d < abs(m) or census.incomplete
    good = {rec.d for rec in census.records}
    divs = [1]
    for p in fac.primes:
        divs += [q * p for q in divs]
    for a in sorted(divs):
        for d in (a, -a):
            if d not in good:
                continue
            n = m // d
            d_primes = tuple(p for p in fac.primes if d % p == 0)
            n_primes = tuple(p for p in fac.primes if n % p == 0)
            if _pair_ok(d, n, d_primes, n_primes):
                return Admission(True, (d, n), incomplete)
    return Admission(False, None, incomplete)


def _admitted(census: Census, m_lo: int, m_hi: int, only_d: int | None = None) -> set[int]:
    """All admitting squarefree m in [m_lo, m_hi], generated from the census side."""
    out = set()
    ds = [rec.d for rec in census.records] if only_d is None else [only_d]
    for d in ds:
        d_primes = factor(d).primes
        for n in range(math.ceil(m_lo / abs(d)), m_hi // abs(d) + 1):
            if n == 0:
                continue
            nn = n if d > 0 else -n
            m = d * nn
            if m in (0, 1) or math.gcd(d, nn) != 1 or m in out:
                continue
            if not is_squarefree(nn):
                continue
            if _pair_ok(d, nn, d_primes, factor(nn).primes):
                out.add(m)
    return out


def _in_range(m: int, x: float) -> bool:
    return abs(discriminant(m)) <= x


def count_R_I(x: float, census: Census) -> FieldCount:
    bound = int(math.floor(x))
    if bound < 1:
        return FieldCount(x, 0, 0, census.r_max, census.incomplete)
    hits = _admitted(census, -bound, bound)
    R = sum(1 for m in hits if m > 1 and _in_range(m, x))
    I = sum(1 for m in hits if m < 0 and _in_range(m, x))
    return FieldCount(x, R, I, census.r_max, incomplete=census.incomplete or census.max_d < x)


def _count_d(x: float, d: int, positive: bool) -> int:
    bound = int(math.floor(x))
    if bound < 1:
        return 0
    only = Census([], max_d=abs(d), r_max=0)
    lo, hi = (2, bound) if positive else (-bound, -1)
    hits = _admitted(only, lo, hi, only_d=d)
    return sum(1 for m in hits if _in_range(m, x))


def count_R_d(x: float, d: int) -> int:
    """#{n : m = d n > 1 squarefree, Delta(m) <= x, (d, n) passes the criterion}."""
    return _count_d(x, d, True)


def count_I_d(x: float, d: int) -> int:
    return _count_d(x, d, False)
