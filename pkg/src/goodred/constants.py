"""Constants c_d, c'_{d,R}, c'_{d,I}, the partial sums for c_R and c_I, the
tail bound beyond the census, and the explicit-abc epsilon."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from scipy import integrate

from .arith import omega, primes_up_to
from .goodd import Census, assumption_bound
from .interval import ZERO, Interval, interval_sum
from .literals import SQRT_PI, SQRT_ZETA2
from .quadchar import TwistCharacter, chi_prime, l1_chi_d, pv_upper_bound_l1, twist_character

DEFAULT_Q = 1000
D_MIN, D_MAX = -10000, 50000
TAIL_FROM = 50000
QUAD_TOP = 1e30
ASSUMPTION_EXP = 0.35
C1 = 1 + math.log(3) - 13 / 6 * math.log(2)

PREFACTOR = 1.0 / (SQRT_PI * SQRT_ZETA2)


def c_d(ch: TwistCharacter, Q: int = DEFAULT_Q) -> Interval:
    """Enclosure of c_d, with the infinite Euler product over chi_d(q) = 1
    bracketed by its truncation at Q."""
    if abs(ch.d) < 2:
        raise ValueError("c_d needs |d| >= 2")
    if Q < 11:
        raise ValueError("Q must be at least 11")
    split_hi = []  # log(1 - q^-2) over chi(q) = 1, q <= Q
    split_lo = []  # over chi(q) != 1
    for q in primes_up_to(Q):
        t = math.log1p(-1.0 / (q * q))
        (split_hi if chi_prime(ch, q) == 1 else split_lo).append(t)
    upper = math.exp(0.5 * math.fsum(split_hi))
    lower = math.exp(-0.5 * math.fsum(split_lo)) / SQRT_ZETA2
    euler = Interval(min(lower, upper), upper).pad()
    local = math.exp(-0.5 * math.fsum(math.log1p(1.0 / q) for q in ch.d_factorization.primes))
    return (l1_chi_d(ch).sqrt() * euler * (PREFACTOR * local)).pad()


def c_prime_R(d: int) -> Fraction:
    r = d % 8
    if r in (1, 7):
        return Fraction(1)
    if r in (3, 5):
        return Fraction(2, 3)
    if (r == 2 and d > 0) or r == 6:
        return Fraction(1, 4)
    return Fraction(0)


def c_prime_I(d: int) -> Fraction:
    r = d % 8
    if (r == 1 and d > 0) or (r == 7 and d < 0):
        return Fraction(1)
    if (r == 3 and d < 0) or (r == 5 and d > 0):
        return Fraction(2, 3)
    if r in (2, 6) and d < 0:
        return Fraction(1, 4)
    return Fraction(0)


_C_PRIME = {"R": c_prime_R, "I": c_prime_I}


def term(d: int, which: str, Q: int = DEFAULT_Q) -> Interval:
    """c_d c'_d / (|d| 2^omega(d)) as an interval."""
    cp = _C_PRIME[which](d)
    if cp == 0:
        return ZERO
    scale = float(cp) / (abs(d) * 2 ** omega(d))
    return c_d(twist_character(d), Q) * scale


def partial_c_sum(census: Census, which: str, Q: int = DEFAULT_Q, d_min: int = D_MIN, d_max: int = D_MAX) -> Interval:
    if which not in _C_PRIME:
        raise ValueError("which must be 'R' or 'I'")
    terms = [term(rec.d, which, Q) for rec in census.restrict(d_min, d_max) if not rec.degenerate]
    return interval_sum(terms)


def census_covers(census: Census, d_min: int = D_MIN, d_max: int = D_MAX) -> bool:
    return census.max_d >= max(-d_min, d_max) and not census.incomplete


# ---------------------------------------------------------------------------
# tail


def tail_density(x: float) -> float:
    """f(x) = sqrt(PV bound at x) / (2 sqrt(pi) sqrt(zeta 2) x): majorant of a single term."""
    return math.sqrt(pv_upper_bound_l1(x)) * PREFACTOR / (2.0 * x)


def _remainder(top: float = QUAD_TOP) -> float:
    """Integral over x > top of f(x) * 1.75 x^-0.65, using PV(x) <= log x there
    and the tangent-line bound for sqrt(log x)."""
    u0 = math.log(top)
    a, b = math.sqrt(u0), 0.5 / math.sqrt(u0)
    k = 1.0 - ASSUMPTION_EXP
    return 5 * ASSUMPTION_EXP * PREFACTOR / 2.0 * math.exp(-k * u0) * (a / k + b / (k * k))


def tail_integral(D: float, pieces: int = 16, top: float = QUAD_TOP) -> float:
    """Upper estimate of the integral of f(x) * d(5 x^0.35) over [D, infinity)."""
    k = 1.0 - ASSUMPTION_EXP

    def integrand(u):
        # x = e^u, dx = x du
        return math.sqrt(pv_upper_bound_l1(math.exp(u))) * math.exp(-k * u)

    u_lo, u_hi = math.log(D), math.log(top)
    edges = [u_lo + (u_hi - u_lo) * i / pieces for i in range(pieces + 1)]
    vals, errs = [], []
    for a, b in zip(edges, edges[1:]):
        v, e = integrate.quad(integrand, a, b, epsabs=0.0, epsrel=1e-12, limit=200)
        vals.append(v)
        errs.append(e)
    body = 5 * ASSUMPTION_EXP * PREFACTOR / 2.0 * (math.fsum(vals) + math.fsum(errs))
    return body + _remainder(top)


def tail_bound(D: int, count_at_D: Optional[int] = None, pieces: int = 16) -> float:
    """Upper bound for the sum of terms over good d with |d| > D, assuming
    G(x) <= 5 x^0.35 for x >= D. count_at_D is G(D) if known; omitted means 0."""
    if D < 100:
        raise ValueError("tail_bound needs D >= 100")
    g = 0 if count_at_D is None else count_at_D
    boundary = tail_density(D) * max(0.0, assumption_bound(D) - g)
    return boundary + tail_integral(D, pieces)


# ---------------------------------------------------------------------------
# report


@dataclass
class ConstantReport:
    which: str
    partial_sum: Interval
    tail: float
    total_upper: float
    D_range: tuple[int, int] = (D_MIN, D_MAX)
    Q: int = DEFAULT_Q
    tail_from: int = TAIL_FROM
    gap_sum: Interval = ZERO
    census: dict = field(default_factory=dict)
    incomplete: bool = False

    def as_json(self) -> dict:
        return {
            "which": self.which,
            "partial_sum": [float(f"{v:.12g}") for v in self.partial_sum.as_list()],
            "lower": float(f"{self.partial_sum.lo:.12g}"),
            "tail": float(f"{self.tail:.12g}"),
            "gap_sum_upper": float(f"{self.gap_sum.hi:.12g}"),
            "total_upper": float(f"{self.total_upper:.12g}"),
            "D_range": list(self.D_range),
            "Q": self.Q,
            "tail_from": self.tail_from,
            "census": self.census,
            "incomplete": self.incomplete,
        }


def constant_report(
    census: Census,
    which: str,
    Q: int = DEFAULT_Q,
    d_min: int = D_MIN,
    d_max: int = D_MAX,
    tail_from: int = TAIL_FROM,
) -> ConstantReport:
    """Partial sum over [d_min, d_max] plus everything with |d| > tail_from.

    Good d with |d| <= tail_from that fall outside [d_min, d_max] are added
    exactly from the census, so the upper bound covers every good d.
    """
    part = partial_c_sum(census, which, Q, d_min, d_max)
    gap = [
        term(rec.d, which, Q)
        for rec in census.records
        if abs(rec.d) <= tail_from and not (d_min <= rec.d <= d_max) and not rec.degenerate
    ]
    gap_sum = interval_sum(gap)
    g = sum(1 for rec in census.records if abs(rec.d) <= tail_from)
    tail = gap_sum.hi + tail_bound(tail_from, g)
    meta = {"max_d": census.max_d, "r_max": census.r_max, "n_good": len(census.records)}
    incomplete = not census_covers(census, min(d_min, -tail_from), max(d_max, tail_from))
    return ConstantReport(
        which=which,
        partial_sum=part,
        tail=tail,
        total_upper=part.hi + tail,
        D_range=(d_min, d_max),
        Q=Q,
        tail_from=tail_from,
        gap_sum=gap_sum,
        census=meta,
        incomplete=incomplete,
    )


def explicit_abc_epsilon(k: float) -> float:
    """epsilon(k) from the explicit abc remark, with its slack set to 0."""
    if not k >= 100:
        raise ValueError("k must be at least 100")
    L = math.log(k)
    LL = math.log(L)
    LLL = math.log(LL)
    return math.sqrt(48.0 / (L * LL)) * (1 + (3 * LLL + 2 * C1) / (2 * LL))
