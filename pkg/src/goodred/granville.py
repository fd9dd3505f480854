"""Local factors for the predicted density of squarefree parts of cubic values:
the constant kappa' for good d, and a generic kappa_f."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .arith import factor, kronecker, primes_up_to
from .goodd import CubicPoly
from .interval import Interval

DIRECT_SCAN_LIMIT = 10**6
PAD = 1e-12
PI_BOUND_COEF = 1.3  # pi(x) <= 1.3 x / log x for x >= 17


def _poly_mod_values(f: CubicPoly, xs: np.ndarray, m: int) -> np.ndarray:
    v = np.full(xs.shape, f.f3 % m, dtype=np.int64)
    for c in (f.f2, f.f1, f.f0):
        v = (v * xs + c % m) % m
    return v


def _roots_mod_prime(f: CubicPoly, p: int) -> list[int]:
    out = []
    step = 1 << 20
    for lo in range(0, p, step):
        xs = np.arange(lo, min(p, lo + step), dtype=np.int64)
        if p <= 3_000_000_000:
            out += xs[_poly_mod_values(f, xs, p) == 0].tolist()
        else:
            out += [int(x) for x in xs.tolist() if f(int(x)) % p == 0]
    return out


def roots_mod_prime_power(f: CubicPoly, p: int, e: int) -> list[int]:
    """Roots of f modulo p^e, lifting digit by digit from the roots mod p."""
    roots = _roots_mod_prime(f, p)
    mod = p
    for _ in range(1, e):
        nxt = mod * p
        roots = [x + t * mod for x in roots for t in range(p) if f(x + t * mod) % nxt == 0]
        mod = nxt
    return sorted(roots)


def _omega_prime_power(f: CubicPoly, p: int, e: int) -> int:
    if e == 0:
        return 1
    disc = f.discriminant()
    if disc % p and f.f3 % p:
        # simple roots lift uniquely
        return len(_roots_mod_prime(f, p))
    return len(roots_mod_prime_power(f, p, e))


def omega_f(f: CubicPoly, m: int) -> int:
    """Number of x in [0, m) with f(x) = 0 mod m."""
    if m < 1:
        raise ValueError("m must be positive")
    if m <= DIRECT_SCAN_LIMIT:
        xs = np.arange(m, dtype=np.int64)
        return int(np.count_nonzero(_poly_mod_values(f, xs, m) == 0))
    count = 1
    for p, e in factor(m):
        count *= _omega_prime_power(f, p, e)
        if count == 0:
            return 0
    return count


def prime_tail_factor(P: int) -> float:
    """Majorant for prod_{p >= P} (1 + 3/(p^{4/3} - 1)):
    exp(3 pi(P)/(P-1)^{4/3} + 4 int_P^inf pi(x)/(x-1)^{7/3} dx)."""
    pi_P = len(primes_up_to(P))

    def integrand(u):
        # x = e^u, with pi(x) replaced by 1.3 x / log x
        return PI_BOUND_COEF * math.exp(-u / 3.0) / u * (-math.expm1(-u)) ** (-7.0 / 3.0)

    val, err = integrate.quad(integrand, math.log(P), math.inf, epsabs=0.0, epsrel=1e-10, limit=400)
    return math.exp(3.0 * pi_P / (P - 1.0) ** (4.0 / 3.0) + 4.0 * (val + err))


def local_factor_good(p: int, roots: int) -> float:
    """1 + omega (p^{2/3} - 1) / (p^2 - p^{2/3}) at a prime not dividing the discriminant."""
    t = p ** (2.0 / 3.0)
    return 1.0 + roots * (t - 1.0) / (p * p - t)


@dataclass
class KappaResult:
    interval: Interval
    factor_2: float
    factor_3: float
    prime_product: float
    tail_factor: float
    P: int
    n_primes: int = 0
    extra: dict = field(default_factory=dict)

    def as_json(self) -> dict:
        g = lambda v: float(f"{v:.12g}")  # noqa: E731
        return {
            "kappa": [g(v) for v in self.interval.as_list()],
            "factor_2": g(self.factor_2),
            "factor_3": g(self.factor_3),
            "prime_product": g(self.prime_product),
            "tail_factor": g(self.tail_factor),
            "P": self.P,
            "n_primes": self.n_primes,
        }


FACTOR_2 = 0.75


def factor_3() -> float:
    return 8.0 / 9.0 * (1.0 + (1.0 / 9.0) / (1.0 - 3.0 ** (-2.0 / 3.0)))


def kappa_prime(P: int = 10000) -> KappaResult:
    """kappa' with the product over 5 <= p < P computed exactly (to padding)
    and the primes p >= P bounded by prime_tail_factor."""
    if P < 100:
        raise ValueError("P must be at least 100")
    primes = [p for p in primes_up_to(P - 1) if p >= 5]
    logs = [math.log(local_factor_good(p, 2 + kronecker(-3, p))) for p in primes]
    prod = math.exp(math.fsum(logs))
    f3 = factor_3()
    base = 2.0 * FACTOR_2 * f3 * prod
    tail = prime_tail_factor(P)
    slack = PAD * (len(primes) + 4)
    iv = Interval(base * (1 - slack), base * tail * (1 + slack)).pad(0.0)
    return KappaResult(iv, FACTOR_2, f3, prod, tail, P, n_primes=len(primes))


def stewart_bound(f: CubicPoly, p: int) -> float:
    """Upper bound 3 p^{v_p(disc)/2} on the number of roots of f modulo any power of p."""
    disc = f.discriminant()
    v = 0
    while disc % p == 0:
        disc //= p
        v += 1
    return 3.0 * p ** (v / 2.0)


def _bad_local_factor(f: CubicPoly, p: int, k_max: int) -> tuple[float, float]:
    """Lower and upper value of the local factor at a prime dividing disc * f3."""
    series = 0.0
    roots = _roots_mod_prime(f, p)
    mod = p
    for k in range(1, k_max + 1):
        # lift roots mod p^{2k-1} -> p^{2k}, counting at even exponents
        for _ in range(2 if k > 1 else 1):
            nxt = mod * p
            roots = [x + t * mod for x in roots for t in range(p) if f(x + t * mod) % nxt == 0]
            mod = nxt
        series += len(roots) / p ** (4.0 * k / 3.0)
    q = p ** (-4.0 / 3.0)
    remainder = stewart_bound(f, p) * q ** (k_max + 1) / (1.0 - q)
    w = 1.0 - p ** (-2.0 / 3.0)
    return 1.0 + w * series, 1.0 + w * (series + remainder)


def kappa_f_generic(f: CubicPoly, P: int = 10000, k_max: int = 30) -> Interval:
    """2 |f3|^{-1/3} prod_p (1 + (1 - p^{-2/3}) sum_k omega_f(p^{2k}) / p^{4k/3})."""
    if not f.separable:
        raise ValueError("f must be separable")
    if P < 100:
        raise ValueError("P must be at least 100")
    if math.gcd(math.gcd(f.f3, f.f2), math.gcd(f.f1, f.f0)) != 1:
        raise ValueError("f must be primitive")
    bad = set(factor(f.discriminant() * f.f3).primes)
    lo_logs, hi_logs = [], []
    for p in primes_up_to(P - 1):
        if p in bad:
            lo, hi = _bad_local_factor(f, p, k_max)
        else:
            lo = hi = local_factor_good(p, len(_roots_mod_prime(f, p)))
        lo_logs.append(math.log(lo))
        hi_logs.append(math.log(hi))
    for p in sorted(bad):
        if p >= P:
            lo, hi = _bad_local_factor(f, p, k_max)
            lo_logs.append(math.log(lo))
            hi_logs.append(math.log(hi))
    pref = 2.0 * abs(f.f3) ** (-1.0 / 3.0)
    slack = PAD * (len(lo_logs) + 4)
    lo = pref * math.exp(math.fsum(lo_logs)) * (1 - slack)
    hi = pref * math.exp(math.fsum(hi_logs)) * prime_tail_factor(P) * (1 + slack)
    return Interval(lo, hi).pad(0.0)
