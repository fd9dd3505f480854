"""Exact integer arithmetic: factoring, squarefree parts, radicals, symbols, sieves."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

MAX_FACTOR_BITS = 127
TRIAL_LIMIT = 10_000

# First 13 primes: strong-pseudoprime test is deterministic below 3.317e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_EXTRA_BASES = (43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


@dataclass(frozen=True)
class Factorization:
    """Signed prime-power decomposition ``sign * prod(p**e)``."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        n = self.sign
        for p, e in self.factors:
            n *= p**e
        return n

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)


def primes_up_to(n: int) -> list[int]:
    """All primes <= n, by a sieve of Eratosthenes."""
    return primes_array(n).tolist()


def primes_array(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, math.isqrt(n) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    return np.flatnonzero(sieve).astype(np.int64)


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    return tuple(primes_up_to(TRIAL_LIMIT))


def is_probable_prime(n: int) -> bool:
    """Strong-pseudoprime test; deterministic for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES if n < _MR_DETERMINISTIC_BOUND else _MR_BASES + _MR_EXTRA_BASES
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int, rng: random.Random) -> int:
    """Return a nontrivial factor of the odd composite n (Pollard rho, Brent cycles)."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * (x - y) % n  # sign is irrelevant to the gcd
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int], rng: random.Random) -> None:
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        g = _brent(m, rng)
        stack += [g, m // g]


def factor(n: int) -> Factorization:
    """Factor a nonzero integer with |n| < 2**127."""
    if n == 0:
        raise ValueError("cannot factor 0")
    if abs(n) >> MAX_FACTOR_BITS:
        raise ValueError(f"|n| must be below 2**{MAX_FACTOR_BITS}")
    sign = -1 if n < 0 else 1
    m = abs(n)
    found: dict[int, int] = {}
    for p in _small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    if m > 1:
        # fixed seed keeps the output and its timing reproducible
        _split(m, found, random.Random(m))
    return Factorization(sign, tuple(sorted(found.items())))


def squarefree_part(n: int) -> int:
    """Signed squarefree d with n / d a perfect square."""
    fac = factor(n)
    d = fac.sign
    for p, e in fac:
        if e & 1:
            d *= p
    return d


def radical(n: int) -> int:
    return math.prod(factor(n).primes)


def omega(n: int) -> int:
    """Number of distinct prime factors of |n|."""
    return len(factor(n).factors)


def count_divisors(n: int) -> int:
    if n <= 0:
        raise ValueError("count_divisors expects a positive integer")
    return math.prod(e + 1 for _, e in factor(n))


def divisors(n: int) -> list[int]:
    """Positive divisors of |n|, ascending."""
    divs = [1]
    for p, e in factor(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for _, e in factor(n))


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers a, n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v & 1 and a % 8 in (3, 5):
            result = -result
    # n is now odd and positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre_euler(a: int, p: int) -> int:
    """Legendre symbol via Euler's criterion; p an odd prime."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def squarefree_mask(n: int) -> np.ndarray:
    """Boolean array s with s[k] true iff k is squarefree, for 0 <= k <= n."""
    mask = np.ones(n + 1, dtype=bool)
    mask[0] = False
    for p in primes_array(math.isqrt(n)):
        mask[p * p :: p * p] = False
    return mask
