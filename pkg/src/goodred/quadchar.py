"""The twist character chi_d, L(1, chi_d) via Landau's finite sums, and a
Polya-Vinogradov style upper bound for L(1, chi_d)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import Factorization, factor, is_squarefree, kronecker
from .interval import Interval
from .literals import EULER_GAMMA, PI

TERM_PAD = 1e-12


@dataclass(frozen=True)
class TwistCharacter:
    d: int
    eps_d: int
    m_d: int
    d_mod_8: int
    d_factorization: Factorization

    @property
    def twist(self) -> int:
        """eps_d * d, the top entry of the underlying Kronecker symbol."""
        return self.eps_d * self.d

    @property
    def degenerate(self) -> bool:
        return abs(self.d) == 1

    @property
    def odd_primes(self) -> tuple[int, ...]:
        return tuple(p for p in self.d_factorization.primes if p != 2)

    def fundamental_discriminant(self) -> int:
        t = self.twist
        return t if t % 4 == 1 else 4 * t


def twist_character(d: int) -> TwistCharacter:
    if not is_squarefree(d):
        raise ValueError(f"d={d} is not squarefree")
    eps = 1 if d % 4 == 1 else -1
    m_d = abs(d) if d % 2 else 4 * abs(d)
    return TwistCharacter(d=d, eps_d=eps, m_d=m_d, d_mod_8=d % 8, d_factorization=factor(d))


def chi_prime(ch: TwistCharacter, q: int) -> int:
    """chi_d at a prime q."""
    if q == 2:
        return 1 if ch.d % 2 else 0
    return kronecker(ch.twist, q)


def chi_d(ch: TwistCharacter, n: int) -> int:
    """Totally multiplicative extension of chi_prime to positive n."""
    if n < 1:
        raise ValueError("chi_d is defined on positive integers")
    value = 1
    for q, e in factor(n):
        c = chi_prime(ch, q)
        if c == 0:
            return 0
        if c == -1 and e & 1:
            value = -value
    return value


# Kronecker symbols of the even prime discriminants, indexed by j mod 8.
_EVEN_PRIME_DISC = {
    -4: np.array([0, 1, 0, -1, 0, 1, 0, -1], dtype=np.int64),
    8: np.array([0, 1, 0, -1, 0, -1, 0, 1], dtype=np.int64),
    -8: np.array([0, 1, 0, 1, 0, -1, 0, -1], dtype=np.int64),
}


@lru_cache(maxsize=512)
def _legendre_table(p: int) -> np.ndarray:
    table = -np.ones(p, dtype=np.int64)
    k = np.arange(1, p, dtype=np.int64)
    table[(k * k) % p] = 1
    table[0] = 0
    return table


def kronecker_table(delta: int) -> np.ndarray:
    """Values (delta/j) for j = 0 .. |delta|-1, delta a fundamental discriminant.

    Built from the prime-discriminant decomposition of delta; (p*/j) = (j/p)
    for every positive j and odd prime p.
    """
    n = abs(delta)
    j = np.arange(n, dtype=np.int64)
    values = np.ones(n, dtype=np.int64)
    rest = delta
    for p in factor(delta).primes:
        if p == 2:
            continue
        values *= _legendre_table(p)[j % p]
        rest //= p if p % 4 == 1 else -p
    if rest != 1:
        if rest not in _EVEN_PRIME_DISC:
            raise ValueError(f"{delta} is not a fundamental discriminant")
        values *= _EVEN_PRIME_DISC[rest][j % 8]
    return values


def chi_d_table(ch: TwistCharacter, N: int) -> np.ndarray:
    """chi_d(n) for n = 0 .. N (entry 0 is 0), vectorized.

    On odd n, chi_d(n) = (Delta/n) with Delta the fundamental discriminant of
    eps_d * d; powers of 2 contribute chi_d(2) each.
    """
    n = np.arange(N + 1, dtype=np.int64)
    odd = n.copy()
    v2 = np.zeros(N + 1, dtype=np.int64)
    odd[0] = 1
    while True:
        m = odd % 2 == 0
        if not m.any():
            break
        odd[m] //= 2
        v2[m] += 1
    delta = ch.fundamental_discriminant()
    base = kronecker_table(delta)[odd % abs(delta)] if abs(delta) > 1 else np.ones(N + 1, dtype=np.int64)
    two = chi_prime(ch, 2)
    out = np.where(v2 == 0, base, base * two)
    out[0] = 0
    return out


def landau_l1(delta: int) -> Interval:
    """L(1, (delta/.)) for a fundamental discriminant delta != 1, by Landau's sums."""
    if delta == 1:
        raise ValueError("delta = 1 is the trivial character")
    chi = kronecker_table(delta)
    n = abs(delta)
    if delta < 0:
        # the weighted sum is an exact integer; only the final scaling rounds
        s = int(np.dot(np.arange(n, dtype=np.int64), chi))
        return Interval.point(-PI * s / n**1.5, 1e-15)
    # even character: fold j and n - j, keep sin arguments in (0, pi/2]
    half = np.arange(1, (n + 1) // 2, dtype=np.int64)
    terms = chi[half] * np.log(np.sin(PI * half / n))
    total = 2.0 * math.fsum(terms)  # j = n/2 has chi = 0 when n is even
    pad = TERM_PAD * 2.0 * float(np.abs(terms).sum())
    value = -total / math.sqrt(n)
    return Interval.around(value, pad / math.sqrt(n)).pad(1e-15)


def l1_chi_d(ch: TwistCharacter) -> Interval:
    """Enclosure of L(1, chi_d).

    Degenerate d = +-1 (no quadratic field) returns [1, 1] by convention.
    """
    if ch.degenerate:
        return Interval(1.0, 1.0)
    value = landau_l1(ch.fundamental_discriminant())
    if ch.d_mod_8 in (3, 5):
        # Euler factor at 2 flips from (1 + 1/2)^-1 to (1 - 1/2)^-1
        value = value * 3.0
    return value


def pv_upper_bound_l1(d: int) -> float:
    """Upper bound for L(1, chi_d) from the Polya-Vinogradov inequality, in |d|."""
    x = abs(d)
    if x < 2:
        raise ValueError("|d| must be at least 2")
    return 0.5 * math.log(4 * x) + math.log(math.log(4 * x)) + 1.0 / (2 * math.sqrt(x) * math.log(x)) + 2 + EULER_GAMMA
