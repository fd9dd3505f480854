"""Good d: squarefree parts of r^3 - 1728 over the admissible residue classes,
and squarefree parts of general cubic values."""

from __future__ import annotations

import csv
import io
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Optional

import numpy as np

from .arith import is_squarefree, primes_array, squarefree_part

log = logging.getLogger(__name__)

DEFAULT_MIN_R_MAX = 10**6
MAX_FAST_R = 10**8
CHUNK = 1 << 18
CSV_HEADER = ("d", "r", "t", "scan_r_max")


@dataclass(frozen=True)
class CubicPoly:
    f3: int
    f2: int
    f1: int
    f0: int

    def __post_init__(self):
        if self.f3 == 0:
            raise ValueError("leading coefficient must be nonzero")

    def __call__(self, x: int) -> int:
        return ((self.f3 * x + self.f2) * x + self.f1) * x + self.f0

    @property
    def coefficients(self) -> tuple[int, int, int, int]:
        return (self.f3, self.f2, self.f1, self.f0)

    def discriminant(self) -> int:
        a, b, c, d = self.coefficients
        return b * b * c * c - 4 * a * c**3 - 4 * b**3 * d - 27 * a * a * d * d + 18 * a * b * c * d

    @property
    def separable(self) -> bool:
        return self.discriminant() != 0


X3_MINUS_1728 = CubicPoly(1, 0, 0, -1728)


@dataclass(frozen=True)
class GoodDRecord:
    d: int
    r: int
    t: int

    @property
    def degenerate(self) -> bool:
        """d = +-1 gives no quadratic twist field; kept but flagged."""
        return abs(self.d) == 1

    def verify(self) -> bool:
        return (
            self.t >= 1
            and self.d * self.t * self.t == self.r**3 - 1728
            and is_squarefree(self.d)
            and admissible_r(self.r)
        )


@dataclass
class Census:
    """Good d with |d| <= max_d found by scanning |r| <= r_max."""

    records: list[GoodDRecord]
    max_d: int
    r_max: int
    meta: dict = field(default_factory=dict)

    @property
    def incomplete(self) -> bool:
        return self.r_max < max(DEFAULT_MIN_R_MAX, self.max_d)

    def ds(self) -> list[int]:
        return [rec.d for rec in self.records]

    def covers(self, bound: int) -> bool:
        """True if the scan targeted every |d| <= bound."""
        return self.max_d >= bound

    def restrict(self, lo: int, hi: int) -> list[GoodDRecord]:
        return [rec for rec in self.records if lo <= rec.d <= hi]


def admissible_r(r: int) -> bool:
    """Membership in the admissible set: even r must be 0 or 4 mod 16, and
    multiples of 3 must be 12 mod 27."""
    if r % 2 == 0 and r % 16 not in (0, 4):
        return False
    if r % 3 == 0 and r % 27 != 12:
        return False
    return True


def admissible_mask(r: np.ndarray) -> np.ndarray:
    r16, r27 = r % 16, r % 27
    even_ok = (r % 2 == 1) | (r16 == 0) | (r16 == 4)
    three_ok = (r % 3 != 0) | (r27 == 12)
    return even_ok & three_ok


# ---------------------------------------------------------------------------
# sieve engine for f(r) = (r - 12)(r^2 + 12 r + 144)
#
# For p >= 5 the two factors are coprime at p, so p^2 | f(r) iff p^2 divides
# one of them. Square factors of r - 12 need p <= sqrt(r_max + 12); those of
# the quadratic need p = 1 mod 3 and p <= sqrt(max quadratic value). Primes 2
# and 3 are stripped by repeated division and only their parity is kept.


def _lift_roots(p: int, roots: list[int], max_modulus: int) -> list[tuple[int, int, int]]:
    """Hensel-lift simple roots of x^2 + 12x + 144 mod p to every p^(2k) <= max_modulus."""
    out = []
    for x in roots:
        inv = pow((2 * x + 12) % p, -1, p)
        mod, j = p, 1
        while True:
            mod *= p
            j += 1
            x = (x - (x * x + 12 * x + 144) * inv) % mod
            if mod > max_modulus:
                break
            if j % 2 == 0:
                out.append((mod, p * p, x))
    return out


@lru_cache(maxsize=4)
def _sieve_tables(r_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Rows (modulus, divisor, residue, which) for the square-stripping sieve."""
    rows: list[tuple[int, int, int, int]] = []
    max_lin = r_max + 12
    for p in primes_array(math.isqrt(max_lin)).tolist():
        if p < 5:
            continue
        pk = p * p
        while pk <= max_lin:
            rows.append((pk, p * p, 12 % pk, 0))
            pk *= p * p
    max_quad = r_max * r_max + 12 * r_max + 144
    for p in primes_array(math.isqrt(max_quad)).tolist():
        if p < 5 or p % 3 != 1:
            continue
        a = 2
        while (w := pow(a, (p - 1) // 3, p)) == 1:
            a += 1
        # roots of x^2 + 12x + 144 are 12w and 12w^2, w a primitive cube root of 1
        for mod, div, res in _lift_roots(p, [12 * w % p, 12 * w * w % p], max_quad):
            rows.append((mod, div, res, 1))
    arr = np.array(rows, dtype=np.int64).reshape(-1, 4)
    return arr[:, 0].copy(), arr[:, 1].copy(), np.stack([arr[:, 2], arr[:, 3]], axis=1)


def _strip(arr: np.ndarray, p: int) -> np.ndarray:
    """Divide out all factors p in place; return parity of the exponent."""
    parity = np.zeros(arr.shape, dtype=np.int8)
    while True:
        m = arr % p == 0
        if not m.any():
            return parity
        arr[m] //= p
        parity[m] ^= 1


def _scan_chunk(args) -> tuple[np.ndarray, np.ndarray]:
    lo, hi, max_d, r_max = args
    mods, divs, resw = _sieve_tables(r_max)
    r = np.arange(lo, hi + 1, dtype=np.int64)
    n = r.size
    valid = r != 12
    lin = np.abs(r - 12)
    lin[~valid] = 1
    quad = r * r + 12 * r + 144
    odd2 = _strip(lin, 2) ^ _strip(quad, 2)
    odd3 = _strip(lin, 3) ^ _strip(quad, 3)
    starts = (resw[:, 0] - lo) % mods
    small = mods <= n
    for i in np.flatnonzero(small).tolist():
        target = lin if resw[i, 1] == 0 else quad
        target[starts[i] :: mods[i]] //= divs[i]
    big = (~small) & (starts < n)
    for which, target in ((0, lin), (1, quad)):
        sel = big & (resw[:, 1] == which)
        np.floor_divide.at(target, starts[sel], divs[sel])
    keep = valid & (lin <= max_d) & (quad <= max_d)
    idx = np.flatnonzero(keep)
    d = lin[idx] * quad[idx] * np.where(odd2[idx] == 1, 2, 1) * np.where(odd3[idx] == 1, 3, 1)
    d *= np.sign(r[idx] - 12)
    ok = np.abs(d) <= max_d
    return r[idx][ok], d[ok]


def _chunks(r_max: int, size: int = CHUNK) -> list[tuple[int, int]]:
    out = []
    lo = -r_max
    while lo <= r_max:
        hi = min(lo + size - 1, r_max)
        out.append((lo, hi))
        lo = hi + 1
    return out


def scan_x3_minus_1728(
    max_d: int, r_max: int, threads: Optional[int] = None, chunk: int = CHUNK
) -> tuple[np.ndarray, np.ndarray]:
    """All (r, sqf(r^3 - 1728)) with |r| <= r_max, r != 12 and |sqf| <= max_d."""
    if r_max > MAX_FAST_R:
        raise ValueError(f"r_max above {MAX_FAST_R} is not supported")
    if max_d < 1:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    jobs = [(lo, hi, max_d, r_max) for lo, hi in _chunks(r_max, chunk)]
    workers = threads if threads is not None else (os.cpu_count() or 1)
    _sieve_tables(r_max)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_chunk, jobs))
    else:
        parts = []
        for k, job in enumerate(jobs):
            parts.append(_scan_chunk(job))
            log.debug("chunk %d/%d done", k + 1, len(jobs))
    rs = np.concatenate([p[0] for p in parts]) if parts else np.zeros(0, dtype=np.int64)
    ds = np.concatenate([p[1] for p in parts]) if parts else np.zeros(0, dtype=np.int64)
    return rs, ds


def _witness_key(r: int) -> tuple[int, int]:
    return (abs(r), 0 if r > 0 else 1)


def _generic_hits(f: CubicPoly, max_d: int, r_max: int):
    for r in range(-r_max, r_max + 1):
        v = f(r)
        if v == 0:
            continue
        d = squarefree_part(v)
        if abs(d) <= max_d:
            yield r, d


def _hits(f: CubicPoly, max_d: int, r_max: int, threads: Optional[int]):
    if f == X3_MINUS_1728:
        rs, ds = scan_x3_minus_1728(max_d, r_max, threads)
        return zip(rs.tolist(), ds.tolist())
    return _generic_hits(f, max_d, r_max)


def twist_sqf_scan(
    f: CubicPoly,
    D: int,
    r_max: int,
    congruence_filter: Optional[Callable[[int], bool]] = None,
    threads: Optional[int] = None,
) -> set[int]:
    """Squarefree parts of f(r) with |d| <= D over |r| <= r_max (lower
    approximation to the twists with an integral point)."""
    if not f.separable:
        raise ValueError("f must be separable")
    return {d for r, d in _hits(f, D, r_max, threads) if congruence_filter is None or congruence_filter(r)}


def enumerate_good_d(D: int, r_max: Optional[int] = None, threads: Optional[int] = None) -> Census:
    """Good d with |d| <= D, one record per d with the smallest admissible witness."""
    if r_max is None:
        r_max = max(DEFAULT_MIN_R_MAX, D)
    best: dict[int, int] = {}
    for r, d in _hits(X3_MINUS_1728, D, r_max, threads):
        if not admissible_r(r):
            continue
        if d not in best or _witness_key(r) < _witness_key(best[d]):
            best[d] = r
    records = []
    for d in sorted(best):
        r = best[d]
        t = math.isqrt((r**3 - 1728) // d)
        records.append(GoodDRecord(d, r, t))
    census = Census(records, max_d=D, r_max=r_max)
    if census.incomplete:
        log.warning("r_max=%d is below max(1e6, D=%d); census may be incomplete", r_max, D)
    return census


def good_count_curve(records: Iterable[GoodDRecord], D_grid: Iterable[int]) -> list[tuple[int, int]]:
    """G(D) = #{good d : |d| <= D} at each grid point."""
    absd = np.sort(np.array([abs(rec.d) for rec in records], dtype=np.int64))
    return [(int(D), int(np.searchsorted(absd, D, side="right"))) for D in D_grid]


def assumption_bound(D: float) -> float:
    """The hypothesised majorant 5 D^0.35 for G(D)."""
    return 5.0 * D**0.35


def assumption_violations(records: Iterable[GoodDRecord], upto: Optional[int] = None) -> list[tuple[int, int]]:
    """Points (D, G(D)) with G(D) > 5 D^0.35 and D <= upto.

    G only jumps at the values |d|, and the bound increases in between, so
    checking at those values covers every D.
    """
    absd = sorted(abs(rec.d) for rec in records)
    out = []
    for i, a in enumerate(absd):
        if upto is not None and a > upto:
            break
        last = i + 1 == len(absd) or absd[i + 1] != a
        if last and i + 1 > assumption_bound(a):
            out.append((a, i + 1))
    return out


# ---------------------------------------------------------------------------
# persistence


def write_census_csv(census: Census, path_or_buf, header: Optional[dict] = None) -> None:
    own = isinstance(path_or_buf, (str, os.PathLike))
    fh = open(path_or_buf, "w", newline="") if own else path_or_buf
    try:
        meta = {"max_d": census.max_d, "r_max": census.r_max, **(header or {})}
        fh.write("# " + " ".join(f"{k}={v}" for k, v in meta.items()) + "\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for rec in census.records:
            w.writerow((rec.d, rec.r, rec.t, census.r_max))
    finally:
        if own:
            fh.close()


def read_census_csv(path_or_buf) -> Census:
    own = isinstance(path_or_buf, (str, os.PathLike))
    fh = open(path_or_buf, newline="") if own else path_or_buf
    try:
        text = fh.read()
    finally:
        if own:
            fh.close()
    meta: dict = {}
    body = []
    for line in text.splitlines():
        if line.startswith("#"):
            for tok in line[1:].split():
                k, _, v = tok.partition("=")
                meta[k] = v
        elif line.strip():
            body.append(line)
    reader = csv.DictReader(io.StringIO("\n".join(body)))
    if tuple(reader.fieldnames or ()) != CSV_HEADER:
        raise ValueError(f"census header must be {','.join(CSV_HEADER)}")
    records = []
    scan = set()
    for row in reader:
        records.append(GoodDRecord(int(row["d"]), int(row["r"]), int(row["t"])))
        scan.add(int(row["scan_r_max"]))
    if len(scan) > 1:
        raise ValueError("mixed scan_r_max values in census")
    r_max = int(meta.get("r_max", scan.pop() if scan else 0))
    max_d = int(meta["max_d"]) if "max_d" in meta else max((abs(rec.d) for rec in records), default=0)
    extra = {k: v for k, v in meta.items() if k not in ("max_d", "r_max")}
    return Census(sorted(records, key=lambda rec: rec.d), max_d=max_d, r_max=r_max, meta=extra)
