"""Sparse sets with many pairs of small lcm: construction, pair counting, and
exponent fitting."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .arith import is_squarefree

ROW_BLOCK = 256
INT64_SAFE = 3_000_000_000  # elements below this keep a * b inside int64


@dataclass(frozen=True)
class SparseSet:
    elements: tuple[int, ...]
    declared_beta: float | None = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        els = tuple(self.elements)
        if any(b <= a for a, b in zip(els, els[1:])):
            raise ValueError("elements must be strictly increasing")
        if els and els[0] < 1:
            raise ValueError("elements must be positive")
        object.__setattr__(self, "elements", els)

    @classmethod
    def of(cls, values: Iterable[int], **kw) -> "SparseSet":
        return cls(tuple(sorted(set(int(v) for v in values))), **kw)

    def __len__(self) -> int:
        return len(self.elements)

    def counting(self, x: float) -> int:
        """#{n in S : n <= x}."""
        return int(np.searchsorted(np.array(self.elements, dtype=np.float64), x, side="right"))


def _lcm_rows(a: np.ndarray, rows: slice) -> np.ndarray:
    left = a[rows, None]
    return left // np.gcd(left, a[None, :]) * a[None, :]


def count_lcm_pairs_many(S: SparseSet, xs: Sequence[int]) -> list[int]:
    """Ordered pair counts #{(n, n') : lcm(n, n') <= x} for each x, in one pass."""
    xs = [int(x) for x in xs]
    if not S.elements or not xs:
        return [0] * len(xs)
    if S.elements[-1] >= INT64_SAFE:
        els = S.elements
        return [sum(1 for u in els for v in els if u // math.gcd(u, v) * v <= x) for x in xs]
    a = np.array(S.elements, dtype=np.int64)
    order = np.argsort(xs, kind="stable")
    sx = np.array(xs, dtype=np.int64)[order]
    hist = np.zeros(len(xs) + 1, dtype=np.int64)
    for start in range(0, a.size, ROW_BLOCK):
        lcm = _lcm_rows(a, slice(start, start + ROW_BLOCK)).ravel()
        # bucket k holds pairs with sx[k-1] < lcm <= sx[k]
        hist += np.bincount(np.searchsorted(sx, lcm, side="left"), minlength=len(xs) + 1)
    cum = np.cumsum(hist)[: len(xs)]
    out = np.empty(len(xs), dtype=np.int64)
    out[order] = cum
    return out.tolist()


def count_lcm_pairs(S: SparseSet, x: int) -> int:
    """#{(n, n') in S x S : lcm(n, n') <= x}, ordered pairs, diagonal included."""
    return count_lcm_pairs_many(S, [x])[0]


def tight_block(kappa: float, x0: float) -> list[int]:
    """Multiples of ceil(x0^kappa) in [x0^((1+kappa)/2) / 2, x0^((1+kappa)/2))."""
    step = math.ceil(x0**kappa)
    top = x0 ** ((1 + kappa) / 2)
    lo = math.ceil(top / 2 / step)
    hi = math.ceil(top / step)  # exclusive
    return [k * step for k in range(lo, hi) if k * step < top and k * step >= top / 2]


def build_tight_set(kappa: float, x_grid: Sequence[float], squarefree_only: bool = False) -> SparseSet:
    if not 0 < kappa < 1:
        raise ValueError("kappa must lie in (0, 1)")
    grid = list(x_grid)
    for a, b in zip(grid, grid[1:]):
        if b < a * a:
            raise ValueError(f"grid must grow at least quadratically: {b} < {a}^2")
    if any(x <= 1 for x in grid):
        raise ValueError("grid points must exceed 1")
    values: set[int] = set()
    for x0 in grid:
        values.update(tight_block(kappa, x0))
    if squarefree_only:
        values = {v for v in values if is_squarefree(v)}
    beta = 2 * kappa / (1 + kappa)  # kappa = beta / (2 - beta)
    return SparseSet.of(values, declared_beta=beta, meta={"kappa": kappa, "x_grid": grid, "squarefree_only": squarefree_only})


def fit_sparsity_exponent(counts: Sequence[tuple[float, float]]) -> float:
    """Least-squares slope of log(count) against log(x); points with count 0 are dropped."""
    pts = [(x, c) for x, c in counts if c > 0 and x > 0]
    if len(pts) < 2:
        raise ValueError("need at least two points with positive count")
    lx = np.log([p[0] for p in pts])
    lc = np.log([p[1] for p in pts])
    if np.ptp(lx) == 0:
        raise ValueError("x values must not all coincide")
    slope, _ = np.polyfit(lx, lc, 1)
    return float(slope)


def log_spaced(lo: float, hi: float, n: int) -> list[int]:
    """n integer points spread geometrically over [lo, hi], deduplicated."""
    pts = np.unique(np.round(np.geomspace(lo, hi, n)).astype(np.int64))
    return pts.tolist()
