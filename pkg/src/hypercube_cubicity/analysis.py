"""Probabilities and failure bounds behind the randomized upper bound.

Single-apex survival probabilities are exact ``Fraction`` values with
power-of-two denominators.  Bounds at the scale of d (2^(2d) pairs and
the like) are carried as base-2 logarithms.  ``log`` is log2 everywhere.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional

import numpy as np

# Survival probability of a genuine edge of H_d in any I_x.
EDGE_SURVIVAL = Fraction(1)
WORST_CASE = Fraction(3, 4)
# sup over r of edge_prob_exact(r)·sqrt(r), approached along odd r
C1_LIMIT = 2.0 * math.sqrt(2.0 / math.pi)


def edge_prob_exact(r: int) -> Fraction:
    """Pr over a uniform apex x that a pair at distance ``r`` stays adjacent in I_x."""
    if not isinstance(r, int) or r < 2:
        raise ValueError(f"distance must be an integer >= 2, got {r!r}")
    if r % 2 == 0:
        return Fraction(math.comb(r, r // 2), 1 << r)
    return Fraction(math.comb(r, (r + 1) // 2), 1 << (r - 1))


class MonteCarloEstimate(NamedTuple):
    estimate: float
    stderr: float
    samples: int


def edge_prob_monte_carlo(
    r: int,
    d: int,
    samples: int,
    rng: np.random.Generator,
    u: int = 0,
    v: Optional[int] = None,
) -> MonteCarloEstimate:
    """Fraction of uniform apexes x with |n_u(x) − n_v(x)| ≤ 1.

    The pair defaults to (0, 2^r − 1); any pair at distance ``r`` can be passed.
    """
    if not 2 <= r <= d:
        raise ValueError(f"need 2 <= r <= d, got r={r}, d={d}")
    if samples < 1:
        raise ValueError("samples must be positive")
    if d > 62:
        raise ValueError("Monte Carlo sampling supports d <= 62")
    v = (1 << r) - 1 if v is None else v
    if (u ^ v).bit_count() != r:
        raise ValueError("pair is not at distance r")
    bits = rng.integers(0, 2, size=(samples, d), dtype=np.uint8)
    mask = np.array([(u ^ v) >> i & 1 for i in range(d)], dtype=bool)
    ubits = np.array([u >> i & 1 for i in range(d)], dtype=np.uint8)
    n_u = (bits[:, mask] != ubits[mask]).sum(axis=1)
    hits = np.abs(2 * n_u - r) <= 1
    p = float(hits.mean())
    return MonteCarloEstimate(p, math.sqrt(p * (1 - p) / samples), samples)


def worst_case_survival(size: int) -> Fraction:
    """(3/4)^size: a pair surviving every apex of S under the worst-case bound."""
    if size < 1:
        raise ValueError("size must be at least 1")
    return WORST_CASE ** size


@dataclass(frozen=True)
class SqrtBoundConstant:
    c1: float
    argmax: int
    r_max: int
    even_increasing: bool
    odd_increasing: bool
    limit: float = C1_LIMIT

    def __float__(self) -> float:
        return self.c1


def sqrt_bound_constant(r_max: int) -> SqrtBoundConstant:
    """Smallest c1 with edge_prob_exact(r) ≤ c1/√r for 2 ≤ r ≤ r_max.

    Also reports whether p(r)·√r is increasing along each parity over the
    scan; together with the Stirling limit ``C1_LIMIT`` this bounds every r.
    """
    if r_max < 3:
        raise ValueError("r_max must be at least 3")
    # exact recurrences: p(r+2)/p(r) = (r+1)/(r+2) for even r, (r+2)/(r+3) for odd r
    terms = {}
    p_even, p_odd = Fraction(1, 2), Fraction(3, 4)
    for r in range(2, r_max + 1, 2):
        terms[r] = float(p_even) * math.sqrt(r)
        p_even *= Fraction(r + 1, r + 2)
    for r in range(3, r_max + 1, 2):
        terms[r] = float(p_odd) * math.sqrt(r)
        p_odd *= Fraction(r + 2, r + 3)
    evens = [terms[r] for r in range(2, r_max + 1, 2)]
    odds = [terms[r] for r in range(3, r_max + 1, 2)]
    argmax = max(terms, key=terms.__getitem__)
    return SqrtBoundConstant(
        c1=terms[argmax],
        argmax=argmax,
        r_max=r_max,
        even_increasing=all(a < b for a, b in zip(evens, evens[1:])),
        odd_increasing=all(a < b for a, b in zip(odds, odds[1:])),
    )


class ClassCount(NamedTuple):
    exact: int
    middle: int
    crude_bound: int


def class_count(d: int, t: int) -> ClassCount:
    """Classes with 2 ≤ |D| ≤ t, the raw sum Σ C(d,i)2^i, and t(2d)^t."""
    if not 2 <= t <= d:
        raise ValueError(f"need 2 <= t <= d, got t={t}, d={d}")
    exact = sum(math.comb(d, i) << (i - 1) for i in range(2, t + 1))
    middle = sum(math.comb(d, i) << i for i in range(2, t + 1))
    return ClassCount(exact, middle, t * (2 * d) ** t)


def short_side_threshold(d: int) -> int:
    """t = floor(d / log2(d)^2), the cut between the far and near pair groups."""
    return math.floor(d / math.log2(d) ** 2)


@dataclass(frozen=True)
class BoundReport:
    d: int
    c: float
    t: int
    c1: float
    sample_size: float
    log2_bound_A: float
    log2_bound_B: float
    log2_total: float
    b_empty: bool
    success: bool
    log_base: int = 2

    def to_dict(self) -> dict:
        out = asdict(self)
        for key in ("log2_bound_A", "log2_bound_B", "log2_total"):
            if math.isinf(out[key]):
                out[key] = None
        return out

    def csv_row(self) -> List[str]:
        return [str(v) for v in self.to_dict().values()]

    @staticmethod
    def csv_header() -> List[str]:
        return [
            "d", "c", "t", "c1", "sample_size", "log2_bound_A", "log2_bound_B",
            "log2_total", "b_empty", "success", "log_base",
        ]


def failure_bound(d: int, c: float, c1: float = C1_LIMIT) -> BoundReport:
    """Union bounds on the chance that a random S of size c·d/log d fails.

    Far pairs: 2^(2d) · (c1·log d/√d)^(cd/log d).
    Near pairs: t(2d)^t · (3/4)^(cd/log d), empty when t < 2.
    """
    if d < 4:
        raise ValueError("bounds are only evaluated for d >= 4")
    if c <= 0:
        raise ValueError("c must be positive")
    lg = math.log2(d)
    size = c * d / lg
    t = short_side_threshold(d)
    log_a = 2 * d + size * math.log2(c1 * lg / math.sqrt(d))
    b_empty = t < 2
    if b_empty:
        log_b = -math.inf
    else:
        log_b = math.log2(t) + t * math.log2(2 * d) + size * math.log2(0.75)
    total = float(np.logaddexp2(log_a, log_b))
    return BoundReport(d, c, t, c1, size, log_a, log_b, total, b_empty, total < 0)


def required_c(d: int, step: float = 0.1, c_max: float = 1000.0, c1: float = C1_LIMIT) -> Optional[float]:
    """Smallest grid value c = k·step with total failure bound below 1.

    None when no grid value up to ``c_max`` works (small d, where the far
    side bound grows with c).
    """
    k_max = int(round(c_max / step))
    for k in range(1, k_max + 1):
        c = round(k * step, 10)
        if failure_bound(d, c, c1).success:
            return c
    return None


def cmo_lower_bound(d: int) -> float:
    """(d − 1)/log2 d, the known lower bound on cub(H_d)."""
    if d < 2:
        raise ValueError("the lower bound formula needs d >= 2")
    return (d - 1) / math.log2(d)
