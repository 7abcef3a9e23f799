"""Random seed sets and exact verification of the separation property.

A seed multiset S works when every non-adjacent pair (u, v) of H_d is
separated by some apex x in S, i.e. |δ(x,u) − δ(x,v)| ≥ 2.  Two verifiers
decide this independently:

* pairwise: distance rows per apex, compared over every vertex pair;
* classwise: one representative per class (D(u,v), canonical pattern),
  using the u-bit count identity |δ(x,u) − δ(x,v)| = |2·n_u(x) − |D||.

Both scan every distance 2..d, not just the short-distance side used in
the probabilistic analysis.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .core import (
    CapacityError,
    canonical_orientation,
    check_dimension,
    check_vertex,
    deposit_bits,
    extract_bits,
)
from .intervals import CubeRepresentation, Ix_adjacent

log = logging.getLogger(__name__)

PAIRWISE_MAX_D = 14
CLASSWISE_MAX_D = 18
TABLE_MAX_D = 14
# elements per numpy block in the verification kernels
_BLOCK = 1 << 20

C_GRID = tuple(1.0 + 0.5 * k for k in range(9))


@dataclass(frozen=True)
class SeedSet:
    d: int
    seeds: Tuple[int, ...]
    rng_seed: int = 0

    def __post_init__(self):
        check_dimension(self.d)
        if not self.seeds:
            raise ValueError("a seed set needs at least one vertex")
        for x in self.seeds:
            check_vertex(x, self.d)

    def __len__(self) -> int:
        return len(self.seeds)

    @property
    def duplicate_count(self) -> int:
        return len(self.seeds) - len(set(self.seeds))


@dataclass(frozen=True)
class NonAdjacencyClass:
    """All pairs with difference set ``positions`` and u-pattern ``pattern``.

    ``pattern`` holds the first vertex's bits on ``positions`` in extract
    order (lowest position in bit 0).  It is canonical when its bit 0 is 0,
    which is the lexicographically smaller of the pattern and its complement.
    """

    positions: int
    pattern: int

    def __post_init__(self):
        if self.positions.bit_count() < 2:
            raise ValueError("a non-adjacent class spans at least two positions")
        if self.pattern >> self.positions.bit_count():
            raise ValueError("pattern wider than its position set")
        if self.pattern & 1:
            raise ValueError("pattern is not in canonical orientation")

    @property
    def distance(self) -> int:
        return self.positions.bit_count()

    def representative(self) -> Tuple[int, int]:
        """The member pair whose bits outside ``positions`` are all 0."""
        u = deposit_bits(self.pattern, self.positions)
        return u, u ^ self.positions

    @classmethod
    def of_pair(cls, u: int, v: int) -> "NonAdjacencyClass":
        m = u ^ v
        pu = extract_bits(u, m)
        return cls(m, pu if not pu & 1 else extract_bits(v, m))

    def separated_by(self, x: int) -> bool:
        rep, _ = self.representative()
        return abs(2 * ((x ^ rep) & self.positions).bit_count() - self.distance) >= 2


@dataclass
class VerificationReport:
    satisfied: bool
    method: str
    checked: int
    elapsed: float
    counterexample: Optional[Tuple[int, int]] = None
    counterexample_class: Optional[NonAdjacencyClass] = None

    @property
    def elapsed_ms(self) -> float:
        return 1000.0 * self.elapsed


def attempt_rng(rng_seed: int, stream: int) -> np.random.Generator:
    """Independent PCG64 stream number ``stream`` under a base seed."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([rng_seed, stream])))


def sample_seed_set(d: int, size: int, rng: np.random.Generator, rng_seed: int = 0) -> SeedSet:
    """Draw ``size`` apexes with independent fair bits; duplicates are kept."""
    check_dimension(d)
    if size < 1:
        raise ValueError("seed set size must be at least 1")
    bits = rng.integers(0, 2, size=(size, d), dtype=np.uint8)
    weights = np.left_shift(np.uint64(1), np.arange(d, dtype=np.uint64))
    seeds = (bits.astype(np.uint64) * weights).sum(axis=1)
    return SeedSet(d, tuple(int(s) for s in seeds), rng_seed)


def separates(x: int, u: int, v: int) -> bool:
    """Whether I_x drops the non-edge (u, v)."""
    if (u ^ v).bit_count() < 2:
        raise ValueError(f"({u}, {v}) is not a non-adjacent pair")
    return not Ix_adjacent(x, u, v)


def _distance_rows(d: int, seeds: Sequence[int]) -> np.ndarray:
    verts = np.arange(1 << d, dtype=np.uint32)
    return np.stack(
        [np.bitwise_count(verts ^ np.uint32(x)).astype(np.int8) for x in seeds]
    )


def check_property_P_pairwise(S: SeedSet) -> VerificationReport:
    """Brute force over all vertex pairs using distances to each apex."""
    d = S.d
    if d > PAIRWISE_MAX_D:
        raise CapacityError(
            f"pairwise check capped at d={PAIRWISE_MAX_D}; use check_property_P_classwise"
        )
    t0 = time.perf_counter()
    n = 1 << d
    verts = np.arange(n, dtype=np.uint32)
    dist = _distance_rows(d, S.seeds)
    rows = max(1, _BLOCK // n)
    checked = 0
    for lo in range(0, n, rows):
        us = verts[lo : lo + rows]
        live = np.bitwise_count(us[:, None] ^ verts[None, :]) >= 2
        live &= verts[None, :] > us[:, None]
        checked += int(live.sum())
        for row in dist:
            live &= np.abs(row[lo : lo + rows, None] - row[None, :]) <= 1
        if live.any():
            i, j = np.argwhere(live)[0]
            u, v = canonical_orientation(int(us[i]), int(verts[j]))
            return VerificationReport(
                False,
                "pairwise",
                checked,
                time.perf_counter() - t0,
                counterexample=(u, v),
                counterexample_class=NonAdjacencyClass.of_pair(u, v),
            )
    return VerificationReport(True, "pairwise", checked, time.perf_counter() - t0)


def _masks_with_popcount(d: int, i: int) -> Iterator[int]:
    """Masks below 2^d with exactly ``i`` bits, ascending (Gosper's hack)."""
    m = (1 << i) - 1
    limit = 1 << d
    while m < limit:
        yield m
        low = m & -m
        ripple = m + low
        m = (((ripple ^ m) >> 2) // low) | ripple


def enumerate_classes(d: int, max_dist: Optional[int] = None) -> Iterator[NonAdjacencyClass]:
    """Every class with 2 ≤ |D| ≤ max_dist, by distance, then mask, then pattern."""
    check_dimension(d)
    max_dist = d if max_dist is None else max_dist
    if not 2 <= max_dist <= d:
        raise ValueError(f"max_dist must lie in [2, {d}]")
    for i in range(2, max_dist + 1):
        for mask in _masks_with_popcount(d, i):
            for pattern in range(0, 1 << i, 2):
                yield NonAdjacencyClass(mask, pattern)


def _class_blocks(d: int, max_dist: int) -> Iterator[Tuple[int, np.ndarray, np.ndarray]]:
    """Vectorized :func:`enumerate_classes`: yields (distance, masks, reps).

    ``masks`` has shape (m, 1) and ``reps`` shape (m, 2^(i-1)); row-major
    order equals the enumeration order.
    """
    shifts = np.arange(d, dtype=np.uint32)
    for i in range(2, max_dist + 1):
        patterns = np.arange(0, 1 << i, 2, dtype=np.uint32)
        pbits = [(patterns >> np.uint32(j)) & np.uint32(1) for j in range(i)]
        all_masks = np.fromiter(_masks_with_popcount(d, i), dtype=np.uint32)
        step = max(1, _BLOCK // len(patterns))
        for lo in range(0, len(all_masks), step):
            masks = all_masks[lo : lo + step]
            bits = (masks[:, None] >> shifts[None, :]) & np.uint32(1)
            # stable sort puts set-bit indices first, ascending
            pos = np.argsort(1 - bits.astype(np.int8), axis=1, kind="stable")[:, :i]
            pos = pos.astype(np.uint32)
            reps = np.zeros((len(masks), len(patterns)), dtype=np.uint32)
            for j in range(i):
                reps |= pbits[j][None, :] << pos[:, j, None]
            yield i, masks[:, None], reps


def _separated(x: int, i: int, masks: np.ndarray, reps: np.ndarray) -> np.ndarray:
    n_u = np.bitwise_count((reps ^ np.uint32(x)) & masks).astype(np.int16)
    return np.abs(2 * n_u - i) >= 2


def check_property_P_classwise(S: SeedSet, max_dist: Optional[int] = None) -> VerificationReport:
    """One representative per class; exact over all distances by default."""
    d = S.d
    if d > CLASSWISE_MAX_D:
        raise CapacityError(f"classwise check capped at d={CLASSWISE_MAX_D}")
    t0 = time.perf_counter()
    if d < 2:
        return VerificationReport(True, "classwise", 0, time.perf_counter() - t0)
    max_dist = d if max_dist is None else max_dist
    seeds = list(dict.fromkeys(S.seeds))
    checked = 0
    for i, masks, reps in _class_blocks(d, max_dist):
        open_ = np.ones(reps.shape, dtype=bool)
        for x in seeds:
            open_ &= ~_separated(x, i, masks, reps)
        checked += reps.size
        if open_.any():
            r, col = np.argwhere(open_)[0]
            mask = int(masks[r, 0])
            cls = NonAdjacencyClass(mask, 2 * int(col))
            return VerificationReport(
                False,
                "classwise",
                checked,
                time.perf_counter() - t0,
                counterexample=cls.representative(),
                counterexample_class=cls,
            )
    return VerificationReport(True, "classwise", checked, time.perf_counter() - t0)


def seed_count(d: int, c: float) -> int:
    """max(1, ceil(c·d / log2 d)), rounded to absorb float noise."""
    if d < 2:
        raise ValueError("the randomized construction needs d >= 2")
    if c <= 0:
        raise ValueError("c must be positive")
    return max(1, math.ceil(round(c * d / math.log2(d), 9)))


@dataclass
class BuildResult:
    success: bool
    d: int
    c: float
    attempts: int
    seed_set: SeedSet
    report: VerificationReport
    representation: Optional[CubeRepresentation] = None

    @property
    def last_counterexample(self) -> Optional[NonAdjacencyClass]:
        return None if self.success else self.report.counterexample_class


def build_representation(d: int, c: float, rng_seed: int = 0, max_restarts: int = 20) -> BuildResult:
    """Resample S independently until it passes the classwise check.

    Attempt ``a`` draws from stream ``a`` of ``rng_seed``, so any attempt
    can be reproduced in isolation.
    """
    check_dimension(d)
    size = seed_count(d, c)
    if max_restarts < 1:
        raise ValueError("max_restarts must be at least 1")
    for attempt in range(1, max_restarts + 1):
        S = sample_seed_set(d, size, attempt_rng(rng_seed, attempt), rng_seed)
        report = check_property_P_classwise(S)
        if report.satisfied:
            if S.duplicate_count:
                log.info("seed set for d=%d carries %d duplicate apexes", d, S.duplicate_count)
            rep = CubeRepresentation(d, S.seeds)
            return BuildResult(True, d, c, attempt, S, report, rep)
    return BuildResult(False, d, c, max_restarts, S, report)


def find_working_c(
    d: int,
    rng_seed: int = 0,
    grid: Sequence[float] = C_GRID,
    max_restarts: int = 20,
) -> Tuple[Optional[float], BuildResult]:
    """Smallest c on ``grid`` for which :func:`build_representation` succeeds."""
    result = None
    for c in grid:
        result = build_representation(d, c, rng_seed, max_restarts)
        if result.success:
            return c, result
    return None, result


def minimize_seed_set(S: SeedSet) -> SeedSet:
    """Drop seeds latest-first while the property still holds.

    The result is inclusion-minimal, so a second pass is a no-op.
    """
    if not check_property_P_classwise(S).satisfied:
        raise ValueError("seed set does not separate every non-adjacent pair")
    kept = list(S.seeds)
    if S.d <= TABLE_MAX_D:
        table = _separation_table(S.d, kept)
        alive = np.ones(len(kept), dtype=bool)
        for idx in reversed(range(len(kept))):
            alive[idx] = False
            if not alive.any() or not table[alive].any(axis=0).all():
                alive[idx] = True
        return SeedSet(S.d, tuple(x for x, a in zip(kept, alive) if a), S.rng_seed)
    for idx in reversed(range(len(kept))):
        trial = kept[:idx] + kept[idx + 1 :]
        if trial and check_property_P_classwise(SeedSet(S.d, tuple(trial))).satisfied:
            kept = trial
    return SeedSet(S.d, tuple(kept), S.rng_seed)


def _class_table(d: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All classes of H_d flattened: (distances, masks, reps)."""
    if d > TABLE_MAX_D:
        raise CapacityError(f"class table capped at d={TABLE_MAX_D}")
    dists, masks, reps = [], [], []
    for i, m, r in _class_blocks(d, d):
        dists.append(np.full(r.size, i, dtype=np.int16))
        masks.append(np.broadcast_to(m, r.shape).ravel())
        reps.append(r.ravel())
    return np.concatenate(dists), np.concatenate(masks), np.concatenate(reps)


def _separation_table(d: int, seeds: Sequence[int]) -> np.ndarray:
    """Boolean (len(seeds), n_classes): which apex separates which class."""
    dists, masks, reps = _class_table(d)
    return np.stack(
        [np.abs(2 * np.bitwise_count((reps ^ np.uint32(x)) & masks).astype(np.int16) - dists) >= 2
         for x in seeds]
    )


@dataclass
class EmpiricalStats:
    d: int
    min: int
    mean: float
    samples: List[int]
    grown: List[int] = field(default_factory=list)


def empirical_min_size(d: int, rng_seed: int = 0, trials: int = 10) -> EmpiricalStats:
    """Grow a random seed list until it works, minimize, repeat ``trials`` times.

    Incremental growth is an extension of the one-shot experiment; trial
    ``k`` uses stream ``k`` of ``rng_seed``.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if d < 2:
        raise ValueError("the randomized construction needs d >= 2")
    dists, masks, reps = _class_table(d)
    samples, grown = [], []
    for trial in range(trials):
        rng = attempt_rng(rng_seed, trial)
        open_ = np.ones(reps.size, dtype=bool)
        seeds: List[int] = []
        while open_.any():
            x = sample_seed_set(d, 1, rng).seeds[0]
            seeds.append(x)
            n_u = np.bitwise_count((reps ^ np.uint32(x)) & masks).astype(np.int16)
            open_ &= np.abs(2 * n_u - dists) <= 1
        grown.append(len(seeds))
        samples.append(len(minimize_seed_set(SeedSet(d, tuple(seeds), rng_seed))))
    return EmpiricalStats(d, min(samples), sum(samples) / len(samples), samples, grown)
