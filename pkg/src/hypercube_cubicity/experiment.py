"""Scaling experiment: built and minimized seed-set sizes across d."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .analysis import cmo_lower_bound
from .builder import build_representation, minimize_seed_set
from .files import ExperimentRow

# 1.0, 1.5, …, 12.0
EXPERIMENT_GRID = tuple(1.0 + 0.5 * k for k in range(23))
EXPERIMENT_MAX_D = 12


def trial_seed(rng_seed: int, d: int, trial: int) -> int:
    return int(np.random.SeedSequence([rng_seed, d, trial]).generate_state(1)[0])


@dataclass
class ExperimentResult:
    rows: List[ExperimentRow]

    def by_d(self) -> Dict[int, List[ExperimentRow]]:
        out: Dict[int, List[ExperimentRow]] = {}
        for row in self.rows:
            out.setdefault(row.d, []).append(row)
        return out

    def summaries(self) -> List[str]:
        lines = []
        for d, rows in self.by_d().items():
            sizes = [r.minimized_count for r in rows]
            scale = d / math.log2(d)
            lines.append(
                f"d={d} trials={len(rows)} min_minimized={min(sizes)} "
                f"mean_minimized={sum(sizes) / len(sizes):.3f} max_minimized={max(sizes)} "
                f"min_c_used={min(r.c_used for r in rows)} ceil_cmo_floor={math.ceil(cmo_lower_bound(d))} "
                f"ratio_min={min(sizes) / scale:.4f} log_base=2"
            )
        return lines

    def min_ratios(self) -> Dict[int, float]:
        """min minimized_count · log2 d / d, per d."""
        return {
            d: min(r.minimized_count for r in rows) * math.log2(d) / d
            for d, rows in self.by_d().items()
        }


def run_experiment(
    d_min: int,
    d_max: int,
    trials: int,
    rng_seed: int = 0,
    grid: Sequence[float] = EXPERIMENT_GRID,
    max_restarts: int = 20,
) -> ExperimentResult:
    """One row per (d, trial).

    Each trial builds with the smallest grid c that succeeds within
    ``max_restarts`` fresh samples, then minimizes the winning seed set.
    """
    if not 2 <= d_min <= d_max <= EXPERIMENT_MAX_D:
        raise ValueError(f"need 2 <= d_min <= d_max <= {EXPERIMENT_MAX_D}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rows = []
    for d in range(d_min, d_max + 1):
        for trial in range(trials):
            seed = trial_seed(rng_seed, d, trial)
            attempts = 0
            for c in grid:
                result = build_representation(d, c, seed, max_restarts)
                attempts += result.attempts
                if result.success:
                    break
            else:
                raise RuntimeError(f"no grid value of c produced a representation for d={d}")
            minimized = minimize_seed_set(result.seed_set)
            rows.append(
                ExperimentRow(
                    d=d,
                    c_used=c,
                    seed_count=len(result.seed_set),
                    minimized_count=len(minimized),
                    cmo_floor=cmo_lower_bound(d),
                    attempts=attempts,
                    verify_millis=result.report.elapsed_ms,
                )
            )
    return ExperimentResult(rows)


def ratio_spread(ratios: Dict[int, float]) -> Tuple[float, float, float]:
    lo, hi = min(ratios.values()), max(ratios.values())
    return lo, hi, hi / lo
