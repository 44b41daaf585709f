"""Random (k+1)-dimensional orders from i.i.d. uniform points.

Sorting ``n`` uniform points of ``[0, 1)^(k+1)`` by their first coordinate
and reading off the relative order of each remaining coordinate gives ``k``
independent uniform permutations.  The points form an antichain under
coordinate-wise dominance exactly when that tuple avoids ``(12, ..., 12)``.

Every cloud is drawn from its own Philox stream keyed by ``(seed, trial)``,
so any trial can be regenerated alone and trial order never matters.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .correspond import PermTuple, parallel_contains
from .matrix import build_perm_matrix, grid_matrix, matrix_contains

__all__ = [
    "PointCloud",
    "Estimate",
    "Verdict",
    "rng_for",
    "sample_points",
    "tuple_from_points",
    "antichain_check",
    "increasing_pattern",
    "estimate_qk",
    "lemma_check",
    "lemma_harness",
    "mc_report",
]

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True, eq=False)
class PointCloud:
    """``n`` points in ``[0, 1)^(k+1)``, one per row, with RNG provenance."""

    points: np.ndarray
    seed: int
    trial: int = 0

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def k(self) -> int:
        return self.points.shape[1] - 1


@dataclass(frozen=True)
class Estimate:
    trials: int
    successes: int

    @property
    def estimate(self) -> float:
        return self.successes / self.trials

    @property
    def stderr(self) -> float:
        p = self.estimate
        return math.sqrt(p * (1 - p) / self.trials)


class Verdict(str, Enum):
    CONSISTENT = "consistent"
    CONVERSE_GAP = "converse-gap"
    VIOLATION = "violation"


def rng_for(seed: int, trial: int) -> np.random.Generator:
    """Philox generator keyed by ``(seed, trial)``; distinct keys give independent streams."""
    return np.random.Generator(np.random.Philox(key=((seed & _MASK64) << 64) | (trial & _MASK64)))


def _has_ties(pts: np.ndarray) -> bool:
    s = np.sort(pts, axis=0)
    return bool((s[1:] == s[:-1]).any())


def sample_points(n: int, k: int, seed: int, trial: int = 0) -> PointCloud:
    """``n`` uniform points in ``[0, 1)^(k+1)``; redrawn whole on any coordinate tie."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    rng = rng_for(seed, trial)
    while True:
        pts = rng.random((n, k + 1))
        if not _has_ties(pts):
            return PointCloud(pts, seed, trial)


def tuple_from_points(cloud: PointCloud) -> PermTuple:
    """Permutations read off coordinates 2..k+1 after sorting by coordinate 1."""
    pts = cloud.points[np.argsort(cloud.points[:, 0], kind="stable")]
    perms = []
    for c in range(1, pts.shape[1]):
        ranks = np.empty(len(pts), dtype=np.int64)
        ranks[np.argsort(pts[:, c], kind="stable")] = np.arange(1, len(pts) + 1)
        perms.append(ranks.tolist())
    return PermTuple(perms)


def antichain_check(cloud: PointCloud) -> bool:
    """True iff no point is below another in every coordinate."""
    p = cloud.points
    below = (p[:, None, :] < p[None, :, :]).all(axis=2)
    return not bool(below.any())


def increasing_pattern(k: int) -> PermTuple:
    return PermTuple([(1, 2)] * k)


def estimate_qk(n: int, k: int, trials: int, seed: int) -> Estimate:
    """Fraction of sampled ``k``-tuples in ``S_n`` avoiding ``(12, ..., 12)``."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    pattern = increasing_pattern(k)
    hits = 0
    for t in range(trials):
        if parallel_contains(tuple_from_points(sample_points(n, k, seed, t)), pattern) is None:
            hits += 1
    return Estimate(trials, hits)


def lemma_check(cloud: PointCloud, pattern: PermTuple, r: int) -> Verdict:
    """Compare tuple avoidance of ``pattern`` with grid-matrix avoidance of its
    permutation matrix.

    Tuple avoidance must imply grid avoidance; the reverse can fail when two
    witnessing points share a box, which is reported as a converse gap.
    """
    if pattern.k != cloud.k:
        raise ValueError(f"pattern arity {pattern.k} does not match cloud arity {cloud.k}")
    tuple_avoids = parallel_contains(tuple_from_points(cloud), pattern) is None
    grid_has = matrix_contains(grid_matrix(cloud.points, r), build_perm_matrix(pattern))
    if tuple_avoids and grid_has:
        return Verdict.VIOLATION
    if not tuple_avoids and not grid_has:
        return Verdict.CONVERSE_GAP
    return Verdict.CONSISTENT


def lemma_harness(configs, clouds_per_config: int, seed: int, pattern=None) -> Counter:
    """Run :func:`lemma_check` over ``(n, k, r)`` configurations.

    Uses ``(12, ..., 12)`` of matching arity unless ``pattern`` is given.
    Trial indices run on across configurations so no two clouds share a stream.
    """
    tally: Counter = Counter()
    trial = 0
    for n, k, r in configs:
        pat = pattern if pattern is not None else increasing_pattern(k)
        for _ in range(clouds_per_config):
            tally[lemma_check(sample_points(n, k, seed, trial), pat, r)] += 1
            trial += 1
    return tally


def mc_report(n: int, k: int, trials: int, seed: int, r: int) -> dict:
    """q_k(n) estimate plus the grid-avoidance check on the same clouds."""
    pattern = increasing_pattern(k)
    perm_matrix = build_perm_matrix(pattern)
    hits = violations = gaps = 0
    for t in range(trials):
        cloud = sample_points(n, k, seed, t)
        avoids = parallel_contains(tuple_from_points(cloud), pattern) is None
        grid_has = matrix_contains(grid_matrix(cloud.points, r), perm_matrix)
        hits += avoids
        violations += avoids and grid_has
        gaps += (not avoids) and (not grid_has)
    est = Estimate(trials, hits)
    return {"n": n, "k": k, "trials": trials, "seed": seed, "r": r,
            "successes": hits, "estimate": est.estimate, "stderr": est.stderr,
            "violations": violations, "converse_gaps": gaps}
