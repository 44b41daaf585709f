"""Thickness and permutability of set partitions.

thickness
    Largest rank of a layered partition contained in the partition.
permutability
    Smallest ``k`` such that the partition sits inside some correspondent
    partition ``[s_1, ..., s_k]``.  Equivalently, one less than the fewest
    consecutive intervals of ``[n]`` that each meet every block at most once.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .core import SetPartition, contains
from .correspond import PermTuple, Permutation, build_correspondent
from .errors import GuardError

__all__ = [
    "IntervalSplit",
    "thickness",
    "thickness_oracle",
    "permutability",
    "permutability_oracle",
    "interval_is_feasible",
    "min_split_bruteforce",
]


@dataclass(frozen=True)
class IntervalSplit:
    """Cut points ``0 = a_0 <= ... <= a_{k+1} = m`` dividing ``[m]``.

    Interval ``i`` is ``(a_i, a_{i+1}]``.
    """

    cut_points: tuple[int, ...]

    @property
    def intervals(self) -> list[list[int]]:
        cp = self.cut_points
        return [list(range(a + 1, b + 1)) for a, b in zip(cp, cp[1:])]

    def __len__(self):
        return len(self.cut_points) - 1


def _require_nonempty(p: SetPartition, what: str):
    if p.n < 1:
        raise ValueError(f"{what} is undefined for the empty partition")


def thickness(p: SetPartition) -> tuple[int, tuple[int, ...]]:
    """Thickness of ``p`` and a certificate element set realizing it.

    A selection restricts to a layered partition iff the convex hulls of the
    per-block selections are pairwise disjoint, and inside a hull it never
    hurts to take every element of that block.  So the thickness is the best
    total weight of disjoint windows ``[a, b]`` (``a, b`` in one block,
    weight = block elements inside minus one) using each block at most once.
    The used-block mask is part of the state: dropping it lets two windows of
    one block straddle another block (e.g. ``1278/34/56`` would score 4).

    Among optimal certificates the lexicographically smallest sorted tuple is
    returned.  Singleton blocks never help and are skipped.
    """
    _require_nonempty(p, "thickness")
    n = p.n
    labels = p.labels
    blocks = p.blocks
    big = {b for b, blk in enumerate(blocks) if len(blk) > 1}

    @lru_cache(maxsize=None)
    def best(pos: int, mask: int) -> tuple[int, tuple[int, ...]]:
        if pos > n:
            return 0, ()
        result = best(pos + 1, mask)
        b = labels[pos - 1]
        if b in big and not mask >> b & 1:
            blk = blocks[b]
            start = blk.index(pos)
            for end in range(start + 1, len(blk)):
                w, cert = best(blk[end] + 1, mask | 1 << b)
                cand = (w + end - start, blk[start:end + 1] + cert)
                if cand[0] > result[0] or (cand[0] == result[0] and cand[1] < result[1]):
                    result = cand
        return result

    value, cert = best(1, 0)
    best.cache_clear()
    return value, cert


def thickness_oracle(p: SetPartition, max_n: int = 12) -> int:
    """Exhaustive thickness over all ``2**n`` element subsets (independent check).

    A subset restricts to a layered partition iff, read left to right, its
    block labels never return to a label after leaving it.
    """
    _require_nonempty(p, "thickness")
    if p.n > max_n:
        raise GuardError(f"thickness_oracle refuses n={p.n} > {max_n}")
    labels = p.labels
    best = 0
    for mask in range(1, 1 << p.n):
        closed = set()
        prev = -1
        size = runs = 0
        layered = True
        for i in range(p.n):
            if not mask >> i & 1:
                continue
            lab = labels[i]
            size += 1
            if lab != prev:
                if lab in closed:
                    layered = False
                    break
                if prev >= 0:
                    closed.add(prev)
                runs += 1
                prev = lab
        if layered and size - runs > best:
            best = size - runs
    return best


def permutability(p: SetPartition) -> tuple[int, IntervalSplit]:
    """Permutability of ``p`` with the greedy interval split as certificate.

    Feasibility (each block met at most once) is inherited by sub-intervals,
    so extending the current interval as long as possible is optimal: any
    feasible split can have its cuts pushed right to the greedy ones without
    breaking feasibility.
    """
    _require_nonempty(p, "permutability")
    cuts = [0]
    seen: set[int] = set()
    for x, b in enumerate(p.labels, start=1):
        if b in seen:
            cuts.append(x - 1)
            seen = set()
        seen.add(b)
    cuts.append(p.n)
    return len(cuts) - 2, IntervalSplit(tuple(cuts))


def interval_is_feasible(p: SetPartition, lo: int, hi: int) -> bool:
    """Whether elements ``lo..hi`` (inclusive) meet every block at most once."""
    labs = p.labels[lo - 1:hi]
    return len(set(labs)) == len(labs)


def min_split_bruteforce(p: SetPartition) -> int:
    """Fewest intervals in any feasible composition of ``[m]``, minus one.

    Tries cut sets by increasing size; an independent check on the greedy.
    """
    _require_nonempty(p, "permutability")
    m = p.n
    ok = {(a, b): interval_is_feasible(p, a, b) for a in range(1, m + 1) for b in range(a, m + 1)}
    for ncuts in range(m):
        for cuts in itertools.combinations(range(1, m), ncuts):
            bounds = (0,) + cuts + (m,)
            if all(ok[(a + 1, b)] for a, b in zip(bounds, bounds[1:])):
                return ncuts
    raise AssertionError("singleton intervals are always feasible")


def permutability_oracle(p: SetPartition, k_max: int, max_n: int = 7,
                         max_blocks: int = 4, budget: int = 24 ** 4) -> Optional[int]:
    """Permutability straight from the definition, by exhaustive search.

    Looks for the least ``k <= k_max`` such that some correspondent partition
    ``[s_1, ..., s_k]`` with every ``s_i`` in ``S_b`` contains ``p``, where
    ``b`` is the number of blocks of ``p`` (a witness of that size exists
    whenever any witness does).  Returns ``None`` when no ``k <= k_max``
    works.
    """
    _require_nonempty(p, "permutability")
    b = p.num_blocks
    if p.n > max_n or b > max_blocks:
        raise GuardError(f"permutability_oracle refuses n={p.n}, blocks={b}")
    perms = [Permutation(s) for s in itertools.permutations(range(1, b + 1))]
    total = 0
    for k in range(k_max + 1):
        if k == 0:
            # the empty tuple corresponds to b singletons
            if all(len(blk) == 1 for blk in p.blocks):
                return 0
            continue
        total += len(perms) ** k
        if total > budget:
            raise GuardError(f"permutability_oracle budget {budget} exceeded at k={k}")
        for tup in itertools.product(perms, repeat=k):
            if contains(build_correspondent(PermTuple(tup)), p) is not None:
                return k
    return None
