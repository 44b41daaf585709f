"""Exact counts of pattern-avoiding set partitions and permutation tuples.

Partitions are generated as restricted-growth strings: element ``j`` joins
one of the blocks opened so far or opens the next one.  A prefix that
already contains the pattern is abandoned with its whole subtree, since
every extension of it contains the pattern too.  When a prefix is extended
by a new element only occurrences using that element are searched for.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .core import SetPartition, contains_ending_at, contains_naive, from_labels
from .correspond import PermTuple, Permutation, build_correspondent, parallel_contains
from .errors import GuardError
from .stats import permutability

ENGINE_VERSION = "1"
DEFAULT_MAX_N = 14
DEFAULT_TUPLE_BUDGET = math.factorial(7) ** 2
DEFAULT_SPLIT_DEPTH = 3

__all__ = [
    "ENGINE_VERSION",
    "CountReport",
    "ExponentRow",
    "iter_partitions",
    "iter_avoiders",
    "count_avoiders",
    "count_avoiders_by_blocks",
    "count_avoiders_oracle",
    "count_parallel_avoiders",
    "strip_singletons",
    "lowerbound_construction",
    "exponent_table",
    "fit_lower_constant",
    "rows_to_tsv",
]


@dataclass
class CountReport:
    pattern: str
    n: int
    count: int
    method: str
    m: Optional[int] = None
    elapsed_ms: float = 0.0

    def to_json(self) -> dict:
        out = {"pattern": self.pattern, "n": self.n}
        if self.m is not None:
            out["m"] = self.m
        out.update(count=str(self.count), method=self.method,
                   elapsed_ms=round(self.elapsed_ms, 3))
        return out


@dataclass
class ExponentRow:
    n: int
    count: int
    ratio: Optional[float] = field(default=None)

    def __post_init__(self):
        if self.ratio is None and self.count >= 1 and self.n >= 2:
            self.ratio = math.log(self.count) / (self.n * math.log(self.n))


# -- restricted-growth walk ------------------------------------------------

def _walk(labels: list, nblocks: int, n: int, pat, npb: int, m: Optional[int]) -> Iterator[tuple]:
    j = len(labels)
    if j == n:
        if m is None or nblocks == m:
            yield tuple(labels)
        return
    top = nblocks + 1
    if m is not None:
        top = min(top, m)
        if nblocks + (n - j) < m:
            return
    for b in range(top):
        labels.append(b)
        if pat is None or not contains_ending_at(labels, j + 1, pat, npb):
            yield from _walk(labels, max(nblocks, b + 1), n, pat, npb, m)
        labels.pop()


def _count(labels: list, nblocks: int, n: int, pat, npb: int, m: Optional[int]) -> int:
    j = len(labels)
    if j == n:
        return 1 if m is None or nblocks == m else 0
    top = nblocks + 1
    if m is not None:
        top = min(top, m)
        if nblocks + (n - j) < m:
            return 0
    total = 0
    for b in range(top):
        labels.append(b)
        if not contains_ending_at(labels, j + 1, pat, npb):
            total += _count(labels, max(nblocks, b + 1), n, pat, npb, m)
        labels.pop()
    return total


def iter_partitions(n: int) -> Iterator[SetPartition]:
    """Every partition of ``[n]``, in restricted-growth-string order."""
    for labels in _walk([], 0, n, None, 0, None):
        yield from_labels(labels)


def iter_avoiders(pattern: SetPartition, n: int, m: Optional[int] = None) -> Iterator[SetPartition]:
    """Partitions of ``[n]`` avoiding ``pattern`` (with exactly ``m`` blocks if given)."""
    if pattern.n == 0:
        return
    for labels in _walk([], 0, n, pattern.labels, pattern.num_blocks, m):
        yield from_labels(labels)


def _prefixes(depth: int, n: int, pat, npb: int, m: Optional[int]) -> list[tuple]:
    out = []

    def rec(labels, nblocks):
        j = len(labels)
        if j == depth:
            out.append((tuple(labels), nblocks))
            return
        top = nblocks + 1
        if m is not None:
            top = min(top, m)
            if nblocks + (n - j) < m:
                return
        for b in range(top):
            labels.append(b)
            if not contains_ending_at(labels, j + 1, pat, npb):
                rec(labels, max(nblocks, b + 1))
            labels.pop()

    rec([], 0)
    return out


def _count_subtree(args) -> int:
    prefix, nblocks, n, pat, npb, m = args
    return _count(list(prefix), nblocks, n, pat, npb, m)


def _pruned_count(pattern: SetPartition, n: int, m: Optional[int], workers: int,
                  split_depth: int) -> int:
    if pattern.n == 0:
        return 0
    pat, npb = pattern.labels, pattern.num_blocks
    if workers <= 1:
        return _count([], 0, n, pat, npb, m)
    depth = min(split_depth, n)
    jobs = [(prefix, nb, n, pat, npb, m) for prefix, nb in _prefixes(depth, n, pat, npb, m)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map keeps submission order; integer addition makes the sum schedule-free
        return sum(pool.map(_count_subtree, jobs))


def _check_n(n: int, max_n: int):
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > max_n:
        raise GuardError(f"n={n} exceeds the guard max_n={max_n}")


def count_avoiders(pattern: SetPartition, n: int, max_n: int = DEFAULT_MAX_N,
                   workers: int = 1, split_depth: int = DEFAULT_SPLIT_DEPTH) -> CountReport:
    """Number of partitions of ``[n]`` avoiding ``pattern``."""
    _check_n(n, max_n)
    t0 = time.perf_counter()
    count = _pruned_count(pattern, n, None, workers, split_depth)
    return CountReport(str(pattern), n, count, "pruned",
                       elapsed_ms=(time.perf_counter() - t0) * 1000)


def count_avoiders_by_blocks(pattern: SetPartition, n: int, m: int, max_n: int = DEFAULT_MAX_N,
                             workers: int = 1, split_depth: int = DEFAULT_SPLIT_DEPTH) -> CountReport:
    """Number of partitions of ``[n]`` into exactly ``m`` blocks avoiding ``pattern``."""
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    _check_n(n, max_n)
    t0 = time.perf_counter()
    if n == 0:
        count = 1 if pattern.n > 0 else 0
    elif m == 0:
        count = 0
    else:
        count = _pruned_count(pattern, n, m, workers, split_depth)
    return CountReport(str(pattern), n, count, "pruned", m=m,
                       elapsed_ms=(time.perf_counter() - t0) * 1000)


def count_avoiders_oracle(pattern: SetPartition, n: int, max_n: int = 10) -> CountReport:
    """Unpruned count: every partition of ``[n]``, checked by subset brute force."""
    _check_n(n, max_n)
    t0 = time.perf_counter()
    if pattern.n == 0:
        count = 0
    else:
        count = sum(1 for p in iter_partitions(n) if not contains_naive(p, pattern))
    return CountReport(str(pattern), n, count, "oracle",
                       elapsed_ms=(time.perf_counter() - t0) * 1000)


# -- permutation tuples ----------------------------------------------------

def count_parallel_avoiders(pattern: PermTuple, n: int,
                            budget: int = DEFAULT_TUPLE_BUDGET) -> CountReport:
    """Number of ``k``-tuples in ``S_n^k`` avoiding ``pattern`` in parallel."""
    if n < 1:
        raise ValueError("n must be >= 1")
    k = pattern.k
    if math.factorial(n) ** k > budget:
        raise GuardError(f"{n}!^{k} tuples exceed the budget {budget}")
    t0 = time.perf_counter()
    perms = [Permutation(s) for s in itertools.permutations(range(1, n + 1))]
    count = 0
    for tup in itertools.product(perms, repeat=k):
        if parallel_contains(PermTuple(tup), pattern) is None:
            count += 1
    return CountReport(str(pattern), n, count, "pruned",
                       elapsed_ms=(time.perf_counter() - t0) * 1000)


# -- lower-bound family ----------------------------------------------------

def strip_singletons(p: SetPartition) -> SetPartition:
    """Delete all one-element blocks and relabel the survivors."""
    keep = [b for b in p.blocks if len(b) > 1]
    elems = sorted(x for b in keep for x in b)
    rank_of = {x: i for i, x in enumerate(elems, start=1)}
    return SetPartition(len(elems), tuple(tuple(rank_of[x] for x in b) for b in keep))


def lowerbound_construction(pattern: SetPartition, n: int) -> Iterator[SetPartition]:
    """Correspondent partitions ``[s_1, ..., s_{k-1}]`` of ``[n]`` over
    ``S_{n/k}``, where ``k`` is the permutability of ``pattern``.

    Each has permutability ``k - 1`` and therefore avoids ``pattern``; there
    are exactly ``(n/k)!^(k-1)`` of them.
    """
    k, _ = permutability(pattern)
    if k < 2:
        raise ValueError(f"construction needs permutability >= 2, got {k}")
    if n < k or n % k:
        raise ValueError(f"n={n} must be a positive multiple of {k}")
    size = n // k
    perms = [Permutation(s) for s in itertools.permutations(range(1, size + 1))]
    for tup in itertools.product(perms, repeat=k - 1):
        yield build_correspondent(PermTuple(tup))


# -- exponent probe --------------------------------------------------------

def exponent_table(pattern: SetPartition, n_max: int, max_n: int = DEFAULT_MAX_N,
                   workers: int = 1) -> list[ExponentRow]:
    """Rows ``n = 2..n_max`` of ``log B_n / (n log n)``.  Reported, not judged."""
    _check_n(n_max, max_n)
    return [ExponentRow(n, count_avoiders(pattern, n, max_n, workers).count)
            for n in range(2, n_max + 1)]


def fit_lower_constant(rows: list[ExponentRow], pm: int) -> tuple[float, list[float]]:
    """Largest ``c`` with ``count >= c**n * n**(n (1 - 1/pm))`` on every row,
    and the ratio that bound implies at each row.
    """
    expo = 1 - 1 / pm
    c = min(math.exp((math.log(r.count) - expo * r.n * math.log(r.n)) / r.n) for r in rows)
    bounds = [(r.n * math.log(c) + expo * r.n * math.log(r.n)) / (r.n * math.log(r.n))
              for r in rows]
    return c, bounds


def rows_to_tsv(rows: list[ExponentRow]) -> str:
    lines = ["n\tcount\tratio"]
    for r in rows:
        ratio = "" if r.ratio is None else repr(r.ratio)
        lines.append(f"{r.n}\t{r.count}\t{ratio}")
    return "\n".join(lines) + "\n"
