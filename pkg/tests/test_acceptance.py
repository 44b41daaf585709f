"""The ten acceptance criteria, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints one
PASS/FAIL line per criterion.
"""

import itertools
import math
import time

import pytest

from conftest import all_partitions_upto, brute_perms
from klazar.core import (canonical_labels, contains, is_layered, parse_partition, restriction_set,
                         standardize)
from klazar.correspond import (PermTuple, build_correspondent, classical_contains,
                               parallel_contains, parse_tuple, split_decompose)
from klazar.enumeration import (count_avoiders, count_avoiders_by_blocks, count_parallel_avoiders,
                                exponent_table, iter_avoiders, iter_partitions,
                                lowerbound_construction)
from klazar.montecarlo import (Verdict, antichain_check, estimate_qk, increasing_pattern,
                               lemma_harness, sample_points, tuple_from_points)
from klazar.stats import min_split_bruteforce, permutability, thickness, thickness_oracle

P = parse_partition
criterion = pytest.mark.criterion


@criterion(1, title="worked fixtures, exact, under 1 s")
def test_criterion_01_fixtures():
    t0 = time.perf_counter()
    host = P("136/5/27")
    assert contains(host, P("14/23")) == (2, 3, 6, 7)
    assert contains(host, P("1/234")) is None
    assert standardize([{1, 6, 3, 5}, {2, 4}]) == P("1356/24")
    assert P("1635/24") == P("1356/24")
    assert is_layered(P("12/3456/789"))
    assert not is_layered(P("13/2456/789"))
    assert thickness(P("1267/345"))[0] == 3
    pm, split = permutability(P("1267/345"))
    assert pm == 4 and split.intervals == [[1], [2, 3], [4], [5, 6], [7]]
    sd = split_decompose(P("1246/35/78"))
    assert sd.left == P("124/3")
    assert sd.right_blocks_absolute() == [(5,), (6,), (7, 8)]
    # {3} joins {5} and {1,2,4} joins {6}
    joined = {sd.left.blocks[li]: sd.right_blocks_absolute()[ri] for li, ri in sd.pairs}
    assert joined == {(3,): (5,), (1, 2, 4): (6,)}
    assert time.perf_counter() - t0 < 1.0


@criterion(2, title="containment, thickness and permutability match their oracles")
def test_criterion_02_oracles():
    t0 = time.perf_counter()
    patterns = [q for q in all_partitions_upto(4) if q.n]
    keys = [canonical_labels(q.labels) for q in patterns]
    bad = 0
    for h in all_partitions_upto(8):
        seen = restriction_set(h, 4)
        for q, key in zip(patterns, keys):
            bad += (contains(h, q) is not None) != (key in seen)
        if h.n:
            bad += thickness(h)[0] != thickness_oracle(h)
    for p in all_partitions_upto(9):
        if p.n:
            bad += permutability(p)[0] != min_split_bruteforce(p)
    assert bad == 0
    assert time.perf_counter() - t0 < 600


@criterion(3, title="parallel containment equals correspondent containment")
def test_criterion_03_correspondence():
    bad = 0
    for k in (1, 2):
        pats = [PermTuple(t) for m in range(1, 4) for t in itertools.product(brute_perms(m), repeat=k)]
        pat_parts = [build_correspondent(t) for t in pats]
        for n in range(1, 6):
            for ht in itertools.product(brute_perms(n), repeat=k):
                host = PermTuple(ht)
                hp = build_correspondent(host)
                for t, tp in zip(pats, pat_parts):
                    if t.n > n:
                        continue
                    bad += (parallel_contains(host, t) is None) != (contains(hp, tp) is None)
    assert bad == 0


@criterion(4, title="pm >= th everywhere, equality on layered partitions")
def test_criterion_04_pm_vs_th():
    bad = 0
    for p in all_partitions_upto(9):
        if not p.n:
            continue
        pm, th = permutability(p)[0], thickness(p)[0]
        bad += pm < th
        bad += is_layered(p) and pm != th
    assert bad == 0


def stirling2(n, m):
    if n == m:
        return 1
    if m == 0 or m > n:
        return 0
    return m * stirling2(n - 1, m) + stirling2(n - 1, m - 1)


@criterion(5, title="counting identities")
def test_criterion_05_counting():
    bell = [1, 2, 5, 15, 52, 203, 877, 4140]
    for n in range(1, 13):
        assert count_avoiders(P("12"), n).count == 1
        assert count_avoiders(P("1/2"), n).count == 1
    for n in range(1, 9):
        big = P("/".join(map(str, range(1, n + 2))))
        assert count_avoiders(big, n).count == bell[n - 1]
        assert sum(1 for _ in iter_partitions(n)) == bell[n - 1]
        for m in range(n + 1):
            assert count_avoiders_by_blocks(big, n, m).count == stirling2(n, m)
    for text in ("12", "1/2", "13/24", "123", "1/2/3", "12/3", "1267/345"):
        q = P(text)
        for n in range(9):
            per_block = sum(count_avoiders_by_blocks(q, n, m).count for m in range(n + 1))
            assert per_block == count_avoiders(q, n).count


@criterion(6, title="lower-bound construction sizes and avoidance")
def test_criterion_06_construction():
    for text in ("123", "12/34", "1234"):
        q = P(text)
        k = permutability(q)[0]
        assert k in (2, 3)
        for size in range(1, 5):
            out = list(lowerbound_construction(q, k * size))
            assert len(out) == math.factorial(size) ** (k - 1)
            assert all(contains(p, q) is None for p in out)


@criterion(7, title="split matchings of [sigma]-avoiders avoid sigma")
def test_criterion_07_matching():
    bad = checked = 0
    for s in ("12", "21", "123"):
        q = build_correspondent(parse_tuple(s))
        sigma = tuple(int(c) for c in s)
        for n in (2, 4, 6, 8):
            for p in iter_avoiders(q, n):
                sd = split_decompose(p)
                checked += 1
                if sd.matching is not None and classical_contains(sd.matching.images, sigma):
                    bad += 1
    assert checked > 0 and bad == 0


def inversion_set(s):
    return frozenset((i, j) for i, j in itertools.combinations(range(len(s)), 2) if s[i] > s[j])


@criterion(8, title="parallel counts: weak order and complement invariance")
def test_criterion_08_parallel_counts():
    for n in range(1, 7):
        assert count_parallel_avoiders(parse_tuple("12"), n).count == 1
    for n in range(1, 7):
        invs = [inversion_set(s) for s in brute_perms(n)]
        pairs = sum(1 for a in invs for b in invs if b <= a)
        assert count_parallel_avoiders(parse_tuple("12|21"), n).count == pairs
    patterns = [parse_tuple(t) for t in ("12", "132", "231", "2413")]
    patterns += [PermTuple(t) for t in itertools.product(brute_perms(2), repeat=2)]
    patterns += [parse_tuple(t) for t in ("123|132", "231|312", "213|321")]
    for t in patterns:
        base = [count_parallel_avoiders(t, n).count for n in range(1, 6)]
        for j in range(t.k):
            flipped = PermTuple(s.complement() if i == j else s for i, s in enumerate(t))
            assert [count_parallel_avoiders(flipped, n).count for n in range(1, 6)] == base


def within_3_sigma(successes, trials, exact):
    return abs(successes / trials - exact) <= 3 * math.sqrt(exact * (1 - exact) / trials)


@criterion(9, title="Monte Carlo estimates, antichains and the grid implication")
def test_criterion_09_monte_carlo():
    t0 = time.perf_counter()
    est = estimate_qk(3, 1, 10 ** 5, seed=20261016)
    assert within_3_sigma(est.successes, est.trials, 1 / 6)
    pattern = increasing_pattern(2)
    trials = 20000
    for n in range(1, 7):
        exact = count_parallel_avoiders(pattern, n).count / math.factorial(n) ** 2
        hits = 0
        for t in range(trials):
            cloud = sample_points(n, 2, seed=1000 + n, trial=t)
            avoids = parallel_contains(tuple_from_points(cloud), pattern) is None
            assert antichain_check(cloud) == avoids
            hits += avoids
        assert within_3_sigma(hits, trials, exact), (n, hits / trials, exact)
    configs = [(n, k, r) for k in (1, 2) for n in range(2, 9) for r in (2, 4, 8)]
    tally = lemma_harness(configs, 240, seed=7)
    assert sum(tally.values()) >= 10 ** 4
    assert tally[Verdict.VIOLATION] == 0
    assert time.perf_counter() - t0 < 300


@criterion(10, title="exponent ratios for 13/24 decrease over n = 4..12")
def test_criterion_10_exponents():
    t0 = time.perf_counter()
    rows = [r for r in exponent_table(P("13/24"), 12, workers=4) if r.n >= 4]
    assert [r.n for r in rows] == list(range(4, 13))
    ratios = [r.ratio for r in rows]
    assert all(a > b for a, b in zip(ratios, ratios[1:]))
    assert time.perf_counter() - t0 < 1800
