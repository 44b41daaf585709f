import itertools
import math
import random

import pytest

from conftest import all_partitions_upto, brute_partitions, brute_perms
from klazar.core import canonical_labels, contains, parse_partition, restrict, restriction_set
from klazar.correspond import PermTuple, as_tuple, build_correspondent, parse_tuple
from klazar.enumeration import (ExponentRow, count_avoiders, count_avoiders_by_blocks,
                                count_avoiders_oracle, count_parallel_avoiders, exponent_table,
                                fit_lower_constant, iter_avoiders, iter_partitions,
                                lowerbound_construction, rows_to_tsv, strip_singletons)
from klazar.errors import GuardError
from klazar.stats import permutability

P = parse_partition
BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140]


def stirling2(n, m):
    # independent recurrence; the tests compare it with walker output
    if n == m:
        return 1
    if m == 0 or m > n:
        return 0
    return m * stirling2(n - 1, m) + stirling2(n - 1, m - 1)


def test_iter_partitions_matches_insertion_generator():
    for n in range(7):
        assert sorted(map(str, iter_partitions(n))) == sorted(map(str, brute_partitions(n)))


def test_trivial_patterns():
    for n in range(1, 13):
        assert count_avoiders(P("12"), n).count == 1
        assert count_avoiders(P("1/2"), n).count == 1


def test_oversized_pattern_gives_bell_numbers():
    for n in range(1, 9):
        big = P("/".join(str(i) for i in range(1, n + 2)))
        assert count_avoiders(big, n).count == BELL[n]
        assert count_avoiders_oracle(big, n).count == BELL[n]


def test_oversized_pattern_by_blocks_gives_stirling():
    big = P("1/2/3/4/5/6/7/8/9")
    assert count_avoiders_by_blocks(big, 4, 2).count == 7
    for n in range(0, 8):
        for m in range(0, n + 1):
            assert count_avoiders_by_blocks(big, n, m).count == stirling2(n, m)


def test_by_blocks_edge_cases():
    assert count_avoiders_by_blocks(P("1/2"), 5, 3).count == 0
    assert count_avoiders_by_blocks(P("1/2"), 5, 1).count == 1
    assert count_avoiders_by_blocks(P("12"), 0, 0).count == 1
    with pytest.raises(ValueError):
        count_avoiders_by_blocks(P("12"), 3, 4)


def test_noncrossing_counts():
    # 13/24-avoiders are the non-crossing partitions
    for n in range(1, 9):
        got = count_avoiders(P("13/24"), n).count
        assert got == count_avoiders_oracle(P("13/24"), n).count
        assert got == math.comb(2 * n, n) // (n + 1)


def test_pruned_matches_oracle():
    pats = [q for q in all_partitions_upto(4) if q.n]
    hosts = {n: list(brute_partitions(n)) for n in range(8)}
    # one subset scan per host, shared by every pattern
    closures = {n: [restriction_set(h, 4) for h in hosts[n]] for n in range(8)}
    for q in pats:
        key = canonical_labels(q.labels)
        for n in range(8):
            expected = sum(1 for c in closures[n] if key not in c)
            assert count_avoiders(q, n).count == expected, (q, n)


@pytest.mark.parametrize("pattern", ["13/24", "123", "1/23", "12/34", "14/23"])
def test_pruned_matches_oracle_n9(pattern):
    q = P(pattern)
    assert count_avoiders(q, 9).count == count_avoiders_oracle(q, 9).count


def test_iter_avoiders_really_avoid():
    q = P("13/2")
    found = list(iter_avoiders(q, 6))
    assert len(found) == count_avoiders(q, 6).count
    assert all(contains(p, q) is None for p in found)
    assert len({str(p) for p in found}) == len(found)


def test_block_sums():
    for text in ("13/24", "123", "1/2/3", "12/3", "1267/345"):
        q = P(text)
        for n in range(0, 9):
            total = sum(count_avoiders_by_blocks(q, n, m).count for m in range(n + 1))
            assert total == count_avoiders(q, n).count


def test_counts_monotone_under_containment():
    rng = random.Random(5)
    pats = [q for q in all_partitions_upto(5) if q.n >= 2]
    pairs = []
    while len(pairs) < 50:
        a, b = rng.sample(pats, 2)
        if a.n > b.n and contains(a, b) is not None:
            pairs.append((a, b))
    for big, small in pairs:
        n = rng.randint(big.n, 8)
        assert count_avoiders(big, n).count >= count_avoiders(small, n).count


def test_count_guard_and_report():
    with pytest.raises(GuardError):
        count_avoiders(P("12"), 15)
    assert count_avoiders(P("12"), 15, max_n=15).count == 1
    with pytest.raises(ValueError):
        count_avoiders(P("12"), -1)
    rep = count_avoiders(P("13/24"), 5)
    js = rep.to_json()
    assert js["count"] == "42" and js["method"] == "pruned" and "m" not in js
    assert count_avoiders_by_blocks(P("13/24"), 5, 2).to_json()["m"] == 2


def test_workers_do_not_change_counts():
    for text in ("13/24", "123/4"):
        q = P(text)
        assert count_avoiders(q, 9, workers=2).count == count_avoiders(q, 9).count
        assert (count_avoiders_by_blocks(q, 8, 3, workers=2).count
                == count_avoiders_by_blocks(q, 8, 3).count)


def weak_order_pairs(n):
    def inv(s):
        return {(i, j) for i, j in itertools.combinations(range(n), 2) if s[i] > s[j]}
    invs = [inv(s) for s in brute_perms(n)]
    return sum(1 for a in invs for b in invs if b <= a)


def test_parallel_single_increasing():
    for n in range(1, 7):
        assert count_parallel_avoiders(parse_tuple("12"), n).count == 1


def test_parallel_weak_order_counts():
    for n in range(1, 6):
        assert count_parallel_avoiders(parse_tuple("12|21"), n).count == weak_order_pairs(n)


def test_parallel_budget():
    with pytest.raises(GuardError):
        count_parallel_avoiders(parse_tuple("12|21"), 8)
    with pytest.raises(ValueError):
        count_parallel_avoiders(parse_tuple("12"), 0)


def test_complement_invariance_small():
    for text in ("12|21", "132|213", "12|12"):
        t = parse_tuple(text)
        base = [count_parallel_avoiders(t, n).count for n in range(1, 5)]
        for j in range(t.k):
            flipped = PermTuple(s.complement() if i == j else s for i, s in enumerate(t))
            assert [count_parallel_avoiders(flipped, n).count for n in range(1, 5)] == base


def test_parallel_count_equals_correspondent_avoiders():
    for pat in ("12", "21", "132", "2413"):
        t = parse_tuple(pat)
        q = build_correspondent(t)
        for n in range(1, 5):
            corr = sum(1 for p in brute_partitions(2 * n)
                       if getattr(as_tuple(p), "k", 0) == 1 and contains(p, q) is None)
            assert count_parallel_avoiders(t, n).count == corr


def test_strip_singletons():
    assert strip_singletons(P("136/5/27")) == P("134/25")
    assert strip_singletons(P("136/5/27")) == restrict(P("136/5/27"), [1, 2, 3, 6, 7])
    assert strip_singletons(P("1/2/3")).n == 0
    assert strip_singletons(P("13/24")) == P("13/24")


def test_strip_singletons_is_a_restriction():
    for p in all_partitions_upto(7):
        keep = [x for b in p.blocks if len(b) > 1 for x in b]
        assert strip_singletons(p) == restrict(p, keep)


def test_construction_example():
    out = list(lowerbound_construction(P("1267/345"), 4))
    assert [str(p) for p in out] == ["1234"]
    assert contains(out[0], P("1267/345")) is None


@pytest.mark.parametrize("pattern", ["123", "12/34", "135/246", "1234"])
def test_construction_counts_and_avoidance(pattern):
    q = P(pattern)
    k = permutability(q)[0]
    assert k in (2, 3)
    for size in range(1, 5 if k == 2 else 4):
        out = list(lowerbound_construction(q, k * size))
        assert len(out) == math.factorial(size) ** (k - 1)
        assert len({str(p) for p in out}) == len(out)
        for p in out:
            assert p.n == k * size
            assert permutability(p)[0] == k - 1
            assert contains(p, q) is None


def test_construction_errors():
    with pytest.raises(ValueError):
        list(lowerbound_construction(P("13/24"), 4))
    with pytest.raises(ValueError):
        list(lowerbound_construction(P("123"), 5))


def test_exponent_table_rows():
    rows = exponent_table(P("13/24"), 8)
    assert [r.n for r in rows] == list(range(2, 9))
    assert rows[0].ratio == pytest.approx(math.log(2) / (2 * math.log(2)))
    assert [r.count for r in rows] == [math.comb(2 * n, n) // (n + 1) for n in range(2, 9)]
    tsv = rows_to_tsv(rows)
    assert tsv.splitlines()[0] == "n\tcount\tratio"
    assert len(tsv.splitlines()) == 8
    with pytest.raises(GuardError):
        exponent_table(P("13/24"), 20)


def test_exponent_row_without_ratio():
    assert ExponentRow(1, 1).ratio is None


def test_fit_lower_constant_is_tight():
    rows = exponent_table(P("123"), 8)
    c, bounds = fit_lower_constant(rows, 2)
    assert c > 0
    assert all(r.ratio >= b - 1e-12 for r, b in zip(rows, bounds))
    assert any(abs(r.ratio - b) < 1e-9 for r, b in zip(rows, bounds))
