import itertools

import pytest
from hypothesis import strategies as st

from klazar.core import SetPartition, from_labels, standardize


def brute_partitions(n):
    """All partitions of [n] by inserting n into partitions of [n-1].

    Deliberately unrelated to the restricted-growth walker in the package.
    """
    if n == 0:
        yield SetPartition(0, ())
        return
    for smaller in brute_partitions(n - 1):
        blocks = [list(b) for b in smaller.blocks]
        for i in range(len(blocks)):
            yield standardize(blocks[:i] + [blocks[i] + [n]] + blocks[i + 1:])
        yield standardize(blocks + [[n]])


def all_partitions_upto(n):
    for size in range(n + 1):
        yield from brute_partitions(size)


def brute_perms(n):
    return [tuple(p) for p in itertools.permutations(range(1, n + 1))]


@st.composite
def partitions(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    labels = []
    top = 0
    for _ in range(n):
        b = draw(st.integers(0, top))
        labels.append(b)
        top = max(top, b + 1)
    return from_labels(labels)


@st.composite
def permutations(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    return tuple(draw(st.permutations(range(1, n + 1))))


# -- acceptance report -----------------------------------------------------

_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    num = marker.args[0]
    title = marker.kwargs.get("title", item.name)
    prev = _criteria.get(num, (title, True))
    if rep.when == "call" or rep.failed:
        _criteria[num] = (title, prev[1] and rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        title, ok = _criteria[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {title}")
