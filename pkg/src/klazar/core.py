"""Set partitions in standard form and Klazar containment.

A partition of ``[n] = {1, ..., n}`` is stored twice: as its list of blocks
(the canonical form, blocks sorted by minimum) and as a membership array
``labels`` mapping each element to the index of its block.  All searches
work on ``labels``.

>>> p = parse_partition("136/5/27")
>>> contains(p, parse_partition("14/23"))
(2, 3, 6, 7)
>>> contains(p, parse_partition("1/234")) is None
True
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

__all__ = [
    "MalformedPartitionError",
    "SetPartition",
    "standardize",
    "from_labels",
    "parse_partition",
    "format_partition",
    "restrict",
    "contains",
    "contains_ending_at",
    "rank",
    "is_layered",
    "canonical_labels",
    "contains_naive",
    "restriction_set",
]


class MalformedPartitionError(ValueError):
    """Raised for block lists that are not a partition of some [n]."""


@dataclass(frozen=True)
class SetPartition:
    """A set partition of ``[n]`` in standard form.

    Construct through :func:`standardize` or :func:`parse_partition`; the
    constructor only validates that the blocks are already canonical.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        labels = [-1] * self.n
        last_min = 0
        for idx, block in enumerate(self.blocks):
            if not block:
                raise MalformedPartitionError("empty block")
            if any(a >= b for a, b in zip(block, block[1:])):
                raise MalformedPartitionError(f"block {block} is not strictly increasing")
            if block[0] <= last_min:
                raise MalformedPartitionError("blocks are not ordered by minimum")
            last_min = block[0]
            for x in block:
                if not 1 <= x <= self.n or labels[x - 1] != -1:
                    raise MalformedPartitionError(f"element {x} out of range or repeated")
                labels[x - 1] = idx
        if -1 in labels:
            raise MalformedPartitionError("blocks do not cover [n]")
        object.__setattr__(self, "labels", tuple(labels))

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def block_of(self, x: int) -> int:
        """Index of the block containing element ``x`` (1-based element)."""
        return self.labels[x - 1]

    def block_sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def __str__(self):
        return format_partition(self)

    def __len__(self):
        return self.n


def standardize(raw_blocks: Iterable[Iterable[int]]) -> SetPartition:
    """Return the standard form of a collection of disjoint blocks.

    The union of the blocks must be ``{1, ..., n}`` for some ``n >= 0``.
    """
    blocks = []
    seen = set()
    for raw in raw_blocks:
        block = sorted(int(x) for x in raw)
        if not block:
            continue
        for x in block:
            if x in seen:
                raise MalformedPartitionError(f"element {x} appears in more than one block")
            seen.add(x)
        blocks.append(tuple(block))
    n = len(seen)
    if seen != set(range(1, n + 1)):
        raise MalformedPartitionError("union of blocks is not {1, ..., n}")
    blocks.sort(key=lambda b: b[0])
    return SetPartition(n, tuple(blocks))


def from_labels(labels: Sequence[int]) -> SetPartition:
    """Build a partition from any labelling of elements 1..n.

    Two elements share a block iff they carry equal labels; the label values
    themselves are irrelevant.
    """
    groups: dict[int, list[int]] = {}
    for i, lab in enumerate(labels, start=1):
        groups.setdefault(lab, []).append(i)
    # dict preserves first-occurrence order, which is the order of block minima
    return SetPartition(len(labels), tuple(tuple(g) for g in groups.values()))


def _digits_mode(tokens: list[str]) -> Optional[list[list[int]]]:
    blocks = []
    for tok in tokens:
        if not tok.isdigit():
            return None
        blocks.append([int(ch) for ch in tok])
    return blocks


def _usable(raw: list[list[int]]) -> bool:
    flat = [x for b in raw for x in b]
    return all(x >= 1 for x in flat) and len(flat) == len(set(flat))


def _fill_gaps(raw: list[list[int]]) -> list[list[int]]:
    covered = {x for b in raw for x in b}
    top = max(covered, default=0)
    return raw + [[x] for x in range(1, top + 1) if x not in covered]


def parse_partition(text: str, strict: bool = False) -> SetPartition:
    """Parse partition text such as ``"1356/24"`` or ``"1,3,5,6/2,4"``.

    Without commas each digit is one element (only sensible for n <= 9);
    tokens that do not make sense that way are read as whole integers, so
    ``"1/2/3/4/5/6/7/8/9/10"`` also parses.

    By default the result is standardized, and elements of ``{1, ..., max}``
    that appear in no block become singleton blocks (``"136/5/27"`` reads as
    ``136/27/4/5``).  With ``strict=True`` the text must already be the
    standard form of a partition of ``[n]``.
    """
    text = text.strip()
    if text in ("", "{}", "()", "-"):
        return SetPartition(0, ())
    tokens = [t.strip() for t in text.split("/")]
    if any(not t for t in tokens):
        raise MalformedPartitionError(f"empty block in {text!r}")
    if any("," in t for t in tokens):
        try:
            raw = [[int(x) for x in t.split(",") if x.strip()] for t in tokens]
        except ValueError as exc:
            raise MalformedPartitionError(f"cannot parse {text!r}") from exc
    else:
        raw = _digits_mode(tokens)
        if raw is None:
            raise MalformedPartitionError(f"cannot parse {text!r}")
        if not _usable(raw):
            raw = [[int(t)] for t in tokens]
    if not _usable(raw):
        raise MalformedPartitionError(f"{text!r} repeats an element or uses one below 1")
    if strict:
        result = standardize(raw)
        if [list(b) for b in result.blocks] != raw:
            raise MalformedPartitionError(f"{text!r} is not in standard form")
        return result
    return standardize(_fill_gaps(raw))


def format_partition(p: SetPartition) -> str:
    if p.n == 0:
        return "{}"
    sep = "" if p.n <= 9 else ","
    return "/".join(sep.join(str(x) for x in b) for b in p.blocks)


def restrict(host: SetPartition, subset: Iterable[int]) -> SetPartition:
    """Standardized partition induced on ``subset`` (elements relabeled 1..k)."""
    elems = sorted(set(subset))
    for x in elems:
        if not 1 <= x <= host.n:
            raise ValueError(f"element {x} is outside [1, {host.n}]")
    labels = host.labels
    return from_labels([labels[x - 1] for x in elems])


def _search(h, p, stop, k, i, start, p2h, used, chosen):
    # assign pattern element i to a host position in [start, stop)
    if i == k:
        return True
    pb = p[i]
    target = p2h[pb]
    last = stop - (k - i)
    for pos in range(start, last + 1):
        hb = h[pos]
        if target >= 0:
            if hb != target:
                continue
            chosen.append(pos)
            if _search(h, p, stop, k, i + 1, pos + 1, p2h, used, chosen):
                return True
            chosen.pop()
        elif hb not in used:
            p2h[pb] = hb
            used.add(hb)
            chosen.append(pos)
            if _search(h, p, stop, k, i + 1, pos + 1, p2h, used, chosen):
                return True
            chosen.pop()
            used.discard(hb)
            p2h[pb] = -1
    return False


def contains(host: SetPartition, pattern: SetPartition) -> Optional[tuple[int, ...]]:
    """Lexicographically least witness that ``host`` contains ``pattern``.

    Returns the 1-based host positions onto which the pattern's elements map,
    or ``None`` when the host avoids the pattern.  The empty pattern is
    contained everywhere, with the empty witness.
    """
    k = pattern.n
    if k > host.n:
        return None
    chosen: list[int] = []
    p2h = [-1] * pattern.num_blocks
    if _search(host.labels, pattern.labels, host.n, k, 0, 0, p2h, set(), chosen):
        return tuple(x + 1 for x in chosen)
    return None


def contains_ending_at(labels: Sequence[int], length: int, pattern_labels: Sequence[int],
                       num_pattern_blocks: int) -> bool:
    """Whether the prefix ``labels[:length]`` contains the pattern with the
    pattern's last element mapped onto position ``length - 1``.

    This is the incremental check used while growing a partition one element
    at a time: a new occurrence must use the new element, which is the
    largest and therefore plays the pattern's last element.
    """
    k = len(pattern_labels)
    if k == 0:
        return True
    if k > length:
        return False
    p2h = [-1] * num_pattern_blocks
    hb = labels[length - 1]
    p2h[pattern_labels[k - 1]] = hb
    return _search(labels, pattern_labels, length - 1, k - 1, 0, 0, p2h, {hb}, [])


def rank(p: SetPartition) -> int:
    if p.n < 1:
        raise ValueError("rank is defined only for partitions of n >= 1")
    return p.n - p.num_blocks


def is_layered(p: SetPartition) -> bool:
    """True iff every block is a run of consecutive integers."""
    return all(b[-1] - b[0] == len(b) - 1 for b in p.blocks)


# -- independent oracles ---------------------------------------------------

def canonical_labels(labels: Sequence[int]) -> tuple[int, ...]:
    """Restricted-growth relabelling: blocks numbered by first occurrence."""
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


def contains_naive(host: SetPartition, pattern: SetPartition) -> bool:
    """Containment by trying every ``pattern.n``-subset of the host."""
    from itertools import combinations

    target = canonical_labels(pattern.labels)
    h = host.labels
    return any(canonical_labels([h[i] for i in idx]) == target
               for idx in combinations(range(host.n), pattern.n))


def restriction_set(host: SetPartition, max_size: int) -> set[tuple[int, ...]]:
    """Canonical labels of every restriction of ``host`` to at most
    ``max_size`` elements, found by brute force over subsets."""
    from itertools import combinations

    h = host.labels
    out = set()
    for size in range(min(max_size, host.n) + 1):
        for idx in combinations(range(host.n), size):
            out.add(canonical_labels([h[i] for i in idx]))
    return out
