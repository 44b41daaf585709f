"""Permutation tuples and their correspondent set partitions.

The correspondent partition of ``(s_1, ..., s_k)`` with every ``s_j`` in
``S_n`` is the partition of ``[(k+1)n]`` whose ``i``-th block is
``{i, n + s_1(i), 2n + s_2(i), ..., kn + s_k(i)}``.  Containment between
correspondent partitions coincides with parallel containment of the tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import SetPartition, restrict, standardize

__all__ = [
    "Permutation",
    "PermTuple",
    "SplitDecomposition",
    "parse_permutation",
    "parse_tuple",
    "build_correspondent",
    "as_tuple",
    "parallel_contains",
    "classical_contains",
    "split_decompose",
]


@dataclass(frozen=True)
class Permutation:
    """A permutation of ``[n]`` in one-line notation (1-based images)."""

    images: tuple[int, ...]

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __len__(self):
        return len(self.images)

    def __iter__(self):
        return iter(self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.images, start=1):
            inv[v - 1] = i
        return Permutation(inv)

    def complement(self) -> "Permutation":
        return Permutation(self.n + 1 - v for v in self.images)

    def __str__(self):
        sep = "" if self.n <= 9 else ","
        return sep.join(map(str, self.images))

    def __repr__(self):
        return f"Permutation({str(self)!r})"


@dataclass(frozen=True)
class PermTuple:
    """A ``k``-tuple of permutations on a common ``[n]``, ``k >= 1``."""

    perms: tuple[Permutation, ...]

    def __init__(self, perms: Iterable):
        perms = tuple(p if isinstance(p, Permutation) else Permutation(p) for p in perms)
        if not perms:
            raise ValueError("a permutation tuple needs k >= 1 entries")
        if len({p.n for p in perms}) != 1:
            raise ValueError("all permutations in a tuple must have the same size")
        object.__setattr__(self, "perms", perms)

    @property
    def k(self) -> int:
        return len(self.perms)

    @property
    def n(self) -> int:
        return self.perms[0].n

    def __getitem__(self, j):
        return self.perms[j]

    def __iter__(self):
        return iter(self.perms)

    def __str__(self):
        return "|".join(map(str, self.perms))

    def __repr__(self):
        return f"PermTuple({str(self)!r})"


def parse_permutation(text: str) -> Permutation:
    text = text.strip()
    if "," in text:
        return Permutation(int(x) for x in text.split(","))
    return Permutation(int(ch) for ch in text)


def parse_tuple(text: str) -> PermTuple:
    """Parse ``"3142|2413"`` style tuple text."""
    return PermTuple(parse_permutation(t) for t in text.split("|"))


def build_correspondent(t: PermTuple) -> SetPartition:
    n = t.n
    blocks = [[i] + [j * n + s(i) for j, s in enumerate(t.perms, start=1)]
              for i in range(1, n + 1)]
    # block i has minimum i, so this is already standard form
    return SetPartition((t.k + 1) * n, tuple(tuple(b) for b in blocks))


def as_tuple(p: SetPartition) -> Optional[PermTuple]:
    """The tuple whose correspondent partition is ``p``, if there is one."""
    total = p.n
    if total == 0:
        return None
    sizes = {len(b) for b in p.blocks}
    if len(sizes) != 1:
        return None
    size = sizes.pop()
    k, n = size - 1, p.num_blocks
    if k < 1 or (k + 1) * n != total:
        return None
    perms = []
    for j in range(1, k + 1):
        images = []
        for i, blk in enumerate(p.blocks, start=1):
            if blk[0] != i:
                return None
            v = blk[j] - j * n
            if not 1 <= v <= n:
                return None
            images.append(v)
        if sorted(images) != list(range(1, n + 1)):
            return None
        perms.append(Permutation(images))
    return PermTuple(perms)


def parallel_contains(host: PermTuple, pattern: PermTuple) -> Optional[tuple[int, ...]]:
    """Lexicographically least indices ``c_1 < ... < c_m`` at which every
    coordinate of ``host`` is order-isomorphic to the same coordinate of
    ``pattern``, or ``None``.
    """
    if host.k != pattern.k:
        raise ValueError(f"arity mismatch: host k={host.k}, pattern k={pattern.k}")
    n, m = host.n, pattern.n
    if m > n:
        return None
    hs = [s.images for s in host.perms]
    ps = [s.images for s in pattern.perms]
    chosen: list[int] = []

    def extend(i: int, start: int) -> bool:
        if i == m:
            return True
        for c in range(start, n - (m - i) + 1):
            ok = True
            for h, q in zip(hs, ps):
                hv, qv = h[c], q[i]
                for t, ct in enumerate(chosen):
                    if (h[ct] < hv) != (q[t] < qv):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                chosen.append(c)
                if extend(i + 1, c + 1):
                    return True
                chosen.pop()
        return False

    if extend(0, 0):
        return tuple(c + 1 for c in chosen)
    return None


def classical_contains(host: Sequence[int], pattern: Sequence[int]) -> bool:
    """Classical permutation containment by direct pattern reduction.

    Written independently of :func:`parallel_contains`: each increasing index
    set is reduced to its standard permutation and compared.
    """
    from itertools import combinations

    pattern = tuple(pattern)
    m = len(pattern)
    for idx in combinations(range(len(host)), m):
        vals = [host[i] for i in idx]
        order = sorted(vals)
        if tuple(order.index(v) + 1 for v in vals) == pattern:
            return True
    return False


@dataclass(frozen=True)
class SplitDecomposition:
    """A partition of ``[n]`` cut into its lower and upper halves.

    ``left`` is the partition induced on ``{1, ..., h}`` and ``right`` the
    partition induced on ``{h+1, ..., n}`` relabeled to ``{1, ..., n-h}``.
    ``pairs`` lists ``(left block index, right block index)`` for blocks that
    are two halves of one original block.  ``matching`` encodes the same
    pairing as a permutation: the ``i``-th matched left block (by minimum) is
    joined to the ``matching(i)``-th matched right block.
    """

    n: int
    left: SetPartition
    right: SetPartition
    pairs: tuple[tuple[int, int], ...]
    matching: Optional[Permutation]

    @property
    def half(self) -> int:
        return self.left.n

    def right_blocks_absolute(self) -> list[tuple[int, ...]]:
        return [tuple(x + self.half for x in b) for b in self.right.blocks]

    def reassemble(self) -> SetPartition:
        rights = self.right_blocks_absolute()
        joined_right = {r for _, r in self.pairs}
        out = []
        partner = dict(self.pairs)
        for li, blk in enumerate(self.left.blocks):
            if li in partner:
                out.append(blk + rights[partner[li]])
            else:
                out.append(blk)
        out.extend(b for ri, b in enumerate(rights) if ri not in joined_right)
        return standardize(out)


def split_decompose(p: SetPartition) -> SplitDecomposition:
    if p.n < 2 or p.n % 2:
        raise ValueError(f"split_decompose needs an even n >= 2, got {p.n}")
    h = p.n // 2
    left = restrict(p, range(1, h + 1))
    right = restrict(p, range(h + 1, p.n + 1))
    # block of the original partition -> block index on each side
    left_of = {}
    for x in range(1, h + 1):
        left_of.setdefault(p.labels[x - 1], left.labels[x - 1])
    right_of = {}
    for x in range(h + 1, p.n + 1):
        right_of.setdefault(p.labels[x - 1], right.labels[x - h - 1])
    pairs = sorted((left_of[b], right_of[b]) for b in left_of if b in right_of)
    if not pairs:
        return SplitDecomposition(p.n, left, right, (), None)
    right_rank = {r: i for i, r in enumerate(sorted(r for _, r in pairs), start=1)}
    matching = Permutation(right_rank[r] for _, r in pairs)
    return SplitDecomposition(p.n, left, right, tuple(pairs), matching)
