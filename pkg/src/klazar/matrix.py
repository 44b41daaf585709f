"""d-dimensional 0-1 matrices stored as sets of one-positions.

Coordinates are 1-based.  ``M`` contains ``N`` when there are increasing
injections ``[dims_N[c]] -> [dims_M[c]]`` on every axis sending each one of
``N`` onto a one of ``M``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .correspond import PermTuple
from .errors import GuardError

__all__ = [
    "DMatrix",
    "build_perm_matrix",
    "is_permutation_matrix",
    "matrix_contains",
    "find_embedding",
    "max_ones_avoiding",
    "max_ones_exhaustive",
    "count_avoiding_matrices",
    "grid_matrix",
]


@dataclass(frozen=True)
class DMatrix:
    dims: tuple[int, ...]
    ones: tuple[tuple[int, ...], ...]

    def __init__(self, dims: Sequence[int], ones: Iterable[Sequence[int]] = ()):
        dims = tuple(int(x) for x in dims)
        if not dims or any(x < 1 for x in dims):
            raise ValueError(f"dims must be a non-empty list of positive ints, got {dims}")
        pos = sorted({tuple(int(c) for c in p) for p in ones})
        for p in pos:
            if len(p) != len(dims) or any(not 1 <= c <= s for c, s in zip(p, dims)):
                raise ValueError(f"position {p} does not fit dims {dims}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "ones", tuple(pos))

    @property
    def d(self) -> int:
        return len(self.dims)

    def __len__(self):
        return len(self.ones)

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "ones": [list(p) for p in self.ones]}

    @classmethod
    def from_json(cls, obj: dict) -> "DMatrix":
        return cls(obj["dims"], obj["ones"])

    def to_array(self) -> np.ndarray:
        arr = np.zeros(self.dims, dtype=np.uint8)
        for p in self.ones:
            arr[tuple(c - 1 for c in p)] = 1
        return arr


def build_perm_matrix(t: PermTuple) -> DMatrix:
    """``(k+1)``-dimensional permutation matrix with ones at ``(i, s_1(i), ..., s_k(i))``."""
    n = t.n
    ones = [(i,) + tuple(s(i) for s in t.perms) for i in range(1, n + 1)]
    return DMatrix((n,) * (t.k + 1), ones)


def is_permutation_matrix(m: DMatrix) -> bool:
    """All sides equal and every axis-aligned hyperplane slice holds exactly one 1."""
    n = m.dims[0]
    if any(s != n for s in m.dims) or len(m.ones) != n:
        return False
    return all(sorted(p[c] for p in m.ones) == list(range(1, n + 1)) for c in range(m.d))


def _fits(fmap: dict, a: int, v: int, kn: int, mn: int) -> bool:
    # can N-coordinate a go to M-coordinate v, given the axis map so far?
    if a in fmap:
        return fmap[a] == v
    if v < a or mn - v < kn - a:
        return False
    for a2, v2 in fmap.items():
        if a2 < a:
            if v - v2 < a - a2:
                return False
        elif v2 - v < a2 - a:
            return False
    return True


def find_embedding(M: DMatrix, N: DMatrix) -> Optional[list[dict]]:
    """Per-axis partial maps witnessing that ``M`` contains ``N``, or ``None``.

    Only the coordinates carrying ones of ``N`` are mapped; the gap checks in
    the search guarantee each partial map extends to a full increasing
    injection.
    """
    if M.d != N.d:
        raise ValueError(f"dimension mismatch: {M.d} vs {N.d}")
    d = M.d
    if any(kn > mn for kn, mn in zip(N.dims, M.dims)):
        return None
    maps: list[dict] = [{} for _ in range(d)]
    nones, mones = N.ones, M.ones

    def place(i: int) -> bool:
        if i == len(nones):
            return True
        q = nones[i]
        for p in mones:
            if not all(_fits(maps[c], q[c], p[c], N.dims[c], M.dims[c]) for c in range(d)):
                continue
            added = [c for c in range(d) if q[c] not in maps[c]]
            for c in added:
                maps[c][q[c]] = p[c]
            if place(i + 1):
                return True
            for c in added:
                del maps[c][q[c]]
        return False

    return [dict(m) for m in maps] if place(0) else None


def matrix_contains(M: DMatrix, N: DMatrix) -> bool:
    return find_embedding(M, N) is not None


def _check_guards(N: DMatrix, r: int, max_d: int, max_r: int):
    if N.d > max_d or r > max_r:
        raise GuardError(f"d={N.d}, r={r} exceed guards d<={max_d}, r<={max_r}")
    if r < 1:
        raise ValueError("r must be >= 1")


def max_ones_avoiding(N: DMatrix, r: int, max_d: int = 3, max_r: int = 6) -> int:
    """Most ones a size-``r`` ``d``-dimensional matrix can hold while avoiding ``N``.

    Branch and bound over cells in lexicographic order: each cell is first
    tried as a one (if that keeps ``N`` out), then as a zero; a branch dies
    once its ones plus all undecided cells cannot beat the incumbent.
    """
    _check_guards(N, r, max_d, max_r)
    dims = (r,) * N.d
    cells = list(itertools.product(range(1, r + 1), repeat=N.d))
    total = len(cells)
    best = 0
    chosen: list[tuple] = []

    def dfs(i: int):
        nonlocal best
        if len(chosen) > best:
            best = len(chosen)
        if i == total or len(chosen) + total - i <= best:
            return
        chosen.append(cells[i])
        if not matrix_contains(DMatrix(dims, chosen), N):
            dfs(i + 1)
        chosen.pop()
        dfs(i + 1)

    dfs(0)
    return best


def max_ones_exhaustive(N: DMatrix, r: int, max_cells: int = 16) -> int:
    """Plain maximum over all ``2**(r**d)`` matrices (independent check)."""
    cells = list(itertools.product(range(1, r + 1), repeat=N.d))
    if len(cells) > max_cells:
        raise GuardError(f"{len(cells)} cells exceed the exhaustive limit {max_cells}")
    dims = (r,) * N.d
    best = 0
    for mask in range(1 << len(cells)):
        ones = [c for j, c in enumerate(cells) if mask >> j & 1]
        if len(ones) > best and not matrix_contains(DMatrix(dims, ones), N):
            best = len(ones)
    return best


def count_avoiding_matrices(N: DMatrix, r: int, method: str = "pruned",
                            max_d: int = 3, exhaustive_cells: int = 16,
                            pruned_cells: int = 27) -> int:
    """Number of size-``r`` ``d``-dimensional 0-1 matrices avoiding ``N``.

    ``method="pruned"`` grows matrices cell by cell and never extends one that
    already contains ``N`` (avoidance is inherited by sub-matrices of ones);
    ``method="exhaustive"`` tests all ``2**(r**d)`` matrices.
    """
    if N.d > max_d:
        raise GuardError(f"d={N.d} exceeds the guard d<={max_d}")
    if r < 1:
        raise ValueError("r must be >= 1")
    dims = (r,) * N.d
    cells = list(itertools.product(range(1, r + 1), repeat=N.d))
    ncells = len(cells)
    if any(k > r for k in N.dims):
        return 2 ** ncells
    if method == "exhaustive":
        if ncells > exhaustive_cells:
            raise GuardError(f"{ncells} cells exceed the exhaustive limit {exhaustive_cells}")
        count = 0
        for mask in range(1 << ncells):
            ones = [c for j, c in enumerate(cells) if mask >> j & 1]
            if not matrix_contains(DMatrix(dims, ones), N):
                count += 1
        return count
    if method != "pruned":
        raise ValueError(f"unknown method {method!r}")
    if ncells > pruned_cells:
        raise GuardError(f"{ncells} cells exceed the pruned limit {pruned_cells}")
    chosen: list[tuple] = []

    def dfs(i: int) -> int:
        if i == ncells:
            return 1
        total = dfs(i + 1)
        chosen.append(cells[i])
        if not matrix_contains(DMatrix(dims, chosen), N):
            total += dfs(i + 1)
        chosen.pop()
        return total

    return dfs(0)


def grid_matrix(points: np.ndarray, r: int) -> DMatrix:
    """Size-``r`` matrix marking the half-open boxes of side ``1/r`` that hold a point.

    ``points`` is an ``(n, d)`` array of coordinates in ``[0, 1)`` (a
    :class:`~klazar.montecarlo.PointCloud` is accepted too).
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    pts = np.asarray(getattr(points, "points", points), dtype=np.float64)
    idx = np.clip(np.floor(pts * r).astype(np.int64) + 1, 1, r)
    return DMatrix((r,) * pts.shape[1], (tuple(int(c) for c in row) for row in idx))
