"""Klazar-sense set partition pattern avoidance and its parallel-permutation
and matrix relatives."""

from .core import (MalformedPartitionError, SetPartition, contains, format_partition,
                   is_layered, parse_partition, rank, restrict, standardize)
from .correspond import (PermTuple, Permutation, SplitDecomposition, as_tuple,
                         build_correspondent, parallel_contains, parse_permutation,
                         parse_tuple, split_decompose)
from .enumeration import (count_avoiders, count_avoiders_by_blocks, count_parallel_avoiders,
                          exponent_table, lowerbound_construction, strip_singletons)
from .errors import GuardError
from .matrix import (DMatrix, build_perm_matrix, count_avoiding_matrices, grid_matrix,
                     matrix_contains, max_ones_avoiding)
from .montecarlo import antichain_check, estimate_qk, lemma_check, sample_points, tuple_from_points
from .stats import IntervalSplit, permutability, thickness

__version__ = "0.1.0"

__all__ = [
    "MalformedPartitionError",
    "SetPartition",
    "contains",
    "format_partition",
    "is_layered",
    "parse_partition",
    "rank",
    "restrict",
    "standardize",
    "PermTuple",
    "Permutation",
    "SplitDecomposition",
    "as_tuple",
    "build_correspondent",
    "parallel_contains",
    "parse_permutation",
    "parse_tuple",
    "split_decompose",
    "count_avoiders",
    "count_avoiders_by_blocks",
    "count_parallel_avoiders",
    "exponent_table",
    "lowerbound_construction",
    "strip_singletons",
    "GuardError",
    "DMatrix",
    "build_perm_matrix",
    "count_avoiding_matrices",
    "grid_matrix",
    "matrix_contains",
    "max_ones_avoiding",
    "antichain_check",
    "estimate_qk",
    "lemma_check",
    "sample_points",
    "tuple_from_points",
    "IntervalSplit",
    "permutability",
    "thickness",
]
