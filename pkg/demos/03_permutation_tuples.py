"""
Permutation tuples as partitions
================================

A k-tuple of permutations of 1..n becomes a partition of (k+1)n whose i-th
block collects i and the images of i, each shifted into its own window.
"""

import itertools

from klazar import build_correspondent, parallel_contains, parse_tuple
from klazar.correspond import PermTuple, split_decompose

t = parse_tuple("231|312")
print(t, "->", build_correspondent(t))

# Pairs avoiding (12, 21) are pairs whose inversion sets are nested.
pattern = parse_tuple("12|21")
perms = list(itertools.permutations(range(1, 4)))
avoiders = [PermTuple(pair) for pair in itertools.product(perms, repeat=2)
            if parallel_contains(PermTuple(pair), pattern) is None]
print(len(avoiders), "pairs in S_3 x S_3 avoid", pattern)

# Cutting a partition of an even n in half exposes a matching between halves.
sd = split_decompose(build_correspondent(parse_tuple("3142")))
print("left", sd.left, "right", sd.right, "matching", sd.matching)
