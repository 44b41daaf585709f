"""
Counting avoiders
=================

Exact counts by walking restricted-growth strings and dropping every
prefix that already contains the pattern.
"""

from klazar import count_avoiders, exponent_table, lowerbound_construction, parse_partition
from klazar.enumeration import rows_to_tsv

# Partitions avoiding 13/24 are the non-crossing ones: Catalan numbers.
noncrossing = parse_partition("13/24")
print([count_avoiders(noncrossing, n).count for n in range(1, 11)])

# Growth is reported as log(count) / (n log n).
print(rows_to_tsv(exponent_table(noncrossing, 10)), end="")

# For a pattern of permutability k, tuples over S_{n/k} of length k-1 give
# (n/k)!^(k-1) avoiders.
pattern = parse_partition("1234")
family = list(lowerbound_construction(pattern, 9))
print(len(family), "avoiders of", pattern, "on 9 elements, e.g.", ", ".join(map(str, family[:3])))
