"""
Thickness and permutability
===========================

Two numbers attached to a partition: the largest rank of a layered
partition inside it, and the fewest cuts of 1..n into intervals that each
meet every block at most once.
"""

from klazar import parse_partition, permutability, thickness
from klazar.stats import thickness_oracle

p = parse_partition("1267/345")
th, certificate = thickness(p)
pm, split = permutability(p)
print(p, "thickness", th, "using elements", certificate)
print(p, "permutability", pm, "split into", split.intervals)

# The dynamic program and the exhaustive subset scan agree.
for text in ("12/3456/789", "1278/34/56", "1357/2468"):
    q = parse_partition(text)
    print(f"{text:>12}: th={thickness(q)[0]} oracle={thickness_oracle(q)} pm={permutability(q)[0]}")
