"""
Random orders
=============

Uniform points in the unit cube, compared coordinate-wise, form a random
partial order.  Reading coordinates after sorting by the first one gives a
uniform tuple of permutations.
"""

import math

from klazar import estimate_qk, parse_tuple, sample_points, tuple_from_points
from klazar.enumeration import count_parallel_avoiders
from klazar.montecarlo import antichain_check, lemma_harness

cloud = sample_points(5, 2, seed=1)
print(cloud.points.round(3))
print("tuple:", tuple_from_points(cloud), "antichain:", antichain_check(cloud))

# Chance that n random points in the cube form an antichain.
for n in range(2, 6):
    est = estimate_qk(n, 2, 5000, seed=n)
    exact = count_parallel_avoiders(parse_tuple("12|12"), n).count / math.factorial(n) ** 2
    print(f"n={n}: {est.estimate:.4f} +- {est.stderr:.4f}   exact {exact:.4f}")

# Avoidance by the tuple forces avoidance by the coarse grid matrix.
tally = lemma_harness([(6, 2, 2), (6, 2, 4), (8, 2, 8)], 300, seed=3)
print({v.value: c for v, c in tally.items()})
