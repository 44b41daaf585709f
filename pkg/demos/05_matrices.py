"""
Forbidden submatrices
=====================

Permutation tuples become (k+1)-dimensional permutation matrices; small
extremal and counting questions about matrices avoiding them are solved
exactly.
"""

from klazar import build_perm_matrix, matrix_contains, parse_tuple
from klazar.matrix import count_avoiding_matrices, max_ones_avoiding

identity = build_perm_matrix(parse_tuple("12"))
print("ones of the 2x2 identity:", identity.ones)
print(build_perm_matrix(parse_tuple("231|312")).to_array())

for r in range(1, 5):
    print(f"r={r}: at most {max_ones_avoiding(identity, r)} ones avoid it,",
          f"{count_avoiding_matrices(identity, r)} matrices avoid it")

host = build_perm_matrix(parse_tuple("2413|3142"))
print("host contains (12|21)?", matrix_contains(host, build_perm_matrix(parse_tuple("12|21"))))
