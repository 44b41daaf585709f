"""
Containment of set partitions
=============================

A partition contains another when some of its elements, taken in order,
split into blocks the same way the smaller one does.
"""

from klazar import contains, parse_partition, restrict

# Text form: blocks separated by "/", elements written as digits.
# A missing element (4 here) is read as a singleton block.
host = parse_partition("136/5/27")
print("host:", host)

# Elements 2, 3, 6, 7 split as {2,7} and {3,6}, which looks like 14/23.
print("restricted to 2,3,6,7:", restrict(host, [2, 3, 6, 7]))

for pattern in ("14/23", "1/234", "13/24"):
    witness = contains(host, parse_partition(pattern))
    print(f"contains {pattern}?", "no" if witness is None else f"yes, at {witness}")
