"""
Which mixed-norm estimates are known
====================================

Classify a few exponent tuples and rasterize the (p, 1/t) plane for lines
in three dimensions.
"""

from collections import Counter
from fractions import Fraction

from kplane.admissibility import ExponentQuery, check, sweep

for args in [(3, 1, 2, 4, 4), (3, 2, Fraction(4, 3), 4, 4), (2, 1, 1, 2, 2), (5, 1, 4, 4, 16)]:
    v = check(ExponentQuery(*args))
    print(args, v.status, v.source or ",".join(v.reasons) or "-")

# most of the plane fails scaling: admissible tuples sit on one curve
rows = sweep(3, 1, grid=60)
print(Counter(r["status"] for r in rows))
