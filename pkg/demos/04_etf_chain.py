#!/usr/bin/env python3
"""From a 6-vector ETF in R^3 down to the pentagon and back.

Every step stays inside Q(sqrt 5).
"""

from fractions import Fraction

from twodist import (
    analyze,
    complement_transform,
    conference_etf_gram,
    etf_neighbor_subset,
    etf_projection,
)

etf = conference_etf_gram(6)  # Paley conference matrix, q = 5
c = analyze(etf)
angles = ", ".join(str(v) for v in sorted(c.values))
print(f"ETF of 6 lines in R^3: angles {angles}, tight={c.is_tight}, bound {c.tight_bound}")

# drop one vector after sign-normalizing against it
sub, profile = etf_neighbor_subset(etf)
print(f"neighbor subset: {sub.m} vectors, multiplicities {profile.k_alpha}, {profile.k_beta}")

# project the others onto the complement of one vector
pentagon = etf_projection(etf)
pc = analyze(pentagon)
print("projection:", pentagon.m, "vectors in R^%d" % pc.rank)
for v in sorted(pc.values):
    print(f"  angle {v}  ~ {float(v):+.6f}")
print("  tight:", pc.is_tight, " bound", pc.tight_bound)

# m = 2n + 1, so the complement transform gives another tight frame
res = complement_transform(pentagon)
print()
print("complement transform with gamma =", res.gamma, " tight:", res.is_tight_result)
print("first row before:", [str(x) for x in pentagon.entries[0]])
print("first row after: ", [str(x) for x in res.matrix.entries[0]])
assert res.gamma == Fraction(-1, 2)
