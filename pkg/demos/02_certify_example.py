#!/usr/bin/env python3
"""Certify a two-distance tight frame and look at what the certificate says.

The ten vectors come from the 2-subsets of {1..5}: project the sum of
a simplex in R^4 over each pair and normalize.  The certificate is exact:
rank by fraction-free elimination, tightness by G^2 = (m/n) G.
"""

from twodist import analyze, naimark, paper_fixtures

fx = paper_fixtures()
g = fx["example_new"].gram

print("Gram matrix (10 x 10):")
for row in g.to_strings():
    print("  " + " ".join(f"{x:>5}" for x in row))

c = analyze(g)
p = c.profile
print()
print(f"rank {c.rank}, two values {p.alpha} (x{p.k_alpha}) and {p.beta} (x{p.k_beta}) per row")
print(f"regular={c.is_regular} balanced={c.is_balanced} tight={c.is_tight} bound={c.tight_bound}")
print(f"frame potential {c.frame_potential} = m^2/n = {g.m ** 2}/{c.rank}")
for note in c.classification_notes:
    print("  note:", note)

# the Naimark complement lives in R^(m-n) and is again two-distance
nm = naimark(g)
cn = analyze(nm)
print()
values = ", ".join(str(v) for v in sorted(cn.values))
print(f"Naimark complement: rank {cn.rank}, values {values}, tight={cn.is_tight}")
assert naimark(nm) == g
print("complement of the complement gives the original matrix back")

# a frame with the same angle pattern that is balanced but not tight
r3 = fx["r3_six_vectors"].gram
c3 = analyze(r3)
print()
print(f"six vectors in R^3: balanced={c3.is_balanced} tight={c3.is_tight}")
print(f"  frame potential {c3.frame_potential} vs m^2/n = {r3.m ** 2 // c3.rank}")
