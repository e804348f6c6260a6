#!/usr/bin/env python3
# Quasi-symmetric designs -> frames -> strongly regular block graphs.
# Run: python demos/03_design_constructions.py

from fractions import Fraction

from twodist import (
    analyze,
    detect_intersection_numbers,
    octad_design_22,
    pairs_design,
    project_to_balanced,
    qsd_to_frame_basis,
    qsd_to_frame_simplex,
    srg_params,
)
from twodist.gram import row_structure

print("pairs designs: blocks are the 2-subsets of {1..n}")
print(f"{'n':>3} {'b':>4} {'s':>4} {'mu1':>4} {'mu2':>4}  simplex angles        tight bound")
for n in range(4, 10):
    d = pairs_design(n)
    q = detect_intersection_numbers(d)
    srg = srg_params(q)
    simplex = qsd_to_frame_simplex(q, d)
    # the simplex construction is the balanced projection of the basis one
    assert project_to_balanced(qsd_to_frame_basis(q, d)) == simplex
    c = analyze(simplex)
    angles = ", ".join(str(v) for v in sorted(c.values))
    print(f"{n:>3} {q.b:>4} {srg.s:>4} {srg.mu1:>4} {srg.mu2:>4}  {angles:<20}  {c.tight_bound}")

# a larger design: octads of the Golay code through one point, minus a second
d = octad_design_22()
q = detect_intersection_numbers(d)
print()
print("22-point design:", q.astuple())
srg = srg_params(q)
print(f"block graph: {srg.n_vertices} vertices, degree {srg.s}, mu = {srg.mu1}, {srg.mu2}")

basis = qsd_to_frame_basis(q, d)
rows = row_structure(basis)
y_angle = Fraction(q.y, q.k)
print(f"basis frame: each row meets angle {y_angle} exactly {rows.row_counts[0][y_angle]} times")

simplex = qsd_to_frame_simplex(q, d)
angles = ", ".join(str(v) for v in sorted(row_structure(simplex).values))
print(f"simplex frame angles: {angles}, rank {simplex.rank}")
