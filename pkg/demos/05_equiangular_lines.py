#!/usr/bin/env python3
# Equiangular lines from two-distance sets, ending with 176 lines in R^22.
# Run: python demos/05_equiangular_lines.py   (takes about a second)

import time

from twodist import (
    QSDParams,
    design_nonexistence,
    detect_intersection_numbers,
    equiangular_lift,
    equiangular_pipeline,
    equiangular_translate,
    octad_design_22,
    paper_fixtures,
    psd_rank,
    qsd_to_frame_basis,
)
from twodist.gram import row_structure

# lifting: add one dimension so that alpha and beta become +-gamma
g = paper_fixtures()["example_new"].gram
lifted, gamma = equiangular_lift(g)
print(f"lift: {lifted.m} lines in R^{psd_rank(lifted).rank} at angle {gamma}")

# translating along the vector sum keeps the span
start = time.perf_counter()
d = octad_design_22()
q = detect_intersection_numbers(d)
basis = qsd_to_frame_basis(q, d)
out, gamma, t = equiangular_translate(basis)
vals = sorted(row_structure(out).values)
print(f"translate: t = {t}  (~{float(t):.12f})")
print(f"  {out.m} lines in R^{out.rank}, inner products {vals[0]} and {vals[1]}")
print(f"  {time.perf_counter() - start:.2f} s")

# the same conclusion from parameters alone, plus bounds on lines
print()
for params in [(22, 176, 56, 7, 16, 1, 3), (9, 36, 20, 5, 10, 1, 3),
               (19, 76, 36, 9, 16, 3, 5), (42, 287, 123, 18, 51, 6, 9)]:
    p = QSDParams(*params)
    res = equiangular_pipeline(p)
    certs = design_nonexistence(p)
    verdict = "cannot exist" if certs else "no obstruction"
    print(f"{params}: claim {res.lines_claim}, {verdict}")
    for cert in certs:
        w = cert.witness
        print(f"    {cert.reason}: {w.get('lines')} lines > bound {w.get('upper')}")
