#!/usr/bin/env python3
# Coordinates from an exact Gram matrix, and a float check of the frame operator.
# Run: python demos/06_realize_frames.py

import numpy as np

from twodist import (
    analyze,
    conference_etf_gram,
    frame_operator_check,
    paper_fixtures,
    realize,
    simplex_vectors,
)

np.set_printoptions(precision=4, suppress=True)

g = paper_fixtures()["example_new"].gram
frame = realize(g)
print(f"{frame.m} vectors in R^{frame.n}, max |X^T X - G| = {frame.deviation:.2e}")
print("frame operator X X^T:")
print(frame.frame_operator())
report = frame_operator_check(frame, expected=float(analyze(g).tight_bound))
print(f"bounds [{report.lower:.12f}, {report.upper:.12f}]  tight={report.is_tight}")
print("vector sum norm:", np.linalg.norm(frame.vector_sum()))

# the regular simplex in R^4, written out directly
print()
print("simplex in R^4 (columns):")
print(simplex_vectors(4).coordinates)

# an ETF with irrational entries realizes just as well
etf = realize(conference_etf_gram(14))
print()
print(f"ETF from q = 13: {etf.m} vectors in R^{etf.n}, deviation {etf.deviation:.1e}")
G = etf.gram()
off = np.abs(G[~np.eye(etf.m, dtype=bool)])
print("all |inner products| equal:", np.allclose(off, off[0]), f"({off[0]:.6f})")
