#!/usr/bin/env python3
# Exact scalars in Q(sqrt d): the number type every Gram entry lives in.
# Run: python demos/01_exact_scalars.py

from fractions import Fraction

from twodist import QuadScalar, qs_format, qs_parse, qs_sign, qs_sqrt

# rationals are the d = 0 case
half = QuadScalar(Fraction(1, 2))
print("1/2 as a scalar:", half, " d =", half.d)

# square roots are reduced to a squarefree radicand
r = qs_sqrt(Fraction(8, 3))
print("sqrt(8/3) =", qs_format(r), " radicand", r.d)
assert r * r == Fraction(8, 3)

# the golden-ratio pair that shows up in the regular pentagon
root5 = qs_sqrt(5)
a, b = (root5 - 1) / 4, -(root5 + 1) / 4
print("pentagon angles:", a, "and", b)
print("  a + b =", a + b, "  a * b =", a * b)

# sign is decided exactly, no floats involved
tiny = QuadScalar(Fraction(-1, 176)) + qs_sqrt(5) / 1232
print("t = -1/176 + sqrt(5)/1232 has sign", qs_sign(tiny), "(float:", float(tiny), ")")

# text round trip, the format used in every JSON file
text = qs_format(tiny)
print("formatted:", text)
assert qs_parse(text) == tiny

# mixing radicands is refused rather than silently approximated
try:
    qs_sqrt(2) + qs_sqrt(3)
except Exception as exc:  # MixedRadicands
    print("sqrt 2 + sqrt 3 ->", type(exc).__name__)
