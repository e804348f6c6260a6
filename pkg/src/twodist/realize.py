"""Floating-point realization of certified Gram matrices, plus fixtures.

Exactness ends here: a certified Gram matrix is turned into explicit
coordinates with a symmetric eigensolver, and the result is checked against
the exact source to a stated tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotPSD, ToleranceExceeded, UnsupportedOrder
from .matrix import GramMatrix, SymmetricMatrix
from .scalar import QuadScalar, qs_sqrt

__all__ = [
    "Fixture",
    "FrameReport",
    "VectorFrame",
    "conference_etf_gram",
    "frame_operator_check",
    "paper_fixtures",
    "realize",
    "simplex_gram",
    "simplex_vectors",
]

DEFAULT_TOL = 1e-10
BALANCE_TOL = 1e-9


@dataclass(frozen=True)
class VectorFrame:
    """Columns of ``coordinates`` (shape n x m) are the frame vectors."""

    n: int
    m: int
    coordinates: np.ndarray
    tolerance: float = DEFAULT_TOL
    deviation: float = 0.0

    def gram(self) -> np.ndarray:
        return self.coordinates.T @ self.coordinates

    def frame_operator(self) -> np.ndarray:
        return self.coordinates @ self.coordinates.T

    def vector_sum(self) -> np.ndarray:
        return self.coordinates.sum(axis=1)

    def is_balanced(self, tol: float = BALANCE_TOL) -> bool:
        return float(np.linalg.norm(self.vector_sum())) <= tol

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "columns": [[float(x) for x in col] for col in self.coordinates.T],
        }

    @classmethod
    def from_dict(cls, data: dict, tolerance: float = DEFAULT_TOL) -> VectorFrame:
        cols = np.asarray(data["columns"], dtype=float)
        coords = cols.T if cols.size else np.zeros((data["n"], 0))
        if coords.shape != (data["n"], data["m"]):
            raise ValueError(f"columns have shape {coords.shape[::-1]}, expected m x n")
        return cls(data["n"], data["m"], coords, tolerance)


def realize(g: SymmetricMatrix, tol: float = DEFAULT_TOL) -> VectorFrame:
    """Vectors whose Gram matrix is ``g``, one coordinate per nonzero eigenvalue.

    ``g`` must be PSD; unit norms are checked only for :class:`GramMatrix`.
    """
    psd = g.psd
    if not psd.is_psd:
        raise NotPSD("cannot realize an indefinite matrix", psd.failure_index)
    n = psd.rank
    a = g.to_float()
    evals, evecs = np.linalg.eigh(a)
    # eigh sorts ascending; the rank is exact so take the top n
    top = evals[::-1][:n]
    vecs = evecs[:, ::-1][:, :n]
    coords = (vecs * np.sqrt(np.clip(top, 0.0, None))).T
    dev = float(np.max(np.abs(coords.T @ coords - a))) if g.m else 0.0
    if dev > tol:
        raise ToleranceExceeded(f"round-trip deviation {dev:.3e} exceeds {tol:.1e}", dev)
    if isinstance(g, GramMatrix) and g.m:
        norms = np.linalg.norm(coords, axis=0)
        worst = float(np.max(np.abs(norms - 1)))
        if worst > tol:
            raise ToleranceExceeded(f"column norm off by {worst:.3e}", worst)
    return VectorFrame(n, g.m, coords, tol, dev)


@dataclass(frozen=True)
class FrameReport:
    lower: float
    upper: float
    frame_potential: float
    tight_potential: float
    is_tight: bool
    expected: float | None = None
    matches_expected: bool | None = None

    def to_dict(self) -> dict:
        return {
            "lower_bound": self.lower,
            "upper_bound": self.upper,
            "frame_potential": self.frame_potential,
            "tight_potential": self.tight_potential,
            "is_tight": self.is_tight,
            "expected_bound": self.expected,
            "matches_expected": self.matches_expected,
        }


def frame_operator_check(frame: VectorFrame, expected: float | None = None, tol: float | None = None) -> FrameReport:
    """Frame bounds from the extreme eigenvalues of ``X X^T`` and the frame potential.

    ``tight_potential`` is ``(sum of squared norms)^2 / n``, which is ``m^2/n``
    for unit vectors.
    """
    tol = frame.tolerance if tol is None else tol
    s = frame.frame_operator()
    evals = np.linalg.eigvalsh(s)
    lower, upper = float(evals[0]), float(evals[-1])
    g = frame.gram()
    fp = float(np.sum(g * g))
    tight_fp = float(np.trace(g)) ** 2 / frame.n
    scale = max(1.0, abs(upper))
    is_tight = upper - lower <= tol * scale * 100
    match = None
    if expected is not None:
        match = abs(lower - expected) <= tol * 100 * scale and abs(upper - expected) <= tol * 100 * scale
    return FrameReport(lower, upper, fp, tight_fp, is_tight, expected, match)


def simplex_gram(n: int) -> GramMatrix:
    """Gram matrix of the n+1 vertices of the regular simplex in R^n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    off = QuadScalar(Fraction(-1, n))
    one = QuadScalar(1)
    rows = [[one if i == j else off for j in range(n + 1)] for i in range(n + 1)]
    return GramMatrix(rows)


def simplex_vectors(n: int) -> VectorFrame:
    """Explicit simplex: row r has ``-c_r`` in its first r columns and ``r c_r`` next.

    ``c_r = sqrt((n+1) / (n r (r+1)))``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    coords = np.zeros((n, n + 1))
    for r in range(1, n + 1):
        c = math.sqrt((n + 1) / (n * r * (r + 1)))
        coords[r - 1, :r] = -c
        coords[r - 1, r] = r * c
    return VectorFrame(n, n + 1, coords)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, math.isqrt(p) + 1))


def conference_etf_gram(order: int) -> GramMatrix:
    """ETF Gram ``I + C / sqrt(order - 1)`` from a Paley conference matrix.

    Supported orders are ``q + 1`` with q a prime congruent to 1 mod 4.
    """
    q = order - 1
    if not (_is_prime(q) and q % 4 == 1):
        raise UnsupportedOrder(f"no symmetric Paley conference matrix of order {order} here")
    squares = {(x * x) % q for x in range(1, q)}

    def chi(x):
        x %= q
        return 0 if x == 0 else (1 if x in squares else -1)

    c = [[0] * order for _ in range(order)]
    for j in range(1, order):
        c[0][j] = c[j][0] = 1
    for i in range(1, order):
        for j in range(1, order):
            c[i][j] = chi(i - j)
    w = 1 / qs_sqrt(q)
    vals = {1: w, -1: -w}
    rows = [[QuadScalar(1) if i == j else vals[c[i][j]] for j in range(order)] for i in range(order)]
    g = GramMatrix(rows)
    if g.rank != order // 2 or not g.square_equals(2):
        raise AssertionError("conference construction did not give a tight ETF")
    return g


@dataclass(frozen=True)
class Fixture:
    gram: GramMatrix
    vectors: np.ndarray | None = None
    note: str = ""


def _gram(rows) -> GramMatrix:
    return GramMatrix([[QuadScalar(Fraction(x)) for x in row] for row in rows])


_EXAMPLE_NEW = """
1 1/6 1/6 1/6 1/6 1/6 1/6 -2/3 -2/3 -2/3
1/6 1 1/6 1/6 1/6 -2/3 -2/3 1/6 1/6 -2/3
1/6 1/6 1 1/6 -2/3 1/6 -2/3 1/6 -2/3 1/6
1/6 1/6 1/6 1 -2/3 -2/3 1/6 -2/3 1/6 1/6
1/6 1/6 -2/3 -2/3 1 1/6 1/6 1/6 1/6 -2/3
1/6 -2/3 1/6 -2/3 1/6 1 1/6 1/6 -2/3 1/6
1/6 -2/3 -2/3 1/6 1/6 1/6 1 -2/3 1/6 1/6
-2/3 1/6 1/6 -2/3 1/6 1/6 -2/3 1 1/6 1/6
-2/3 1/6 -2/3 1/6 1/6 -2/3 1/6 1/6 1 1/6
-2/3 -2/3 1/6 1/6 -2/3 1/6 1/6 1/6 1/6 1
"""

_EIGHT_VECTORS = """
1 -1/3 -1/3 -1/3 1/3 -1/3 1/3 -1/3
-1/3 1 -1/3 -1/3 -1/3 1/3 -1/3 1/3
-1/3 -1/3 1 -1/3 1/3 -1/3 1/3 -1/3
-1/3 -1/3 -1/3 1 -1/3 1/3 -1/3 1/3
1/3 -1/3 1/3 -1/3 1 -1/3 -1/3 -1/3
-1/3 1/3 -1/3 1/3 -1/3 1 -1/3 -1/3
1/3 -1/3 1/3 -1/3 -1/3 -1/3 1 -1/3
-1/3 1/3 -1/3 1/3 -1/3 -1/3 -1/3 1
"""


def _table(text: str):
    return [line.split() for line in text.strip().splitlines()]


def _eight_vector_coords() -> np.ndarray:
    a, b = math.sqrt(6) / 3, math.sqrt(3) / 3
    x = np.zeros((5, 8))
    x[0, 0], x[0, 2] = a, -a
    x[1] = [-b, b] * 4
    x[2, 1], x[2, 3] = a, -a
    x[3, 4], x[3, 6] = a, -a
    x[4, 5], x[4, 7] = a, -a
    return x


def _six_vector_coords() -> np.ndarray:
    s21, s7, s14, s210 = (math.sqrt(k) for k in (21, 7, 14, 210))
    return np.array([
        [-s21 / 7, -s21 / 7, -s21 / 7, s21 / 7, s21 / 7, s21 / 7],
        [4 * s7 / 21, -2 * s7 / 21, -2 * s7 / 21, 4 * s7 / 21, -2 * s7 / 21, -2 * s7 / 21],
        [-5 * s14 / 42, s14 / 6, -s14 / 21, -5 * s14 / 42, s14 / 6, -s14 / 21],
        [-s210 / 42, -s210 / 42, s210 / 21, -s210 / 42, -s210 / 42, s210 / 21],
    ])


def _four_vector_coords() -> np.ndarray:
    r = math.sqrt(3) / 4
    return np.array([
        [r, 0, -r, 0],
        [-0.75, 0.75, -0.75, 0.75],
        [0, r, 0, -r],
        [0.5, 0.5, 0.5, 0.5],
    ])


def _ex1(a2: Fraction, b2: Fraction):
    a, b = math.sqrt(a2), math.sqrt(b2)
    coords = np.array([[a, 0, -a, 0], [-b, b, -b, b], [0, a, 0, -a]])
    p, q = b2 - a2, -b2
    rows = [
        [1, q, p, q],
        [q, 1, q, p],
        [p, q, 1, q],
        [q, p, q, 1],
    ]
    return _gram(rows), coords


def paper_fixtures() -> dict[str, Fixture]:
    """Explicit matrices used throughout the tests and demos."""
    example_new = _gram(_table(_EXAMPLE_NEW))
    # rows 2..7 of example_new projected off x_1 and renormalised
    keep = list(range(1, 7))
    six = example_new.submatrix(keep).map_offdiagonal(
        lambda x: Fraction(36, 35) * (x - Fraction(1, 36)), cls=GramMatrix
    )
    four = _gram([
        [1, "-5/16", "5/8", "-5/16"],
        ["-5/16", 1, "-5/16", "5/8"],
        ["5/8", "-5/16", 1, "-5/16"],
        ["-5/16", "5/8", "-5/16", 1],
    ])
    ex1_gram, ex1_coords = _ex1(Fraction(3, 4), Fraction(1, 4))
    return {
        "example_new": Fixture(example_new, None, "balanced tight two-distance frame, 10 vectors in R^4"),
        "r5_eight_vectors": Fixture(
            _gram(_table(_EIGHT_VECTORS)), _eight_vector_coords(),
            "regular at +-1/3 with an irregular neighbour part",
        ),
        "r3_six_vectors": Fixture(six, _six_vector_coords(), "balanced, maximal, not tight"),
        "r4_four_vectors": Fixture(four, _four_vector_coords(), "Grammian constant m/n, not tight"),
        "ex1": Fixture(ex1_gram, ex1_coords, "a^2 = 3/4, b^2 = 1/4: balanced, not tight"),
    }
