"""Exact symmetric matrices over a quadratic field.

Entries are :class:`~twodist.scalar.QuadScalar` values sharing one radicand.
Heavy lifting (products, elimination) runs on an integer image
``(A + B*sqrt(d)) / den`` held in numpy object arrays, so Python's big
integers do the arithmetic without per-entry Fraction overhead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import (
    InvariantViolation,
    MixedRadicands,
    NotPSD,
    NotSquare,
    NotSymmetric,
    NotUnitDiagonal,
)
from .scalar import QuadScalar, as_scalar

__all__ = ["GramMatrix", "IntForm", "PSDResult", "SymmetricMatrix", "psd_rank"]

ONE = QuadScalar(1)


@dataclass(frozen=True)
class IntForm:
    """Integer image of an exact matrix: entries are ``(a + b*sqrt(d)) / den``."""

    a: np.ndarray
    b: np.ndarray | None
    den: int
    d: int


@dataclass(frozen=True)
class PSDResult:
    rank: int
    is_psd: bool
    pivot_signs: tuple[int, ...]
    failure_index: tuple[int, int] | None = None


def _int_sign(a: int, b: int, d: int) -> int:
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if not sb or sa == sb:
        return sa or sb
    if not sa:
        return sb
    return sa if a * a > b * b * d else sb


def _exact_div(a, b, pa: int, pb: int, d: int):
    """Divide the Z[sqrt d] array ``a + b*sqrt(d)`` by ``pa + pb*sqrt(d)``."""
    if not pb:
        if pa == 1:
            return a, b
        na, nb, norm = a, b, pa
    else:
        norm = pa * pa - d * pb * pb
        na = a * pa - d * b * pb
        nb = b * pa - a * pb
    qa = na // norm
    if (qa * norm != na).any():
        raise InvariantViolation("inexact division in elimination")
    if nb is None:
        return qa, None
    qb = nb // norm
    if (qb * norm != nb).any():
        raise InvariantViolation("inexact division in elimination")
    return qa, qb


def _bareiss_step(sa, sb, d, i, j, prev):
    """One fraction-free elimination step pivoting on entry (i, j)."""
    pa = sa[i, j]
    pb = sb[i, j] if sb is not None else 0
    rows = [k for k in range(sa.shape[0]) if k != i]
    cols = [k for k in range(sa.shape[1]) if k != j]
    ca = sa[rows, j][:, None]
    ra_ = sa[i, cols][None, :]
    block_a = sa[np.ix_(rows, cols)]
    if sb is None:
        na = pa * block_a - ca * ra_
        nb = None
    else:
        cb = sb[rows, j][:, None]
        rb_ = sb[i, cols][None, :]
        block_b = sb[np.ix_(rows, cols)]
        na = pa * block_a + d * pb * block_b - (ca * ra_ + d * cb * rb_)
        nb = pa * block_b + pb * block_a - (ca * rb_ + cb * ra_)
    qa, qb = _exact_div(na, nb, prev[0], prev[1], d)
    return qa, qb, (pa, pb), rows


def _general_rank(sa, sb, d, prev) -> int:
    rank = 0
    while sa.size:
        nz = np.argwhere((sa != 0) | (sb != 0) if sb is not None else (sa != 0))
        if not len(nz):
            break
        i, j = (int(v) for v in nz[0])
        sa, sb, prev, _ = _bareiss_step(sa, sb, d, i, j, prev)
        rank += 1
    return rank


def _eliminate(form: IntForm) -> PSDResult:
    """Symmetric fraction-free elimination with diagonal pivoting.

    After each step the residual block is ``prev`` times the Schur complement,
    so LDL^T pivot signs are ``sign(p_k) * sign(p_{k-1})``.
    """
    sa = form.a.copy()
    sb = form.b.copy() if form.b is not None else None
    d = form.d
    alive = list(range(sa.shape[0]))
    prev = (1, 0)
    prev_sign = 1
    signs: list[int] = []
    is_psd = True
    failure = None
    while alive:
        diag = [
            _int_sign(int(sa[k, k]), int(sb[k, k]) if sb is not None else 0, d)
            for k in range(len(alive))
        ]
        negative = [k for k, s in enumerate(diag) if s < 0]
        if negative and is_psd:
            is_psd = False
            failure = (alive[negative[0]], alive[negative[0]])
        positive = [k for k, s in enumerate(diag) if s > 0]
        if positive:
            q = positive[0]
        elif negative:
            q = negative[0]
        else:
            nz = np.argwhere((sa != 0) | (sb != 0) if sb is not None else (sa != 0))
            if len(nz):
                # zero diagonal with a nonzero residual row: indefinite
                if is_psd:
                    is_psd = False
                    i, j = (int(v) for v in nz[0])
                    failure = (alive[i], alive[j])
                extra = _general_rank(sa, sb, d, prev)
                return PSDResult(len(signs) + extra, False, tuple(signs), failure)
            break
        sign = diag[q] * prev_sign
        signs.append(sign)
        sa, sb, prev, keep = _bareiss_step(sa, sb, d, q, q, prev)
        prev_sign = diag[q]
        alive = [alive[k] for k in keep]
    return PSDResult(len(signs), is_psd, tuple(signs), failure)


class SymmetricMatrix:
    """Square symmetric matrix with exact entries in one field Q(sqrt(d))."""

    def __init__(self, rows, *, check: bool = True):
        entries = tuple(tuple(as_scalar(x) for x in row) for row in rows)
        m = len(entries)
        for i, row in enumerate(entries):
            if len(row) != m:
                raise NotSquare(f"row {i} has {len(row)} entries, expected {m}", (i,))
        d = 0
        for row in entries:
            for x in row:
                if x.d and x.d != d:
                    if d:
                        raise MixedRadicands(f"entries use sqrt({d}) and sqrt({x.d})")
                    d = x.d
        self._entries = entries
        self._d = d
        if check:
            for i in range(m):
                for j in range(i + 1, m):
                    if entries[i][j] != entries[j][i]:
                        raise NotSymmetric(
                            f"G[{i}][{j}] = {entries[i][j]} but G[{j}][{i}] = {entries[j][i]}",
                            (i, j),
                        )

    @classmethod
    def from_int_form(cls, form: IntForm, **kwargs):
        cache: dict = {}
        rows = []
        den, d = form.den, form.d
        for i in range(form.a.shape[0]):
            row = []
            for j in range(form.a.shape[1]):
                key = (form.a[i, j], form.b[i, j] if form.b is not None else 0)
                x = cache.get(key)
                if x is None:
                    x = QuadScalar._raw(Fraction(key[0], den), Fraction(key[1], den), d)
                    cache[key] = x
                row.append(x)
            rows.append(row)
        return cls(rows, **kwargs)

    @property
    def m(self) -> int:
        return len(self._entries)

    @property
    def d(self) -> int:
        return self._d

    @property
    def entries(self) -> tuple[tuple[QuadScalar, ...], ...]:
        return self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __getitem__(self, index):
        i, j = index
        return self._entries[i][j]

    def __iter__(self):
        return iter(self._entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymmetricMatrix):
            return NotImplemented
        return self._entries == other._entries

    __hash__ = None

    def __repr__(self) -> str:
        return f"{type(self).__name__}(m={self.m}, d={self.d})"

    @cached_property
    def int_form(self) -> IntForm:
        values = {x for row in self._entries for x in row}
        den = 1
        for x in values:
            den = math.lcm(den, x.a.denominator, x.b.denominator)
        lookup = {
            x: (x.a.numerator * (den // x.a.denominator), x.b.numerator * (den // x.b.denominator))
            for x in values
        }
        m = self.m
        a = np.empty((m, m), dtype=object)
        b = np.empty((m, m), dtype=object) if self._d else None
        for i, row in enumerate(self._entries):
            for j, x in enumerate(row):
                pa, pb = lookup[x]
                a[i, j] = pa
                if b is not None:
                    b[i, j] = pb
        return IntForm(a, b, den, self._d)

    @cached_property
    def psd(self) -> PSDResult:
        return _eliminate(self.int_form)

    @property
    def rank(self) -> int:
        return self.psd.rank

    def offdiagonal_values(self) -> set[QuadScalar]:
        return {
            x for i, row in enumerate(self._entries) for j, x in enumerate(row) if i != j
        }

    def row_sums(self) -> list[QuadScalar]:
        f = self.int_form
        sa = f.a.sum(axis=1)
        sb = f.b.sum(axis=1) if f.b is not None else [0] * self.m
        return [
            QuadScalar._raw(Fraction(int(x), f.den), Fraction(int(y), f.den), f.d)
            for x, y in zip(sa, sb)
        ]

    def frame_potential(self) -> QuadScalar:
        """Sum of squared entries."""
        f = self.int_form
        sq_a = int((f.a * f.a).sum())
        den2 = f.den * f.den
        if f.b is None:
            return QuadScalar(Fraction(sq_a, den2))
        sq_b = int((f.b * f.b).sum())
        cross = int((f.a * f.b).sum())
        return QuadScalar._raw(Fraction(sq_a + f.d * sq_b, den2), Fraction(2 * cross, den2), f.d)

    def square_equals(self, scale) -> bool:
        """Exact test of ``G @ G == scale * G`` for a rational ``scale``."""
        scale = Fraction(scale)
        f = self.int_form
        p, q = scale.numerator, scale.denominator
        aa = f.a.dot(f.a)
        if f.b is None:
            return bool(np.array_equal(q * aa, p * f.den * f.a))
        ab = f.a.dot(f.b)
        rat = aa + f.d * f.b.dot(f.b)
        irr = ab + ab.T
        return bool(
            np.array_equal(q * rat, p * f.den * f.a)
            and np.array_equal(q * irr, p * f.den * f.b)
        )

    def square(self) -> SymmetricMatrix:
        f = self.int_form
        aa = f.a.dot(f.a)
        den = f.den * f.den
        if f.b is None:
            return SymmetricMatrix.from_int_form(IntForm(aa, None, den, 0), check=False)
        ab = f.a.dot(f.b)
        form = IntForm(aa + f.d * f.b.dot(f.b), ab + ab.T, den, f.d)
        return SymmetricMatrix.from_int_form(form, check=False)

    def congruence(self, n: np.ndarray) -> SymmetricMatrix:
        """Return ``n.T @ self @ n`` for an integer matrix ``n``."""
        n = np.asarray(n).astype(object)
        f = self.int_form
        a = n.T.dot(f.a).dot(n)
        b = n.T.dot(f.b).dot(n) if f.b is not None else None
        return SymmetricMatrix.from_int_form(IntForm(a, b, f.den, f.d), check=False)

    def submatrix(self, indices) -> SymmetricMatrix:
        indices = list(indices)
        rows = [[self._entries[i][j] for j in indices] for i in indices]
        return type(self)._unchecked(rows)

    @classmethod
    def _unchecked(cls, rows):
        return SymmetricMatrix(rows, check=False)

    def map_offdiagonal(self, fn, diagonal=ONE, cls=None, **kwargs):
        """Apply ``fn`` to every off-diagonal entry, memoised per distinct value."""
        cache: dict = {}
        rows = []
        for i, row in enumerate(self._entries):
            new = []
            for j, x in enumerate(row):
                if i == j:
                    new.append(diagonal if diagonal is not None else fn(x))
                    continue
                y = cache.get(x)
                if y is None:
                    y = as_scalar(fn(x))
                    cache[x] = y
                new.append(y)
            rows.append(new)
        return (cls or SymmetricMatrix)(rows, **kwargs)

    def to_float(self) -> np.ndarray:
        cache: dict = {}
        out = np.empty((self.m, self.m))
        for i, row in enumerate(self._entries):
            for j, x in enumerate(row):
                v = cache.get(x)
                if v is None:
                    v = cache[x] = float(x)
                out[i, j] = v
        return out

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self._entries]


class GramMatrix(SymmetricMatrix):
    """Gram matrix of unit vectors: symmetric, unit diagonal, PSD.

    All three properties are verified exactly on construction.
    """

    def __init__(self, rows, *, check: bool = True):
        if isinstance(rows, SymmetricMatrix):
            rows = rows.entries
        super().__init__(rows, check=check)
        if check:
            for i in range(self.m):
                if self._entries[i][i] != ONE:
                    raise NotUnitDiagonal(f"G[{i}][{i}] = {self._entries[i][i]}", (i, i))
            res = self.psd
            if not res.is_psd:
                raise NotPSD("matrix is not positive semidefinite", res.failure_index)

    @classmethod
    def _unchecked(cls, rows):
        return GramMatrix(rows, check=False)

    def submatrix(self, indices) -> GramMatrix:
        # principal submatrices of a PSD matrix stay PSD
        indices = list(indices)
        return GramMatrix._unchecked(
            [[self._entries[i][j] for j in indices] for i in indices]
        )


def psd_rank(g: SymmetricMatrix) -> PSDResult:
    """Exact rank and PSD test by symmetric elimination over Q(sqrt d)."""
    if not isinstance(g, SymmetricMatrix):
        g = SymmetricMatrix(g)
    return g.psd
