"""Gram-level transforms of regular two-distance sets.

Every vector-level construction (projections, translations by the vector
sum, lifts into one more dimension) is rewritten as an entrywise map on the
Gram matrix, so results stay exact and never depend on coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import warnings

import numpy as np

from .errors import (
    AlreadyBalanced,
    AngleSumNotNegative,
    BadGrammianConstant,
    BalancedInput,
    ConditionViolated,
    DegenerateDenominator,
    FullRank,
    InvariantViolation,
    MixedRadicands,
    NotETF,
    NotPSD,
    NotRegular,
    NotTight,
    NotTwoDistance,
    SizeMismatch,
    TargetOutOfRange,
    VectorsCollide,
)
from .gram import TwoDistanceProfile, row_structure, two_distance_profile
from .matrix import GramMatrix, SymmetricMatrix
from .scalar import QuadScalar, as_scalar, qs_sign, qs_sqrt

__all__ = [
    "ComplementResult",
    "UnnormalizedGram",
    "bibd_sum_gram",
    "complement_transform",
    "equiangular_lift",
    "equiangular_translate",
    "etf_neighbor_subset",
    "etf_projection",
    "lift",
    "lift_to_angle",
    "lift_to_constant",
    "naimark",
    "project_to_balanced",
    "translate",
    "translation_roots",
]


class UnnormalizedGram(SymmetricMatrix):
    """Symmetric PSD Gram matrix whose diagonal is not constrained to 1."""

    def __init__(self, rows, *, check: bool = True):
        if isinstance(rows, SymmetricMatrix):
            rows = rows.entries
        super().__init__(rows, check=check)
        if check and not self.psd.is_psd:
            raise NotPSD("matrix is not positive semidefinite", self.psd.failure_index)


def _regular_profile(g: GramMatrix) -> TwoDistanceProfile:
    rs = row_structure(g)
    if len(rs.values) != 2:
        raise NotTwoDistance(f"expected two off-diagonal values, found {len(rs.values)}")
    profile = two_distance_profile(g)
    if profile is None:
        raise NotRegular("angle multiplicities vary between rows")
    return profile


def project_to_balanced(g: GramMatrix) -> GramMatrix:
    """Project away the vector sum and renormalise.

    Entries become ``m/(m-c) * (G_ij - c/m)``; the result is balanced, keeps
    the multiplicities and lives in one dimension less.
    """
    profile = _regular_profile(g)
    c = profile.grammian_constant
    m = g.m
    if not c:
        raise AlreadyBalanced("Grammian constant is already 0")
    scale = m / (m - c)
    shift = c / m

    def fn(x):
        y = scale * (x - shift)
        if y == 1:
            raise VectorsCollide(f"inner product {x} maps to 1")
        return y

    out = g.map_offdiagonal(fn, cls=GramMatrix)
    if out.rank != g.rank - 1:
        warnings.warn(
            f"projection changed rank from {g.rank} to {out.rank}, expected a drop of one",
            stacklevel=2,
        )
    return out


def naimark(g: GramMatrix) -> GramMatrix:
    """Normalised Naimark complement ``(m I - n G) / (m - n)`` of a tight frame."""
    m, n = g.m, g.rank
    if m == n:
        raise FullRank("a full-rank frame has an empty complement")
    if not g.square_equals(Fraction(m, n)):
        raise NotTight("G^2 != (m/n) G")
    factor = Fraction(-n, m - n)
    return g.map_offdiagonal(lambda x: factor * x, cls=GramMatrix)


@dataclass(frozen=True)
class ComplementResult:
    matrix: SymmetricMatrix
    gamma: QuadScalar
    is_tight_result: bool

    def __iter__(self):
        return iter((self.matrix, self.gamma, self.is_tight_result))

    def as_gram(self) -> GramMatrix:
        return GramMatrix(self.matrix)


def complement_transform(g: GramMatrix) -> ComplementResult:
    """``G' = (2 - gamma) I + gamma J - G`` for a regular two-distance tight frame.

    The candidate is returned unchecked: it is a Gram matrix of a tight frame
    only when m = 2n+1 (balanced input) or m = 2n-1 (Grammian constant m/n).
    """
    profile = _regular_profile(g)
    m, n = g.m, g.rank
    ratio = Fraction(m, n)
    if not g.square_equals(ratio):
        raise NotTight("G^2 != (m/n) G")
    c = profile.grammian_constant
    if not c:
        gamma = QuadScalar(Fraction(-2, m - 1))
        target_sum = Fraction(0)
        tight = m == 2 * n + 1
    elif c == ratio:
        gamma = QuadScalar(Fraction(2 * (m - n), n * (m - 1)))
        target_sum = ratio
        tight = m == 2 * n - 1
    else:
        raise BadGrammianConstant(f"Grammian constant {c} is neither 0 nor m/n")
    out = g.map_offdiagonal(lambda x: gamma - x)
    ka, kb = profile.k_alpha, profile.k_beta
    ga, gb = gamma - profile.alpha, gamma - profile.beta
    if 1 + ka * ga + kb * gb != target_sum:
        raise InvariantViolation("complement row sum identity failed")
    if 1 + ka * ga * ga + kb * gb * gb != ratio:
        raise InvariantViolation("complement sum-of-squares identity failed")
    if any(s != target_sum for s in out.row_sums()):
        raise InvariantViolation("complement rows do not share the expected sum")
    return ComplementResult(out, gamma, tight)


def _translation_denominator(c, m, t):
    return 1 + 2 * t * c + t * t * m * c


def translate(g: GramMatrix, t) -> GramMatrix:
    """Normalised ``x_i + t * sum(x)``; entries ``(G_ij + 2tc + t^2 mc) / (1 + 2tc + t^2 mc)``."""
    t = as_scalar(t)
    rs = row_structure(g)
    c = rs.common_row_sum
    if c is None:
        raise NotRegular("row sums are not constant")
    if not c:
        raise BalancedInput("translation needs a non-zero vector sum")
    m = g.m
    den = _translation_denominator(c, m, t)
    if qs_sign(den) <= 0:
        raise DegenerateDenominator(f"1 + 2tc + t^2 mc = {den} is not positive")
    if not t:
        return g
    shift = den - 1
    return g.map_offdiagonal(lambda x: (x + shift) / den, cls=GramMatrix)


def lift(g: GramMatrix, t_squared) -> GramMatrix:
    """Entries ``t^2 G_ij + 1 - t^2``: the vectors ``(t x_i, sqrt(1 - t^2))``."""
    t2 = as_scalar(t_squared)
    if not (qs_sign(t2) > 0 and qs_sign(1 - t2) >= 0):
        raise TargetOutOfRange(f"t^2 = {t2} outside (0, 1]")
    if t2 == 1:
        return g
    return g.map_offdiagonal(lambda x: t2 * x + 1 - t2, cls=GramMatrix)


def lift_to_angle(g: GramMatrix, target, angle=None):
    """Lift so that ``angle`` (default: the smaller one) becomes ``target``.

    Returns ``(lifted, t_squared)``.
    """
    profile = _regular_profile(g)
    source = profile.beta if angle is None else as_scalar(angle)
    if source not in (profile.alpha, profile.beta):
        raise TargetOutOfRange(f"{source} is not an angle of the set")
    target = as_scalar(target)
    if not (qs_sign(target - source) >= 0 and qs_sign(1 - target) > 0):
        raise TargetOutOfRange(f"need {source} <= target < 1, got {target}")
    t2 = (1 - target) / (1 - source)
    return lift(g, t2), t2


def lift_to_constant(g: GramMatrix, target):
    """Lift so that the Grammian constant becomes ``target``; returns ``(lifted, t_squared)``."""
    _regular_profile(g)
    c = row_structure(g).common_row_sum
    target = as_scalar(target)
    m = g.m
    if not (qs_sign(target - c) >= 0 and qs_sign(m - target) > 0):
        raise TargetOutOfRange(f"need {c} <= target < {m}, got {target}")
    t2 = (m - target) / (m - c)
    return lift(g, t2), t2


def equiangular_lift(g: GramMatrix):
    """Lift a two-distance set with ``alpha + beta < 0`` to equiangular lines.

    Returns ``(lifted, gamma)`` where the lifted entries are ``+-gamma``.
    """
    rs = row_structure(g)
    if len(rs.values) != 2:
        raise NotTwoDistance(f"expected two off-diagonal values, found {len(rs.values)}")
    alpha, beta = rs.values
    total = alpha + beta
    if qs_sign(total) >= 0:
        raise AngleSumNotNegative(f"alpha + beta = {total} is not negative")
    t2 = 2 / (2 - total)
    out = lift(g, t2)
    gamma = t2 * alpha + 1 - t2
    if t2 * beta + 1 - t2 != -gamma:
        raise InvariantViolation("lifted angles are not opposite")
    return out, gamma


def translation_roots(g: GramMatrix):
    """Both roots of ``2mc t^2 + 4c t + (alpha + beta) = 0``, smaller |t| first."""
    profile = _regular_profile(g)
    c = profile.grammian_constant
    m = g.m
    if not c:
        raise BalancedInput("translation needs a non-zero vector sum")
    total = profile.alpha + profile.beta
    if qs_sign(2 * c / m - total) < 0:
        raise ConditionViolated(f"alpha + beta = {total} exceeds 2c/m = {2 * c / m}")
    disc = 16 * c * c - 8 * m * c * total
    if not disc.is_rational:
        raise MixedRadicands("discriminant is irrational; root lies outside a quadratic field")
    root = qs_sqrt(disc.to_fraction())
    if c.d and root.d and c.d != root.d:
        raise MixedRadicands(f"roots need sqrt({root.d}) but the matrix uses sqrt({c.d})")
    lo = (-4 * c - root) / (4 * m * c)
    hi = (-4 * c + root) / (4 * m * c)
    return tuple(sorted((lo, hi), key=abs))


def equiangular_translate(g: GramMatrix, root: int = 0):
    """Translate within the same span until the two angles are opposite.

    ``root`` selects 0 (smaller |t|, default) or 1 (larger |t|).
    Returns ``(translated, gamma, t)`` with ``gamma >= 0``.
    """
    roots = translation_roots(g)
    t = roots[root]
    profile = _regular_profile(g)
    out = translate(g, t)
    vals = row_structure(out).values
    if len(vals) == 1:
        gamma = abs(vals[0])
    else:
        if len(vals) != 2 or vals[0] != -vals[1]:
            raise InvariantViolation(f"translated values {vals} are not +-gamma")
        gamma = vals[0]
    expected = abs((profile.alpha - profile.beta) / (2 - profile.alpha - profile.beta))
    if gamma != expected:
        raise InvariantViolation(f"common angle {gamma} != {expected}")
    return out, gamma, t


def _normalize_etf(g: GramMatrix, pivot: int):
    m, n = g.m, g.rank
    rs = row_structure(g)
    vals = rs.values
    if len(vals) != 2 or vals[0] != -vals[1] or qs_sign(vals[0]) <= 0:
        raise NotETF(f"off-diagonal values {[str(v) for v in vals]} are not +-alpha")
    if not m > n + 1:
        raise NotETF(f"need m > n + 1, got m = {m}, n = {n}")
    if not g.square_equals(Fraction(m, n)):
        raise NotETF("frame is not tight")
    if not 0 <= pivot < m:
        raise IndexError(f"pivot {pivot} out of range")
    alpha = vals[0]
    signs = [1 if (i == pivot or g[pivot, i] == alpha) else -1 for i in range(m)]
    rows = [[g[i, j] if signs[i] * signs[j] > 0 else -g[i, j] for j in range(m)] for i in range(m)]
    normalized = GramMatrix(rows, check=False)
    if any(normalized[pivot, j] != alpha for j in range(m) if j != pivot):
        raise InvariantViolation("sign normalisation failed")
    keep = [i for i in range(m) if i != pivot]
    return normalized, keep, alpha, m, n


def etf_neighbor_subset(g: GramMatrix, pivot: int = 0):
    """Drop ``pivot`` from a sign-normalised ETF.

    Returns ``(gram, profile)``; the rest is regular at ``+-alpha`` and not
    balanced.
    """
    normalized, keep, alpha, m, n = _normalize_etf(g, pivot)
    out = normalized.submatrix(keep)
    profile = two_distance_profile(out)
    if profile is None:
        raise InvariantViolation("neighbour subset is not regular")
    k_alpha = Fraction(m, 2) + (m - 2 * n) / (2 * n * alpha)
    if k_alpha != profile.k_alpha + 1:
        raise InvariantViolation(f"multiplicity {profile.k_alpha} != {k_alpha} - 1")
    if not profile.grammian_constant:
        raise InvariantViolation("neighbour subset is balanced")
    return out, profile


def etf_projection(g: GramMatrix, pivot: int = 0) -> GramMatrix:
    """Project a sign-normalised ETF onto the complement of vector ``pivot``.

    Entries ``(G_ij - alpha^2) / (1 - alpha^2)``; balanced and tight in one
    dimension less.
    """
    normalized, keep, alpha, m, n = _normalize_etf(g, pivot)
    welch = qs_sqrt(Fraction(m - n, n * (m - 1)))
    if alpha != welch:
        raise InvariantViolation(f"ETF angle {alpha} differs from the Welch bound {welch}")
    a2 = alpha * alpha
    sub = normalized.submatrix(keep)
    return sub.map_offdiagonal(lambda x: (x - a2) / (1 - a2), cls=GramMatrix)


def bibd_sum_gram(g: GramMatrix, design) -> UnnormalizedGram:
    """Gram matrix ``N^T G N`` of the block sums ``y_B = sum_{i in B} x_i``."""
    incidence = np.asarray(design.incidence)
    if incidence.shape[0] != g.m:
        raise SizeMismatch(f"design has {incidence.shape[0]} points, Gram has {g.m} vectors")
    out = UnnormalizedGram(g.congruence(incidence))
    n = g.rank
    ratio = Fraction(g.m, n)
    if all(not s for s in g.row_sums()) and g.square_equals(ratio):
        if not out.square_equals((design.r - design.lam) * ratio):
            raise InvariantViolation("block-sum frame is not (r - lambda) A tight")
    return out
