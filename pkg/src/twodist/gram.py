"""Certification of Gram matrices of spherical two-distance sets.

The dimension ``n`` is never supplied by callers; it is the exact rank of the
Gram matrix.  Every theorem-backed inequality is evaluated as a named
:class:`Check` so that a failure surfaces as data rather than an exception.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DegenerateSystem,
    NoRealSolution,
    NonIntegralMultiplicity,
)
from .matrix import GramMatrix, SymmetricMatrix, psd_rank
from .scalar import QuadScalar, as_scalar, qs_sign, qs_sqrt

__all__ = [
    "Certificate",
    "Check",
    "RowStructure",
    "TwoDistanceProfile",
    "analyze",
    "multiplicity_from_angles",
    "psd_rank",
    "row_structure",
    "solve_angle_systems",
    "two_distance_profile",
]

# maximal spherical two-distance sets in low dimension
KNOWN_G = {1: 2, 2: 5, 3: 6, 4: 10, 5: 16, 6: 27}


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""
    informational: bool = False

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "detail": self.detail}
        if self.informational:
            out["informational"] = True
        return out


@dataclass(frozen=True)
class TwoDistanceProfile:
    """Angles, their per-row multiplicities and the Grammian constant.

    ``alpha`` is always the larger angle.
    """

    alpha: QuadScalar
    beta: QuadScalar
    k_alpha: int
    k_beta: int
    grammian_constant: QuadScalar

    def __post_init__(self):
        if self.alpha == self.beta:
            raise ValueError("angles must differ")
        expected = 1 + self.k_alpha * self.alpha + self.k_beta * self.beta
        if expected != self.grammian_constant:
            raise ValueError("Grammian constant inconsistent with angles")

    @property
    def m(self) -> int:
        return self.k_alpha + self.k_beta + 1

    def multiplicity(self, angle) -> int:
        angle = as_scalar(angle)
        if angle == self.alpha:
            return self.k_alpha
        if angle == self.beta:
            return self.k_beta
        raise KeyError(f"{angle} is not an angle of this set")

    def to_dict(self) -> dict:
        return {
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "k_alpha": self.k_alpha,
            "k_beta": self.k_beta,
            "grammian_constant": str(self.grammian_constant),
        }


@dataclass(frozen=True)
class RowStructure:
    values: tuple[QuadScalar, ...]
    row_counts: tuple[Counter, ...]
    row_sums: tuple[QuadScalar, ...]

    @property
    def regular_by_counts(self) -> bool:
        return all(c == self.row_counts[0] for c in self.row_counts[1:])

    @property
    def regular_by_sums(self) -> bool:
        return all(s == self.row_sums[0] for s in self.row_sums[1:])

    @property
    def common_row_sum(self) -> QuadScalar | None:
        return self.row_sums[0] if self.regular_by_sums else None


def row_structure(g: SymmetricMatrix) -> RowStructure:
    """Distinct off-diagonal values, per-row value counts and row sums."""
    counts = []
    for i, row in enumerate(g.entries):
        c = Counter(x for j, x in enumerate(row) if j != i)
        counts.append(c)
    values = sorted({x for c in counts for x in c}, reverse=True)
    return RowStructure(tuple(values), tuple(counts), tuple(g.row_sums()))


def two_distance_profile(g: SymmetricMatrix) -> TwoDistanceProfile | None:
    """Profile of a regular two-distance matrix, else ``None``.

    Cheap: no rank or tightness computation.
    """
    rs = row_structure(g)
    if len(rs.values) != 2 or not rs.regular_by_counts:
        return None
    alpha, beta = rs.values
    c = rs.row_counts[0]
    return TwoDistanceProfile(alpha, beta, c[alpha], c[beta], rs.row_sums[0])


@dataclass
class Certificate:
    m: int
    rank: int
    values: tuple[QuadScalar, ...]
    is_two_distance: bool
    is_regular: bool
    is_balanced: bool
    is_tight: bool
    profile: TwoDistanceProfile | None
    row_sum: QuadScalar | None
    frame_potential: QuadScalar
    tight_bound: Fraction | None
    bound_flags: list[Check] = field(default_factory=list)
    classification_notes: list[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.rank

    @property
    def violations(self) -> list[Check]:
        return [f for f in self.bound_flags if not f.passed and not f.informational]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "rank": self.rank,
            "values": [str(v) for v in self.values],
            "is_two_distance": self.is_two_distance,
            "is_regular": self.is_regular,
            "is_balanced": self.is_balanced,
            "is_tight": self.is_tight,
            "profile": self.profile.to_dict() if self.profile else None,
            "row_sum": str(self.row_sum) if self.row_sum is not None else None,
            "frame_potential": str(self.frame_potential),
            "tight_bound": _frac_str(self.tight_bound),
            "bound_flags": [f.to_dict() for f in self.bound_flags],
            "classification_notes": list(self.classification_notes),
        }


def _frac_str(q) -> str | None:
    if q is None:
        return None
    return str(as_scalar(Fraction(q)))


def _is_odd_square_minus(n: int, offset: int) -> bool:
    """True when ``n == (2k+1)**2 - offset`` for some k >= 1."""
    k = 1
    while (2 * k + 1) ** 2 - offset <= n:
        if (2 * k + 1) ** 2 - offset == n:
            return True
        k += 1
    return False


def analyze(g: GramMatrix) -> Certificate:
    """Certify a Gram matrix: regularity, balance, rank, tightness and bounds."""
    if not isinstance(g, GramMatrix):
        g = GramMatrix(g)
    m = g.m
    rs = row_structure(g)
    rank = g.rank
    values = rs.values
    two = len(values) == 2
    by_counts = rs.regular_by_counts
    by_sums = rs.regular_by_sums
    row_sum = rs.common_row_sum
    is_balanced = all(not s for s in rs.row_sums)
    fp = g.frame_potential()
    scale = Fraction(m, rank)
    is_tight = g.square_equals(scale)
    profile = None
    if two and by_counts:
        c = rs.row_counts[0]
        profile = TwoDistanceProfile(values[0], values[1], c[values[0]], c[values[1]], rs.row_sums[0])

    cert = Certificate(
        m=m,
        rank=rank,
        values=values,
        is_two_distance=two,
        is_regular=by_counts,
        is_balanced=is_balanced,
        is_tight=is_tight,
        profile=profile,
        row_sum=row_sum,
        frame_potential=fp,
        tight_bound=scale if is_tight else None,
    )
    flags = cert.bound_flags
    notes = cert.classification_notes
    n = rank
    distinct = QuadScalar(1) not in values

    if two:
        flags.append(Check(
            "regularity_agreement", by_counts == by_sums,
            f"count-regular={by_counts}, constant-row-sum={by_sums}",
        ))
    flags.append(Check(
        "balanced_row_sums", is_balanced == (row_sum is not None and not row_sum),
        "balanced iff every row sums to zero",
    ))
    lower = Fraction(m * m, n)
    fp_ok = qs_sign(fp - lower) >= 0 and (is_tight == (fp == lower))
    flags.append(Check(
        "frame_potential", fp_ok, f"FP = {fp}, m^2/n = {_frac_str(lower)}",
    ))

    if values and all(qs_sign(v) < 0 for v in values):
        flags.append(Check("negative_angles", m <= n + 1, f"m = {m}, n + 1 = {n + 1}"))
    elif values and all(qs_sign(v) <= 0 for v in values):
        flags.append(Check("nonpositive_angles", m <= 2 * n, f"m = {m}, 2n = {2 * n}"))

    if len(values) <= 2 and distinct:
        bound = n * (n + 3) // 2
        flags.append(Check("harmonic_bound", m <= bound, f"m = {m}, n(n+3)/2 = {bound}"))
        if n in KNOWN_G:
            flags.append(Check("known_maximum", m <= KNOWN_G[n], f"m = {m}, g({n}) = {KNOWN_G[n]}"))

    if profile is not None and distinct and qs_sign(profile.beta) >= 0:
        # both angles non-negative, so the set is not balanced
        if n >= 7:
            if _is_odd_square_minus(n, 2):
                bound = (n - 1) * (n + 2) // 2
            else:
                bound = (n - 1) * n // 2
            flags.append(Check("nonnegative_angles", m <= bound, f"m = {m}, bound = {bound}"))
        elif n >= 2:
            bound = KNOWN_G[n - 1]
            flags.append(Check("nonnegative_angles", m <= bound, f"m = {m}, g({n - 1}) = {bound}"))
        if is_balanced:
            flags.append(Check("nonnegative_angles_unbalanced", False, "non-negative angles yet balanced"))

    if profile is not None:
        c = profile.grammian_constant
        if m % 2 == 1:
            ok = profile.k_alpha % 2 == 0 and profile.k_beta % 2 == 0
            flags.append(Check(
                "parity", ok, f"m odd, k_alpha = {profile.k_alpha}, k_beta = {profile.k_beta}",
            ))
        if m > n + 1 and (not c or c == scale):
            ok = qs_sign(profile.alpha * profile.beta) <= 0
            flags.append(Check(
                "angle_sign", ok, f"alpha*beta = {profile.alpha * profile.beta}",
            ))

    if is_tight and two and values[0] != -values[1]:
        ok = profile is not None and (not profile.grammian_constant or profile.grammian_constant == scale)
        flags.append(Check(
            "tight_grammian_dichotomy", ok,
            f"row sum {row_sum} must be 0 or m/n = {_frac_str(scale)}",
        ))

    if is_tight and two and QuadScalar(0) in values and profile is not None:
        other = profile.alpha if profile.beta == 0 else profile.beta
        if other == 1:
            notes.append(f"{profile.multiplicity(other) + 1} copies of an orthonormal basis of R^{n}")
            flags.append(Check("zero_angle", True, "copies of an orthonormal basis"))
        else:
            ok = m > n and -Fraction(n, m - n) * other == 1
            if ok:
                notes.append(
                    f"Naimark complement is {profile.multiplicity(other) + 1} copies "
                    f"of an orthonormal basis of R^{m - n}"
                )
            flags.append(Check("zero_angle", ok, f"non-zero angle {other}"))

    if not two:
        notes.append(f"{len(values)}-distance set" if len(values) != 1 else "one-distance set")
    if is_tight:
        notes.append(f"tight frame for R^{n} with bound {_frac_str(scale)}")
        if two and values[0] == -values[1]:
            notes.append("equiangular tight frame")
    if profile is not None and not is_tight and row_sum is not None and (not row_sum or row_sum == scale):
        notes.append("Grammian constant is 0 or m/n but the frame is not tight")
    if not distinct:
        notes.append("contains repeated vectors")
    return cert


def solve_angle_systems(m: int, n: int, k_alpha: int, balanced: bool):
    """Both solutions (alpha, beta) of the tight-frame angle system.

    Solves ``1 + k x + (m-k-1) y = s`` and ``1 + k x^2 + (m-k-1) y^2 = m/n``
    with ``s = 0`` (balanced) or ``s = m/n``.
    """
    if not 1 <= k_alpha <= m - 2:
        raise ValueError(f"k_alpha must lie in [1, {m - 2}]")
    if not 0 < n < m:
        raise ValueError("need 0 < n < m")
    k = k_alpha
    kb = m - k - 1
    ratio = Fraction(m, n)
    s = Fraction(0) if balanced else ratio
    # k(m-1) x^2 - 2k(s-1) x + (s-1)^2 - kb(m/n - 1) = 0
    qa = k * (m - 1)
    qb = -2 * k * (s - 1)
    qc = (s - 1) ** 2 - kb * (ratio - 1)
    disc = qb * qb - 4 * qa * qc
    if disc < 0:
        raise NoRealSolution(f"discriminant {disc} < 0")
    if disc == 0:
        raise DegenerateSystem("the two solutions coincide")
    root = qs_sqrt(disc)
    out = []
    for sign in (1, -1):
        x = (QuadScalar(-qb) + sign * root) / (2 * qa)
        y = (QuadScalar(s) - 1 - k * x) / kb
        out.append((x, y))
    total = 2 * (s - 1) / (m - 1)
    assert out[0][0] + out[1][0] == total and out[0][1] + out[1][1] == total
    return tuple(out)


def multiplicity_from_angles(m: int, n: int, alpha, beta) -> int:
    """Multiplicity of ``alpha`` forced by tightness of m unit vectors in R^n."""
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    den = alpha * alpha - beta * beta
    if not den:
        raise NonIntegralMultiplicity("alpha^2 == beta^2: multiplicity undetermined")
    k = (Fraction(m, n) - 1 + (1 - m) * beta * beta) / den
    if not k.is_rational or k.to_fraction().denominator != 1:
        raise NonIntegralMultiplicity(f"multiplicity {k} is not an integer")
    k = int(k.to_fraction())
    if not 0 <= k <= m - 1:
        raise NonIntegralMultiplicity(f"multiplicity {k} outside [0, {m - 1}]")
    return k
