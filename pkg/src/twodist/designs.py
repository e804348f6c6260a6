"""Block designs, quasi-symmetric designs and the frames built from them.

Points are labelled ``1..v`` as in the design JSON format.  Parameter-only
objects (:class:`QSDParams` without blocks) support the parameter-level
checks; the frame constructions need explicit blocks.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import (
    IdentityViolation,
    InvariantViolation,
    NonIntegralS,
    NotPairBalanced,
    NotQuasiSymmetric,
    UnequalBlockSizes,
)
from .gram import Check, TwoDistanceProfile, row_structure, two_distance_profile
from .matrix import GramMatrix
from .scalar import QuadScalar

__all__ = [
    "BlockDesign",
    "LinesBoundsTable",
    "NeighborReport",
    "NonexistenceCertificate",
    "PartReport",
    "PipelineResult",
    "QSDParams",
    "SRGParams",
    "design_nonexistence",
    "detect_intersection_numbers",
    "equiangular_pipeline",
    "fano_plane",
    "lines_bound",
    "neighbor_substructure",
    "octad_design_22",
    "pairs_design",
    "qsd_necessary_conditions",
    "qsd_to_frame_basis",
    "qsd_to_frame_simplex",
    "srg_params",
    "validate_design",
]


@dataclass(frozen=True)
class BlockDesign:
    v: int
    blocks: tuple[tuple[int, ...], ...]
    r: int
    k: int
    lam: int

    @property
    def b(self) -> int:
        return len(self.blocks)

    @cached_property
    def incidence(self) -> np.ndarray:
        """The v x b point-block incidence matrix."""
        n = np.zeros((self.v, self.b), dtype=np.int64)
        for j, block in enumerate(self.blocks):
            for p in block:
                n[p - 1, j] = 1
        return n

    def intersections(self) -> np.ndarray:
        n = self.incidence
        return n.T @ n

    def to_dict(self) -> dict:
        return {"v": self.v, "blocks": [list(b) for b in self.blocks]}


def validate_design(v: int, blocks) -> BlockDesign:
    """Count r, k and lambda directly and check the 2-design identities."""
    blocks = tuple(tuple(sorted(b)) for b in blocks)
    if not blocks:
        raise ValueError("a design needs at least one block")
    for block in blocks:
        if len(set(block)) != len(block):
            raise ValueError(f"block {block} repeats a point")
        if block and (block[0] < 1 or block[-1] > v):
            raise ValueError(f"block {block} has points outside 1..{v}")
    sizes = {len(b) for b in blocks}
    if len(sizes) != 1:
        raise UnequalBlockSizes(f"block sizes {sorted(sizes)}")
    k = sizes.pop()
    pair_counts = {pair: 0 for pair in itertools.combinations(range(1, v + 1), 2)}
    for block in blocks:
        for pair in itertools.combinations(block, 2):
            pair_counts[pair] += 1
    lam = pair_counts[(1, 2)] if v >= 2 else 0
    for pair, count in pair_counts.items():
        if count != lam:
            raise NotPairBalanced(
                f"pair {pair} lies in {count} blocks, pair (1, 2) in {lam}", pair
            )
    replication = [0] * (v + 1)
    for block in blocks:
        for p in block:
            replication[p] += 1
    r = replication[1]
    if any(x != r for x in replication[1:]):
        raise IdentityViolation("points lie in different numbers of blocks")
    b = len(blocks)
    if v * r != b * k:
        raise IdentityViolation(f"vr = {v * r} != bk = {b * k}")
    if r * (k - 1) != lam * (v - 1):
        raise IdentityViolation(f"r(k-1) = {r * (k - 1)} != lambda(v-1) = {lam * (v - 1)}")
    return BlockDesign(v, blocks, r, k, lam)


@dataclass(frozen=True)
class QSDParams:
    v: int
    b: int
    r: int
    k: int
    lam: int
    x: int
    y: int

    def __post_init__(self):
        if not self.x < self.y:
            raise IdentityViolation(f"need x < y, got x = {self.x}, y = {self.y}")
        if self.v * self.r != self.b * self.k:
            raise IdentityViolation(f"vr = {self.v * self.r} != bk = {self.b * self.k}")
        if self.r * (self.k - 1) != self.lam * (self.v - 1):
            raise IdentityViolation(
                f"r(k-1) = {self.r * (self.k - 1)} != lambda(v-1) = {self.lam * (self.v - 1)}"
            )

    @classmethod
    def from_dict(cls, data: dict) -> QSDParams:
        keys = ("v", "b", "r", "k", "lambda", "x", "y")
        missing = [k for k in keys if k not in data]
        if missing:
            raise KeyError(f"missing parameters {missing}")
        return cls(*(int(data[k]) for k in keys))

    def to_dict(self) -> dict:
        return {
            "v": self.v, "b": self.b, "r": self.r, "k": self.k,
            "lambda": self.lam, "x": self.x, "y": self.y,
        }

    def astuple(self) -> tuple[int, ...]:
        return (self.v, self.b, self.r, self.k, self.lam, self.x, self.y)


def detect_intersection_numbers(design: BlockDesign) -> QSDParams:
    """Read off the two block intersection sizes of a quasi-symmetric design."""
    inter = design.intersections()
    b = design.b
    sizes = sorted({int(inter[i, j]) for i in range(b) for j in range(i + 1, b)})
    if len(sizes) != 2:
        raise NotQuasiSymmetric(f"block intersection sizes {sizes}", sizes)
    x, y = sizes
    return QSDParams(design.v, b, design.r, design.k, design.lam, x, y)


def _as_int(q: Fraction):
    return int(q) if q.denominator == 1 else q


@dataclass(frozen=True)
class SRGParams:
    n_vertices: int
    s: int
    mu1: int | Fraction
    mu2: int | Fraction
    theta1: Fraction
    theta2: Fraction

    def astuple(self):
        return (self.n_vertices, self.s, self.mu1, self.mu2)


def srg_params(q: QSDParams) -> SRGParams:
    """Parameters of the block graph (adjacent = meeting in y points)."""
    s = Fraction(q.k * (q.r - 1) - q.x * (q.b - 1), q.y - q.x)
    if s.denominator != 1 or not 0 <= s <= q.b - 1:
        raise NonIntegralS(f"s = {s} is not an integer in [0, {q.b - 1}]")
    s = int(s)
    theta1 = Fraction(q.r - q.lam - q.k + q.x, q.y - q.x)
    theta2 = Fraction(q.x - q.k, q.y - q.x)
    mu1 = s + theta1 + theta2 + theta1 * theta2
    mu2 = s + theta1 * theta2
    return SRGParams(q.b, s, _as_int(mu1), _as_int(mu2), theta1, theta2)


def _design_for(q: QSDParams, blocks) -> BlockDesign:
    design = blocks if isinstance(blocks, BlockDesign) else validate_design(q.v, blocks)
    found = detect_intersection_numbers(design)
    if found != q:
        raise IdentityViolation(f"blocks give parameters {found.astuple()}, expected {q.astuple()}")
    return design


def qsd_to_frame_basis(q: QSDParams, blocks) -> GramMatrix:
    """Unit block indicators ``e_J / sqrt(k)``: Gram ``N^T N / k``.

    Regular at angles x/k, y/k with Grammian constant r; never tight.
    """
    design = _design_for(q, blocks)
    inter = design.intersections()
    k = q.k
    values = {}
    rows = []
    for i in range(q.b):
        row = []
        for j in range(q.b):
            size = int(inter[i, j])
            val = values.get(size)
            if val is None:
                val = values[size] = QuadScalar(Fraction(size, k))
            row.append(val)
        rows.append(row)
    g = GramMatrix(rows)
    _check_qsd_frame(g, q, QuadScalar(Fraction(q.y, q.k)))
    if g.row_sums()[0] != q.r:
        raise InvariantViolation("Grammian constant differs from r")
    if g.rank != q.v:
        raise InvariantViolation(f"rank {g.rank} != v = {q.v}")
    if g.square_equals(Fraction(q.b, q.v)):
        raise InvariantViolation("basis construction came out tight")
    return g


def qsd_to_frame_simplex(q: QSDParams, blocks) -> GramMatrix:
    """Sums of simplex vectors over blocks: Gram ``(v N^T N - k^2 J) / (k (v - k))``.

    Balanced and tight in dimension v - 1.
    """
    if q.k >= q.v:
        raise ValueError("the simplex construction needs k < v")
    design = _design_for(q, blocks)
    inter = design.intersections()
    k, v = q.k, q.v
    scale = k * (v - k)
    values = {}
    rows = []
    for i in range(q.b):
        row = []
        for j in range(q.b):
            size = int(inter[i, j])
            val = values.get(size)
            if val is None:
                val = values[size] = QuadScalar(Fraction(size * v - k * k, scale))
            row.append(val)
        rows.append(row)
    g = GramMatrix(rows)
    _check_qsd_frame(g, q, QuadScalar(Fraction(q.y * v - k * k, scale)))
    if any(g.row_sums()):
        raise InvariantViolation("simplex construction is not balanced")
    if g.rank != v - 1 or not g.square_equals(Fraction(q.b, v - 1)):
        raise InvariantViolation("simplex construction is not tight in dimension v - 1")
    return g


def _check_qsd_frame(g: GramMatrix, q: QSDParams, y_angle: QuadScalar) -> None:
    s = srg_params(q).s
    rs = row_structure(g)
    if any(c[y_angle] != s for c in rs.row_counts):
        raise InvariantViolation(f"y-angle count differs from s = {s}")


def pairs_design(n: int) -> BlockDesign:
    """All 2-subsets of ``1..n``."""
    return validate_design(n, itertools.combinations(range(1, n + 1), 2))


def fano_plane() -> BlockDesign:
    lines = [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)]
    return validate_design(7, lines)


def _golay_codewords() -> list[int]:
    # cyclic [23, 12] code with generator 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11,
    # extended by an overall parity bit in position 23
    gen = sum(1 << e for e in (0, 2, 4, 5, 6, 10, 11))
    words = []
    for msg in range(1 << 12):
        word = 0
        for i in range(12):
            if msg >> i & 1:
                word ^= gen << i
        if bin(word).count("1") % 2:
            word |= 1 << 23
        words.append(word)
    return words


@lru_cache(maxsize=None)
def octad_design_22() -> BlockDesign:
    """The quasi-symmetric 2-(22, 7, 16) design with x = 1, y = 3.

    Octads of the extended Golay code that contain coordinate 23 but not
    coordinate 0, with coordinate 23 removed; points 1..22 are coordinates
    1..22.
    """
    octads = [w for w in _golay_codewords() if bin(w).count("1") == 8]
    if len(octads) != 759:
        raise InvariantViolation(f"found {len(octads)} octads, expected 759")
    blocks = []
    for w in octads:
        if w >> 23 & 1 and not w & 1:
            blocks.append([i for i in range(1, 23) if w >> i & 1])
    return validate_design(22, blocks)


@dataclass(frozen=True)
class PartReport:
    value: QuadScalar
    indices: tuple[int, ...]
    kind: str  # "regular", "constant", "irregular" or "single"
    profile: TwoDistanceProfile | None = None
    constant: QuadScalar | None = None

    def to_dict(self) -> dict:
        return {
            "value": str(self.value),
            "indices": list(self.indices),
            "kind": self.kind,
            "profile": self.profile.to_dict() if self.profile else None,
            "constant": str(self.constant) if self.constant is not None else None,
        }


@dataclass(frozen=True)
class NeighborReport:
    index: int
    parts: dict

    @property
    def y(self) -> PartReport:
        """Neighbours at the larger angle."""
        return self.parts[max(self.parts)]

    @property
    def z(self) -> PartReport:
        """Neighbours at the smaller angle."""
        return self.parts[min(self.parts)]


def neighbor_substructure(g: GramMatrix, index: int) -> NeighborReport:
    """Split the other vectors by their inner product with vector ``index``."""
    groups: dict = {}
    for j in range(g.m):
        if j != index:
            groups.setdefault(g[index, j], []).append(j)
    parts = {}
    for value, idx in groups.items():
        if len(idx) == 1:
            parts[value] = PartReport(value, tuple(idx), "single")
            continue
        sub = g.submatrix(idx)
        vals = row_structure(sub).values
        if len(vals) == 1:
            parts[value] = PartReport(value, tuple(idx), "constant", constant=vals[0])
            continue
        profile = two_distance_profile(sub)
        kind = "regular" if profile is not None else "irregular"
        parts[value] = PartReport(value, tuple(idx), kind, profile=profile)
    return NeighborReport(index, parts)


def qsd_necessary_conditions(q: QSDParams) -> list[Check]:
    """Evaluate the necessary conditions for a quasi-symmetric design."""
    checks = []
    ratio = Fraction(q.k * q.k, q.v)
    bracket = q.x <= ratio <= q.y and not (q.x == ratio == q.y)
    checks.append(Check("intersection_bracket", bracket, f"x = {q.x}, k^2/v = {ratio}, y = {q.y}"))
    try:
        s = srg_params(q).s
    except NonIntegralS as exc:
        checks.append(Check("integral_s", False, str(exc)))
        return checks
    checks.append(Check("integral_s", True, f"s = {s}"))
    if q.x == ratio:
        ok = q.b == (s + 1) * (q.b - q.v + 1)
        checks.append(Check("equality_divisibility", ok, f"x = k^2/v: b = {q.b}, (s+1)(b-v+1) = {(s + 1) * (q.b - q.v + 1)}"))
    elif q.y == ratio:
        ok = q.b == (q.b - s - 1) * (q.b - q.v + 1)
        checks.append(Check("equality_divisibility", ok, f"y = k^2/v: b = {q.b}, (b-s-1)(b-v+1) = {(q.b - s - 1) * (q.b - q.v + 1)}"))
    else:
        checks.append(Check("equality_divisibility", True, "not applicable: k^2/v is strictly between x and y"))
    if q.b % 2:
        checks.append(Check("odd_b_parity", s % 2 == 0, f"b = {q.b} odd, s = {s}"))
    else:
        checks.append(Check("odd_b_parity", True, f"not applicable: b = {q.b} even"))
    checks.append(Check(
        "k2_over_v_below_lambda", ratio < q.lam, f"k^2/v = {ratio}, lambda = {q.lam}",
        informational=True,
    ))
    return checks


class LinesBoundsTable:
    """Known [lower, upper] bounds on the maximal number of equiangular lines."""

    def __init__(self, bounds: dict, version: str = "custom"):
        for dim, (lo, hi) in bounds.items():
            if lo > hi:
                raise ValueError(f"dimension {dim}: lower {lo} > upper {hi}")
        self.bounds = dict(sorted(bounds.items()))
        self.version = version

    @classmethod
    def parse(cls, text: str) -> LinesBoundsTable:
        bounds = {}
        declared = None
        for lineno, line in enumerate(text.splitlines(), 1):
            stripped = line.strip()
            if stripped.startswith("#"):
                body = stripped[1:].strip()
                if body.startswith("version:"):
                    declared = body.split(":", 1)[1].strip()
                continue
            if not stripped:
                continue
            parts = stripped.split()
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: expected 'dimension lower upper'")
            dim, lo, hi = (int(p) for p in parts)
            bounds[dim] = (lo, hi)
        digest = hashlib.sha256(text.encode()).hexdigest()[:12]
        version = f"{declared}+{digest}" if declared else digest
        return cls(bounds, version)

    @classmethod
    def load(cls, path=None) -> LinesBoundsTable:
        if path is None:
            text = resources.files("twodist").joinpath("data/lines_bounds.txt").read_text()
        else:
            text = Path(path).read_text(encoding="utf-8")
        return cls.parse(text)

    @classmethod
    @lru_cache(maxsize=1)
    def default(cls) -> LinesBoundsTable:
        return cls.load()

    def lookup(self, dimension: int):
        return self.bounds.get(dimension)

    def with_entries(self, entries: dict, version: str | None = None) -> LinesBoundsTable:
        merged = dict(self.bounds)
        merged.update(entries)
        return LinesBoundsTable(merged, version or f"{self.version}+local")


def lines_bound(dimension: int, table: LinesBoundsTable | None = None):
    """``(lower, upper)`` for ``dimension``, or ``None`` when unknown."""
    if dimension < 2:
        raise ValueError("dimension must be at least 2")
    return (table or LinesBoundsTable.default()).lookup(dimension)


@dataclass(frozen=True)
class NonexistenceCertificate:
    params: QSDParams
    reason: str
    witness: dict
    table_version: str | None = None

    def reproduce(self, table: LinesBoundsTable | None = None) -> bool:
        """Re-run the originating check and compare."""
        return self in design_nonexistence(self.params, table)

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "reason": self.reason,
            "witness": dict(self.witness),
            "table_version": self.table_version,
        }


@dataclass(frozen=True)
class PipelineResult:
    params: QSDParams
    condition_holds: bool
    lines_claim: tuple[int, int] | None
    nonexistence: NonexistenceCertificate | None
    notes: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "condition_holds": self.condition_holds,
            "lines_claim": list(self.lines_claim) if self.lines_claim else None,
            "nonexistence": self.nonexistence.to_dict() if self.nonexistence else None,
            "notes": list(self.notes),
        }


def equiangular_pipeline(q: QSDParams, table: LinesBoundsTable | None = None) -> PipelineResult:
    """Claim b equiangular lines in R^v when x + y <= 2kr/b, then compare with known bounds."""
    table = table or LinesBoundsTable.default()
    threshold = Fraction(2 * q.k * q.r, q.b)
    holds = q.x + q.y <= threshold
    if not holds:
        note = f"x + y = {q.x + q.y} > 2kr/b = {threshold}: no claim"
        return PipelineResult(q, False, None, None, (note,))
    claim = (q.b, q.v)
    notes = [f"x + y = {q.x + q.y} <= 2kr/b = {threshold}: {q.b} lines in R^{q.v}"]
    bound = table.lookup(q.v)
    cert = None
    if bound is None:
        notes.append(f"no known bound for dimension {q.v}")
    elif q.b > bound[1]:
        cert = NonexistenceCertificate(
            q, "lines_bound",
            {"lines": q.b, "dimension": q.v, "lower": bound[0], "upper": bound[1]},
            table.version,
        )
        notes.append(f"{q.b} > {bound[1]}: the design cannot exist")
    else:
        notes.append(f"consistent with known range [{bound[0]}, {bound[1]}]")
    return PipelineResult(q, True, claim, cert, tuple(notes))


def design_nonexistence(q: QSDParams, table: LinesBoundsTable | None = None) -> list[NonexistenceCertificate]:
    """Every nonexistence certificate derivable for ``q``."""
    certs = [
        NonexistenceCertificate(q, c.name, {"detail": c.detail})
        for c in qsd_necessary_conditions(q)
        if not c.passed and not c.informational
    ]
    result = equiangular_pipeline(q, table)
    if result.nonexistence is not None:
        certs.append(result.nonexistence)
    return certs
