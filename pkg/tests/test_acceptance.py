"""Acceptance criteria 1-10.

Each test carries a ``criterion`` marker; conftest prints one PASS/FAIL line
per criterion at the end of the run.  Run directly with
``python tests/test_acceptance.py`` to see only these.
"""

import json
import math
import random
import time
from fractions import Fraction as F

import numpy as np
import pytest

from conftest import fixture_pool, tight_pool
from twodist import (
    GramMatrix,
    LinesBoundsTable,
    QSDParams,
    analyze,
    complement_transform,
    conference_etf_gram,
    design_nonexistence,
    detect_intersection_numbers,
    equiangular_lift,
    equiangular_pipeline,
    equiangular_translate,
    etf_neighbor_subset,
    etf_projection,
    multiplicity_from_angles,
    naimark,
    octad_design_22,
    pairs_design,
    paper_fixtures,
    project_to_balanced,
    psd_rank,
    qs_sqrt,
    qsd_necessary_conditions,
    qsd_to_frame_basis,
    qsd_to_frame_simplex,
    realize,
    solve_angle_systems,
    srg_params,
)
from twodist.cli import main
from twodist.gram import row_structure

FIXTURES = paper_fixtures()

# the 10x10 matrix as printed, row by row
_A, _B = "1/6", "-2/3"
PRINTED = [
    "1 a a a a a a b b b",
    "a 1 a a a b b a a b",
    "a a 1 a b a b a b a",
    "a a a 1 b b a b a a",
    "a a b b 1 a a a a b",
    "a b a b a 1 a a b a",
    "a b b a a a 1 b a a",
    "b a a b a a b 1 a a",
    "b a b a a b a a 1 a",
    "b b a a b a a a a 1",
]
PRINTED = [[{"a": _A, "b": _B}.get(x, x) for x in row.split()] for row in PRINTED]


def _elapsed(start):
    return time.perf_counter() - start


@pytest.mark.criterion(1, "Example-new reproduction via the CLI")
def test_criterion_1(tmp_path, capsys):
    start = time.perf_counter()
    design = tmp_path / "pairs5.json"
    design.write_text(json.dumps(pairs_design(5).to_dict()))
    out = tmp_path / "example_new.json"
    assert main(["construct", str(design), "--variant", "simplex", "-o", str(out)]) == 0
    built = json.loads(out.read_text())
    assert built["gram"]["rows"] == PRINTED

    assert main(["verify", str(out)]) == 0
    cert = json.loads(capsys.readouterr().out)["certificate"]
    assert cert["is_regular"] and cert["is_balanced"] and cert["is_tight"]
    assert (cert["profile"]["k_alpha"], cert["profile"]["k_beta"]) == (6, 3)
    assert cert["rank"] == 4 and cert["tight_bound"] == "5/2"
    assert F(cert["tight_bound"]) == F(10, 4)
    assert _elapsed(start) < 1.0


@pytest.mark.criterion(2, "basis projection equals simplex construction, n = 5..12")
def test_criterion_2():
    start = time.perf_counter()
    for n in range(5, 13):
        d = pairs_design(n)
        q = detect_intersection_numbers(d)
        projected = project_to_balanced(qsd_to_frame_basis(q, d))
        assert projected == qsd_to_frame_simplex(q, d), n
    assert _elapsed(start) < 5.0


@pytest.mark.criterion(3, "Naimark complement suite")
def test_criterion_3():
    pool = tight_pool()
    start = time.perf_counter()
    nm = naimark(FIXTURES["example_new"].gram)
    c = analyze(nm)
    assert c.is_tight and c.rank == 6
    assert set(c.values) == {F(-1, 9), F(4, 9)}
    counts = {c.profile.alpha: c.profile.k_alpha, c.profile.beta: c.profile.k_beta}
    assert counts == {F(-1, 9): 6, F(4, 9): 3}
    assert len(pool) >= 10
    for name, g in pool.items():
        if g.rank == g.m:
            continue  # an orthonormal basis has no complement
        assert naimark(naimark(g)) == g, name
    assert _elapsed(start) < 1.0


@pytest.mark.criterion(4, "non-tight balanced six vectors in R^3")
def test_criterion_4():
    g = FIXTURES["r3_six_vectors"].gram
    c = analyze(g)
    assert c.is_regular and c.is_balanced and not c.is_tight
    p = c.profile
    assert (p.alpha, p.k_alpha, p.beta, p.k_beta) == (F(1, 7), 3, F(-5, 7), 2)
    assert c.rank == 3
    assert c.frame_potential == F(612, 49)
    assert F(g.m**2, c.rank) == 12
    per_row = 1 + p.k_alpha * p.alpha**2 + p.k_beta * p.beta**2
    assert per_row == F(102, 49) and per_row != 2
    assert c.frame_potential == g.m * per_row


@pytest.mark.criterion(5, "block graph SRG parameters")
def test_criterion_5():
    q5 = detect_intersection_numbers(pairs_design(5))
    srg = srg_params(q5)
    assert (srg.n_vertices, srg.s, srg.mu1, srg.mu2) == (10, 6, 3, 4)
    designs = [pairs_design(n) for n in range(4, 13)] + [octad_design_22()]
    for d in designs:
        q = detect_intersection_numbers(d)
        s = srg_params(q).s
        basis = qsd_to_frame_basis(q, d)
        y_angle = F(q.y, q.k)
        rows = row_structure(basis).row_counts
        assert all(r[y_angle] == s for r in rows), q


@pytest.mark.criterion(6, "equiangular lifts at angle 1/3")
def test_criterion_6():
    lifted, gamma = equiangular_lift(FIXTURES["example_new"].gram)
    assert gamma == F(1, 3) and lifted.m == 10
    assert set(row_structure(lifted).values) == {F(1, 3), F(-1, 3)}
    assert psd_rank(lifted).rank == 5

    d = pairs_design(4)
    simplex = qsd_to_frame_simplex(detect_intersection_numbers(d), d)
    assert simplex.rank == 3
    lifted, gamma = equiangular_lift(simplex)
    assert gamma == F(1, 3) and lifted.m == 6
    assert set(row_structure(lifted).values) == {F(1, 3), F(-1, 3)}
    assert psd_rank(lifted).rank == 4


def _float_translation_gamma(alpha, beta, c, m):
    # <x_i + t s, x_j + t s> with s the vector sum, |s|^2 = m c, <x_i, s> = c
    a, b, cq = 2 * m * c, 4 * c, alpha + beta
    disc = math.sqrt(b * b - 4 * a * cq)
    t = min(((-b + disc) / (2 * a), (-b - disc) / (2 * a)), key=abs)
    shift, norm = 2 * t * c + t * t * m * c, 1 + 2 * t * c + t * t * m * c
    return t, (alpha + shift) / norm, (beta + shift) / norm


@pytest.mark.criterion(7, "176 equiangular lines in R^22")
def test_criterion_7():
    start = time.perf_counter()
    params = QSDParams(22, 176, 56, 7, 16, 1, 3)
    d = octad_design_22()
    q = detect_intersection_numbers(d)
    assert q == params
    result = equiangular_pipeline(params)
    assert result.condition_holds and result.lines_claim == (176, 22)
    assert result.nonexistence is None

    basis = qsd_to_frame_basis(q, d)
    c = analyze(basis)
    assert c.is_regular and c.rank == 22
    assert c.row_sum == 56

    out, gamma, t = equiangular_translate(basis)
    assert out.m == 176
    values = set(row_structure(out).values)
    assert values == {gamma, -gamma}
    assert t.d == 5 and not t.is_rational

    t_float, ga, gb = _float_translation_gamma(1 / 7, 3 / 7, 56, 176)
    assert abs(ga + gb) < 1e-15
    assert abs(abs(ga) - float(gamma)) < 1e-12
    assert abs(float(t) - t_float) < 1e-12
    assert gamma == F(1, 5)
    assert _elapsed(start) < 60.0


@pytest.mark.criterion(8, "design nonexistence certificates and speculative claims")
def test_criterion_8():
    start = time.perf_counter()
    table = LinesBoundsTable.default()
    for params, lines, upper in [
        ((9, 36, 20, 5, 10, 1, 3), 36, 28),
        ((19, 76, 36, 9, 16, 3, 5), 76, 75),
    ]:
        certs = design_nonexistence(QSDParams(*params), table)
        bounds = [c for c in certs if c.reason == "lines_bound"]
        assert len(bounds) == 1
        assert bounds[0].witness["lines"] == lines and bounds[0].witness["upper"] == upper
        assert bounds[0].reproduce(table)
    for params, lines in [
        ((42, 287, 123, 18, 51, 6, 9), 287),
        ((45, 396, 132, 15, 42, 3, 6), 396),
        ((46, 621, 216, 16, 72, 4, 7), 621),
    ]:
        q = QSDParams(*params)
        assert all(c.passed for c in qsd_necessary_conditions(q) if not c.informational)
        result = equiangular_pipeline(q, table)
        assert result.lines_claim == (lines, q.v)
        assert not design_nonexistence(q, table)
    assert _elapsed(start) < 1.0


@pytest.mark.criterion(9, "quadratic-field ETF chain")
def test_criterion_9():
    start = time.perf_counter()
    etf = conference_etf_gram(6)
    c = analyze(etf)
    assert etf.d == 5 and c.is_tight and c.rank == 3

    sub, profile = etf_neighbor_subset(etf)
    m, n = 6, 3
    welch = qs_sqrt(F(m - n, n * (m - 1)))
    closed = F(m, 2) + (m - 2 * n) / (2 * n * welch) - 1
    assert (profile.k_alpha, profile.k_beta) == (2, 2)
    assert closed == profile.k_alpha

    pentagon = etf_projection(etf)
    pc = analyze(pentagon)
    root5 = qs_sqrt(5)
    assert set(pc.values) == {(root5 - 1) / 4, -(root5 + 1) / 4}
    assert pc.is_tight and pc.tight_bound == F(5, 2)

    res = complement_transform(pentagon)
    assert res.is_tight_result
    out = GramMatrix(res.matrix)
    oc = analyze(out)
    assert oc.is_tight and set(oc.values) == set(pc.values)
    for i in range(5):
        for j in range(i + 1, 5):
            assert out[i, j] != pentagon[i, j]
    assert _elapsed(start) < 1.0


def _random_two_valued(rng, m):
    a, b = F(rng.randint(-9, 9), 10), F(rng.randint(-9, 9), 10)
    rows = [[F(1)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            rows[i][j] = rows[j][i] = a if rng.random() < 0.5 else b
    return rows


@pytest.mark.criterion(10, "property suites over fixtures and random inputs")
def test_criterion_10():
    from twodist.matrix import SymmetricMatrix

    rng = random.Random(20261015)
    pool = fixture_pool()

    # row-sum regularity <=> count regularity, on random two-valued matrices
    for _ in range(300):
        m = rng.randint(3, 9)
        rs = row_structure(SymmetricMatrix(_random_two_valued(rng, m)))
        if len(rs.values) == 2:
            assert rs.regular_by_sums == rs.regular_by_counts

    for name, g in pool.items():
        c = analyze(g)
        rs = row_structure(g)
        if len(rs.values) == 2:
            assert rs.regular_by_sums == rs.regular_by_counts, name
        # balanced <=> zero row sums, checked against coordinates
        frame = realize(g)
        zero_rows = all(not s for s in g.row_sums())
        assert zero_rows == (np.linalg.norm(frame.vector_sum()) < 1e-9), name
        assert c.is_balanced == zero_rows, name
        # tight <=> frame potential m^2 / rank
        assert c.is_tight == (c.frame_potential == F(g.m**2, c.rank)), name
        assert np.max(np.abs(frame.gram() - g.to_float())) <= 1e-10, name
        if c.is_regular and c.profile is not None and g.m % 2:
            assert c.profile.k_alpha % 2 == 0 and c.profile.k_beta % 2 == 0, name

    for name, g in tight_pool().items():
        c = analyze(g)
        if len(c.values) == 2 and g.m > c.rank + 1:
            assert c.values[0] * c.values[1] <= 0, name
        p = c.profile
        if p is None or not 1 <= p.k_alpha <= g.m - 2 or g.rank == g.m:
            continue
        balanced = not p.grammian_constant
        sols = solve_angle_systems(g.m, c.rank, p.k_alpha, balanced)
        assert (p.alpha, p.beta) in sols, name
        if p.alpha**2 != p.beta**2:
            assert multiplicity_from_angles(g.m, c.rank, p.alpha, p.beta) == p.k_alpha, name

    # solve -> multiplicity round trip on random parameters
    checked = 0
    while checked < 60:
        m = rng.randint(4, 30)
        n = rng.randint(2, m - 2)
        k = rng.randint(1, m - 2)
        try:
            sols = solve_angle_systems(m, n, k, rng.random() < 0.5)
        except Exception:
            continue
        for alpha, beta in sols:
            if alpha * alpha != beta * beta:
                assert multiplicity_from_angles(m, n, alpha, beta) == k
        checked += 1


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
