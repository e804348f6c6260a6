import math
from fractions import Fraction

import numpy as np
import pytest

from conftest import fixture_pool
from twodist import (
    SymmetricMatrix,
    VectorFrame,
    analyze,
    bibd_sum_gram,
    conference_etf_gram,
    detect_intersection_numbers,
    fano_plane,
    frame_operator_check,
    pairs_design,
    paper_fixtures,
    qsd_to_frame_basis,
    qsd_to_frame_simplex,
    realize,
    simplex_gram,
    simplex_vectors,
)
from twodist.errors import NotPSD, ToleranceExceeded, UnsupportedOrder

FIXTURES = paper_fixtures()


def test_realize_example_new():
    frame = realize(FIXTURES["example_new"].gram)
    assert frame.coordinates.shape == (4, 10)
    assert np.allclose(frame.frame_operator(), 2.5 * np.eye(4), atol=1e-10)
    report = frame_operator_check(frame, expected=2.5)
    assert report.is_tight and report.matches_expected
    assert abs(report.lower - 2.5) < 1e-10 and abs(report.upper - 2.5) < 1e-10


def test_realize_identity():
    g = SymmetricMatrix([[1 if i == j else 0 for j in range(3)] for i in range(3)])
    frame = realize(g)
    assert np.allclose(frame.gram(), np.eye(3), atol=1e-12)


def test_realize_nontight_six_vectors():
    frame = realize(FIXTURES["r3_six_vectors"].gram)
    assert frame.n == 3
    assert np.linalg.norm(frame.vector_sum()) < 1e-9
    assert not np.allclose(frame.frame_operator(), 2 * np.eye(3), atol=1e-3)
    assert not frame_operator_check(frame).is_tight


def test_basis_construction_frame_bounds():
    d = pairs_design(5)
    g = qsd_to_frame_basis(detect_intersection_numbers(d), d)
    report = frame_operator_check(realize(g))
    assert report.lower < report.upper - 0.1
    assert abs(report.frame_potential - 25) < 1e-10
    assert abs(report.tight_potential - 20) < 1e-10


def test_block_sum_frame_bounds():
    out = bibd_sum_gram(simplex_gram(6), fano_plane())
    frame = realize(out)
    report = frame_operator_check(frame, expected=2 * 7 / 6)
    assert report.matches_expected


def test_realize_rejects_indefinite_and_tight_tolerance():
    with pytest.raises(NotPSD):
        realize(SymmetricMatrix([[1, 2], [2, 1]]))
    with pytest.raises(ToleranceExceeded) as info:
        realize(FIXTURES["example_new"].gram, tol=1e-300)
    assert info.value.deviation > 0


@pytest.mark.parametrize("name", sorted(fixture_pool()))
def test_round_trip_on_every_fixture(name):
    g = fixture_pool()[name]
    frame = realize(g)
    assert frame.n == g.rank
    assert np.max(np.abs(frame.gram() - g.to_float())) <= 1e-10
    c = analyze(g)
    if c.is_balanced:
        assert np.linalg.norm(frame.vector_sum()) <= 1e-9
    fp = float(c.frame_potential)
    assert abs(frame_operator_check(frame).frame_potential - fp) <= 1e-10 * fp


# simplex and ETF generators


def test_simplex_vectors_match_printed_matrix():
    printed = np.array([
        [-math.sqrt(10) / 4, math.sqrt(10) / 4, 0, 0, 0],
        [-math.sqrt(30) / 12, -math.sqrt(30) / 12, math.sqrt(30) / 6, 0, 0],
        [-math.sqrt(15) / 12, -math.sqrt(15) / 12, -math.sqrt(15) / 12, math.sqrt(15) / 4, 0],
        [-0.25, -0.25, -0.25, -0.25, 1],
    ])
    assert np.allclose(simplex_vectors(4).coordinates, printed, atol=1e-15)


@pytest.mark.parametrize("n", range(1, 9))
def test_simplex_generators_agree(n):
    g = simplex_gram(n)
    frame = simplex_vectors(n)
    assert np.allclose(frame.gram(), g.to_float(), atol=1e-12)
    assert all(not s for s in g.row_sums())
    assert g.square_equals(Fraction(n + 1, n))


def test_conference_etf_order_6():
    g = conference_etf_gram(6)
    assert g.d == 5
    c = analyze(g)
    assert c.tight_bound == 2 and c.rank == 3 and c.rank % 2 == 1
    assert {str(v) for v in c.values} == {"1/5*sqrt(5)", "-1/5*sqrt(5)"}


def test_conference_unsupported_orders():
    for order in (5, 7, 10, 12):
        with pytest.raises(UnsupportedOrder):
            conference_etf_gram(order)


# vector-level oracles for the design constructions


def _vector_constructions(design):
    inc = design.incidence.astype(float)
    basis = inc / math.sqrt(design.k)  # columns e_J / sqrt(k)
    phi = simplex_vectors(design.v - 1).coordinates
    sums = phi @ inc
    simplex = sums / np.linalg.norm(sums, axis=0)
    return basis.T @ basis, simplex.T @ simplex


@pytest.mark.parametrize("n", range(4, 9))
def test_vector_level_pairs_constructions(n):
    d = pairs_design(n)
    q = detect_intersection_numbers(d)
    vb, vs = _vector_constructions(d)
    assert np.max(np.abs(vb - qsd_to_frame_basis(q, d).to_float())) < 1e-12
    assert np.max(np.abs(vs - qsd_to_frame_simplex(q, d).to_float())) < 1e-12


def test_vector_level_fano_block_sums():
    fano = fano_plane()
    vb, vs = _vector_constructions(fano)
    exact = bibd_sum_gram(simplex_gram(6), fano)
    diag = float(exact[0, 0])
    assert np.max(np.abs(vs - exact.to_float() / diag)) < 1e-12
    assert np.max(np.abs(vb * fano.k - fano.intersections())) < 1e-12


# paper coordinates


@pytest.mark.parametrize("name", [k for k, f in FIXTURES.items() if f.vectors is not None])
def test_printed_coordinates_match_gram(name):
    f = FIXTURES[name]
    assert np.max(np.abs(f.vectors.T @ f.vectors - f.gram.to_float())) < 1e-12


def test_vector_frame_json_round_trip():
    frame = realize(FIXTURES["example_new"].gram)
    back = VectorFrame.from_dict(frame.to_dict())
    assert back.n == 4 and back.m == 10
    assert np.array_equal(back.coordinates, frame.coordinates)
    with pytest.raises(ValueError):
        VectorFrame.from_dict({"n": 3, "m": 10, "columns": frame.to_dict()["columns"]})


def test_block_sum_bounds_for_nontight_input():
    # balanced but not tight: bounds scale by r - lambda, checked numerically
    g = FIXTURES["r3_six_vectors"].gram
    d = pairs_design(6)
    base = frame_operator_check(realize(g))
    assert not base.is_tight
    out = frame_operator_check(realize(bibd_sum_gram(g, d)))
    scale = d.r - d.lam
    assert abs(out.lower - scale * base.lower) < 1e-9
    assert abs(out.upper - scale * base.upper) < 1e-9
