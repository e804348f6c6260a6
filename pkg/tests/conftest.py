"""Shared fixture pool for the property suites."""

from fractions import Fraction
from functools import lru_cache

import pytest

from twodist import (
    GramMatrix,
    QuadScalar,
    conference_etf_gram,
    detect_intersection_numbers,
    etf_neighbor_subset,
    etf_projection,
    naimark,
    pairs_design,
    paper_fixtures,
    qsd_to_frame_basis,
    qsd_to_frame_simplex,
    simplex_gram,
)


def gram(rows) -> GramMatrix:
    return GramMatrix([[QuadScalar(Fraction(x)) for x in row] for row in rows])


def copies_of_basis(n: int, copies: int) -> GramMatrix:
    """``copies`` copies of an orthonormal basis of R^n."""
    m = n * copies
    return gram([[1 if i % n == j % n else 0 for j in range(m)] for i in range(m)])


@lru_cache(maxsize=None)
def fixture_pool() -> dict:
    pool = {name: f.gram for name, f in paper_fixtures().items()}
    for n in range(1, 7):
        pool[f"simplex_{n}"] = simplex_gram(n)
    for n in range(4, 9):
        d = pairs_design(n)
        q = detect_intersection_numbers(d)
        pool[f"pairs_{n}_basis"] = qsd_to_frame_basis(q, d)
        pool[f"pairs_{n}_simplex"] = qsd_to_frame_simplex(q, d)
    etf = conference_etf_gram(6)
    pool["etf_6"] = etf
    pool["etf_14"] = conference_etf_gram(14)
    pool["etf_6_neighbors"] = etf_neighbor_subset(etf)[0]
    pool["pentagon"] = etf_projection(etf)
    pool["example_new_naimark"] = naimark(pool["example_new"])
    pool["identity_3"] = copies_of_basis(3, 1)
    pool["two_bases_3"] = copies_of_basis(3, 2)
    return pool


@lru_cache(maxsize=None)
def tight_pool() -> dict:
    out = {}
    for name, g in fixture_pool().items():
        if g.square_equals(Fraction(g.m, g.rank)):
            out[name] = g
    return out


# acceptance summary: one line per criterion at the end of the run

_CRITERIA: dict = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    number, title = marker
    _CRITERIA[number] = (title, report.passed, report.duration)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    # attach the criterion marker so the log hook can see it
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        outcome.get_result().criterion = tuple(mark.args)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, passed, duration = _CRITERIA[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {title} ({duration:.2f} s)")
