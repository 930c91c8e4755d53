from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planeperiods.cover import (
    build_product_matrix,
    column_set,
    compression_ratio,
    cover_check,
    distinguished_columns,
    min_cover_search,
    redundancy_stats,
    target_monomials,
)
from planeperiods.monomials import Monomial, adjoint_basis, genus, parse_monomial


def labels(*names):
    return [parse_monomial(n) for n in names]


def test_product_matrix_entries():
    pm = build_product_matrix(6)
    b = adjoint_basis(6)
    x, y = b.index_of(Monomial(1, 0)), b.index_of(Monomial(0, 1))
    assert pm.entries[x][y] == Monomial(1, 1)
    x3, y3 = b.index_of(Monomial(3, 0)), b.index_of(Monomial(0, 3))
    assert pm.entries[x3][y3] == Monomial(3, 3)
    for j, m in enumerate(b):
        assert pm.entries[0][j] == m


def test_product_matrix_symmetric_and_bounded():
    for d in (5, 6, 8):
        pm = build_product_matrix(d)
        g = len(pm.entries)
        assert g == genus(d)
        for i in range(g):
            for j in range(g):
                assert pm.entries[i][j] == pm.entries[j][i]
                assert pm.entries[i][j].degree <= 2 * d - 6


def test_cover_three_mandatory_d6_misses_x2y2():
    cols = column_set(6, labels("1", "x^3", "y^3"))
    report = cover_check(6, cols)
    assert set(report.missing) == {Monomial(2, 2)}


def test_cover_d7_four_columns_complete():
    cols = column_set(7, labels("1", "x^4", "y^4", "x^2*y^2"))
    report = cover_check(7, cols)
    assert not report.missing
    assert report.distinct_count == len(target_monomials(7)) == 45


def test_cover_single_column_one():
    report = cover_check(6, column_set(6, labels("1")))
    assert report.covered == frozenset(adjoint_basis(6).monomials)


def test_cover_gap_at_d10_and_beyond():
    # the canonical four columns stop covering from degree 10 on:
    # x^(d-4) y^(d-4) needs the cofactor x^(d-6) y^(d-6), whose degree
    # 2d-12 exceeds d-3 once d >= 10
    for d, expected_missing in ((10, 1), (11, 3), (12, 6), (13, 10), (14, 15)):
        cols = column_set(
            d, labels("1", f"x^{d-3}", f"y^{d-3}", "x^2*y^2")
        )
        report = cover_check(d, cols)
        assert len(report.missing) == expected_missing
        assert Monomial(d - 4, d - 4) in report.missing
    for d in (7, 8, 9):
        cols = column_set(d, labels("1", f"x^{d-3}", f"y^{d-3}", "x^2*y^2"))
        assert not cover_check(d, cols).missing


def test_no_four_column_cover_exists_at_d10():
    assert min_cover_search(10, 4) == []
    five = min_cover_search(10, 5)
    assert five and all(len(c.labels) == 5 for c in five)


def test_straggler_edge_monomials_in_y_column():
    # degree d-2 monomials with r in {0, 1} come from the y^(d-3) column
    for d in (7, 9, 12):
        col = column_set(d, [Monomial(0, d - 3)])
        covered = cover_check(d, col).covered
        for r in (0, 1):
            assert Monomial(r, d - 2 - r) in covered


def test_duplicate_corner_in_both_extreme_columns():
    for d in range(5, 12):
        corner = Monomial(d - 3, d - 3)
        cx = cover_check(d, column_set(d, [Monomial(d - 3, 0)]))
        cy = cover_check(d, column_set(d, [Monomial(0, d - 3)]))
        assert corner in cx.covered and corner in cy.covered


def test_duplicate_count_bookkeeping():
    cols = column_set(6, labels("1", "x^3", "y^3"))
    report = cover_check(6, cols)
    assert report.distinct_count + report.duplicate_count == 3 * genus(6)


def test_distinguished_columns_by_degree():
    c7 = distinguished_columns(7)
    assert set(c7.labels) == set(labels("1", "x^4", "y^4", "x^2*y^2"))
    assert not c7.fallback and c7.covers

    c6 = distinguished_columns(6)
    assert c6.fallback and c6.covers
    assert set(labels("1", "x^3", "y^3")) < set(c6.labels)
    assert len(c6.labels) == 4
    assert not cover_check(6, c6).missing

    c5 = distinguished_columns(5)
    assert c5.fallback and c5.covers
    assert set(c5.labels) == set(labels("1", "x^2", "y^2"))

    c10 = distinguished_columns(10)
    assert not c10.covers and c10.note

    with pytest.raises(ValueError):
        distinguished_columns(4)


def test_min_cover_d5():
    covers = min_cover_search(5, 4)
    assert len(covers) == 1
    assert set(covers[0].labels) == set(labels("1", "x^2", "y^2"))


def test_min_cover_d6_all_completions():
    covers = min_cover_search(6, 4)
    assert all(len(c.labels) == 4 for c in covers)
    extras = [
        (set(c.labels) - set(labels("1", "x^3", "y^3"))).pop() for c in covers
    ]
    assert extras == labels("x", "y", "x^2", "x*y", "y^2", "x^2*y", "x*y^2")


def test_min_cover_d6_none_of_size_two():
    assert min_cover_search(6, 2) == []


def test_min_cover_rejects_max_size_above_genus():
    with pytest.raises(ValueError):
        min_cover_search(5, 7)


def test_redundancy_stats_paper_counts():
    s6 = redundancy_stats(6, distinguished_columns(6))
    assert (s6.distinct_products, s6.quad_dim, s6.excess) == (28, 27, 1)
    s7 = redundancy_stats(7, distinguished_columns(7))
    assert (s7.distinct_products, s7.quad_dim, s7.excess) == (45, 42, 3)


def test_redundancy_closed_form_over_degrees():
    for d in range(5, 15):
        full = column_set(d, list(adjoint_basis(d).monomials))
        stats = redundancy_stats(d, full)
        assert stats.excess == (d - 4) * (d - 5) // 2


def test_redundancy_rejects_non_cover():
    with pytest.raises(ValueError):
        redundancy_stats(6, column_set(6, labels("1", "x^3", "y^3")))


@settings(max_examples=40, deadline=None)
@given(st.integers(5, 9), st.data())
def test_cover_monotone_in_columns(d, data):
    basis = list(adjoint_basis(d).monomials)
    small = data.draw(
        st.lists(st.sampled_from(basis), min_size=1, max_size=3, unique=True)
    )
    extra = data.draw(st.sampled_from([m for m in basis if m not in small]))
    before = cover_check(d, column_set(d, small)).covered
    after = cover_check(d, column_set(d, small + [extra])).covered
    assert before <= after


@settings(max_examples=30, deadline=None)
@given(st.integers(5, 9), st.data())
def test_cover_symmetric_under_xy_swap(d, data):
    basis = list(adjoint_basis(d).monomials)
    cols = data.draw(
        st.lists(st.sampled_from(basis), min_size=1, max_size=4, unique=True)
    )
    swapped = [Monomial(m.ydeg, m.xdeg) for m in cols]
    a = cover_check(d, column_set(d, cols))
    b = cover_check(d, column_set(d, swapped))
    assert {Monomial(m.ydeg, m.xdeg) for m in a.missing} == set(b.missing)


def test_column_set_validation():
    with pytest.raises(ValueError):
        column_set(6, labels("1", "1"))
    with pytest.raises(ValueError):
        column_set(6, labels("x^4"))


def test_compression_ratio():
    assert compression_ratio(6, 4) == Fraction(40, 55) == Fraction(8, 11)
    assert compression_ratio(10, 4) == Fraction(144, 666)
    for d in range(5, 15):
        g = genus(d)
        assert compression_ratio(d, 4) == Fraction(8, g + 1)
