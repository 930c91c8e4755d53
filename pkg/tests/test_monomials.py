import pytest
from hypothesis import given
from hypothesis import strategies as st

from planeperiods.monomials import (
    Monomial,
    adjoint_basis,
    format_monomial,
    genus,
    monomial_index,
    parse_monomial,
)


def test_genus_values():
    assert genus(6) == 10
    assert genus(3) == 1
    assert genus(9) == 28


def test_genus_rejects_small_degree():
    with pytest.raises(ValueError):
        genus(2)


def test_adjoint_basis_d6_order():
    names = [format_monomial(m) for m in adjoint_basis(6)]
    assert names == ["1", "x", "y", "x^2", "x*y", "y^2", "x^3", "x^2*y", "x*y^2", "y^3"]


def test_adjoint_basis_d4():
    assert [str(m) for m in adjoint_basis(4)] == ["1", "x", "y"]


def test_adjoint_basis_d5_count():
    assert len(adjoint_basis(5)) == 6


def test_adjoint_basis_rejects_small_degree():
    with pytest.raises(ValueError):
        adjoint_basis(3)


@pytest.mark.parametrize("d", range(4, 21))
def test_basis_size_is_genus(d):
    assert len(adjoint_basis(d)) == genus(d)


def test_monomial_index_examples():
    b = adjoint_basis(6)
    assert monomial_index(Monomial(0, 0), b) == 0
    assert monomial_index(Monomial(0, 3), b) == 9
    assert monomial_index(Monomial(2, 2), b) is None


def test_monomial_index_inverts_position():
    for d in (4, 5, 6, 7, 10):
        b = adjoint_basis(d)
        for i, m in enumerate(b):
            assert monomial_index(m, b) == i


@given(st.permutations(list(adjoint_basis(7).monomials)))
def test_order_total_and_deterministic(perm):
    assert tuple(sorted(perm)) == adjoint_basis(7).monomials


def test_product_adds_exponents():
    assert Monomial(2, 1) * Monomial(1, 3) == Monomial(3, 4)


@given(st.integers(0, 9), st.integers(0, 9))
def test_format_parse_round_trip(a, b):
    m = Monomial(a, b)
    assert parse_monomial(format_monomial(m)) == m


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_monomial("z^2")
    with pytest.raises(ValueError):
        parse_monomial("x**2")
