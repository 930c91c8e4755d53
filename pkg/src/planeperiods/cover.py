"""Product matrix of adjoint monomials and column covers.

The g x g grid Q of pairwise products of adjoint-basis monomials has
entries of degree <= 2d-6, the degrees that index quadratic
differentials.  A set of column labels "covers" when every monomial of
degree <= 2d-6 appears among the products of a label with a basis
monomial.  The distinguished labels are 1, x^(d-3), y^(d-3) (forced:
they alone reach 1, x^(2d-6), y^(2d-6)) plus x^2*y^2, which mops up the
middle monomials whenever 5 <= ... d <= 9.  For d in {5, 6} the fourth
label does not exist inside the basis and a searched substitute is
used; for d >= 10 the four labels provably miss monomials such as
x^(d-4)*y^(d-4) (its cofactor x^(d-6)*y^(d-6) has degree 2d-12 > d-3),
so the returned set is flagged as non-covering.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .monomials import (
    AdjointBasis,
    Monomial,
    ONE,
    adjoint_basis,
    genus,
    monomials_up_to,
)


@dataclass(frozen=True)
class ProductMatrix:
    d: int
    entries: tuple[tuple[Monomial, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class ColumnSet:
    """Distinct adjoint monomials naming columns of the product grid."""

    d: int
    labels: tuple[Monomial, ...]
    fallback: bool = False
    covers: bool = True
    note: str = ""

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("column labels must be distinct")
        for m in self.labels:
            if m.degree > self.d - 3:
                raise ValueError(
                    f"label {m} has degree {m.degree} > d-3 = {self.d - 3}"
                )

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class CoverReport:
    d: int
    covered: frozenset[Monomial]
    missing: frozenset[Monomial]
    distinct_count: int
    duplicate_count: int


@dataclass(frozen=True)
class RedundancyStats:
    distinct_products: int
    quad_dim: int
    excess: int


def target_monomials(d: int) -> list[Monomial]:
    """All monomials of degree <= 2d-6, the product-degree range."""
    if d < 4:
        raise ValueError(f"need degree >= 4, got {d}")
    return monomials_up_to(2 * d - 6)


def build_product_matrix(d: int) -> ProductMatrix:
    basis = adjoint_basis(d)
    rows = tuple(
        tuple(a * b for b in basis.monomials) for a in basis.monomials
    )
    return ProductMatrix(d, rows)


def column_set(d: int, labels, **kw) -> ColumnSet:
    return ColumnSet(d, tuple(sorted(labels)), **kw)


def cover_check(d: int, cols: ColumnSet) -> CoverReport:
    """Exhaustively enumerate the products of each column label with the
    whole basis and report which degree <= 2d-6 monomials are hit."""
    basis = adjoint_basis(d)
    covered: set[Monomial] = set()
    pairs = 0
    duplicates = 0
    for label in cols.labels:
        for m in basis:
            p = label * m
            pairs += 1
            if p in covered:
                duplicates += 1
            else:
                covered.add(p)
    missing = frozenset(t for t in target_monomials(d) if t not in covered)
    return CoverReport(
        d=d,
        covered=frozenset(covered),
        missing=missing,
        distinct_count=len(covered),
        duplicate_count=duplicates,
    )


def _mandatory_labels(d: int) -> list[Monomial]:
    # 1, x^(2d-6) and y^(2d-6) each have a unique product decomposition,
    # so every cover contains these three labels (only {1} for d = 4).
    if d == 4:
        return [ONE]
    return [ONE, Monomial(d - 3, 0), Monomial(0, d - 3)]


def min_cover_search(d: int, max_size: int) -> list[ColumnSet]:
    """All covering column sets of minimum cardinality <= max_size.

    Candidate sets are enumerated in the graded order of their label
    tuples; every minimum-size winner is returned.  The provably
    mandatory labels are fixed up front, which keeps the subset search
    small without changing the answer.
    """
    g = genus(d)
    if max_size > g:
        raise ValueError(f"max_size {max_size} exceeds genus {g}")
    basis = adjoint_basis(d)
    mandatory = _mandatory_labels(d)
    if len(mandatory) > max_size:
        return []
    rest = [m for m in basis if m not in mandatory]
    for size in range(len(mandatory), max_size + 1):
        found = []
        for extra in itertools.combinations(rest, size - len(mandatory)):
            cols = column_set(d, list(mandatory) + list(extra))
            if not cover_check(d, cols).missing:
                found.append(cols)
        if found:
            found.sort(key=lambda c: tuple(m.sort_key() for m in c.labels))
            return found
    return []


def distinguished_columns(d: int) -> ColumnSet:
    """The canonical column choice: {1, x^(d-3), y^(d-3), x^2*y^2}.

    For d in {5, 6} the x^2*y^2 label exceeds degree d-3, so the
    smallest searched cover containing the three mandatory labels is
    substituted and flagged.  For d >= 10 the literal four columns no
    longer cover; they are still returned (the choice is recorded, not
    reinterpreted) with covers=False so callers can react.
    """
    if d < 5:
        raise ValueError(f"distinguished columns need degree > 4, got {d}")
    four = Monomial(2, 2)
    if four.degree > d - 3:  # d in {5, 6}
        covers = min_cover_search(d, 4)
        assert covers, "search cover must exist for d in {5, 6}"
        chosen = covers[0]
        return ColumnSet(
            d,
            chosen.labels,
            fallback=True,
            covers=True,
            note=(
                "x^2*y^2 exceeds degree d-3 at this degree; "
                "substituted the smallest searched cover"
            ),
        )
    labels = tuple(sorted(_mandatory_labels(d) + [four]))
    report = cover_check(d, ColumnSet(d, labels))
    if report.missing:
        return ColumnSet(
            d,
            labels,
            fallback=False,
            covers=False,
            note=(
                f"the four canonical columns miss {len(report.missing)} "
                "monomials at this degree (first gap degree is 10); "
                "run min-cover for a covering set"
            ),
        )
    return ColumnSet(d, labels)


def redundancy_stats(d: int, cols: ColumnSet) -> RedundancyStats:
    """Distinct product count of a covering set versus the quadratic
    differential dimension 3g-3; the excess counts relations coming
    from multiples of the curve equation."""
    report = cover_check(d, cols)
    if report.missing:
        raise ValueError(
            f"column set {[str(m) for m in cols.labels]} does not cover at d={d}"
        )
    quad = 3 * genus(d) - 3
    return RedundancyStats(
        distinct_products=report.distinct_count,
        quad_dim=quad,
        excess=report.distinct_count - quad,
    )


def compression_ratio(d: int, n_labels: int) -> Fraction:
    """Payload entries over full symmetric-matrix entries, exactly."""
    g = genus(d)
    return Fraction(n_labels * g, g * (g + 1) // 2)
