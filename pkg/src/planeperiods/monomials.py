"""Bivariate monomials, the graded order, and the adjoint basis.

The adjoint basis for a degree-d curve is the list of all monomials of
total degree <= d-3 in the graded order (total degree first, higher
x-power first within a degree):

    1 < x < y < x^2 < x*y < y^2 < x^3 < x^2*y < ...

Its length is the genus g = (d-1)(d-2)/2, and position j stands for the
holomorphic differential m_j * dx / (df/dy).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True, order=False)
class Monomial:
    xdeg: int
    ydeg: int

    def __post_init__(self):
        if self.xdeg < 0 or self.ydeg < 0:
            raise ValueError("monomial exponents must be nonnegative")

    @property
    def degree(self) -> int:
        return self.xdeg + self.ydeg

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.xdeg + other.xdeg, self.ydeg + other.ydeg)

    def divides(self, other: "Monomial") -> bool:
        return self.xdeg <= other.xdeg and self.ydeg <= other.ydeg

    def quotient(self, other: "Monomial") -> "Monomial":
        """self / other; raises if other does not divide self."""
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(self.xdeg - other.xdeg, self.ydeg - other.ydeg)

    def sort_key(self) -> tuple:
        # graded, then x-power descending (equivalently y-power ascending)
        return (self.degree, self.ydeg)

    def __lt__(self, other: "Monomial") -> bool:
        return self.sort_key() < other.sort_key()

    def __le__(self, other: "Monomial") -> bool:
        return self.sort_key() <= other.sort_key()

    def __str__(self) -> str:
        return format_monomial(self)

    def __repr__(self) -> str:
        return f"Monomial({format_monomial(self)!r})"


ONE = Monomial(0, 0)
X = Monomial(1, 0)
Y = Monomial(0, 1)


def format_monomial(m: Monomial) -> str:
    """Render as "1", "x", "y", "x^2*y^3" (exponent 1 stays bare)."""
    parts = []
    if m.xdeg == 1:
        parts.append("x")
    elif m.xdeg > 1:
        parts.append(f"x^{m.xdeg}")
    if m.ydeg == 1:
        parts.append("y")
    elif m.ydeg > 1:
        parts.append(f"y^{m.ydeg}")
    return "*".join(parts) if parts else "1"


_FACTOR_RE = re.compile(r"^([xy])(?:\^(\d+))?$")


def parse_monomial(text: str) -> Monomial:
    """Parse the same grammar format_monomial emits."""
    s = text.strip()
    if s == "1":
        return ONE
    xdeg = ydeg = 0
    for factor in s.split("*"):
        m = _FACTOR_RE.match(factor.strip())
        if m is None:
            raise ValueError(f"cannot parse monomial factor {factor!r} in {text!r}")
        e = int(m.group(2)) if m.group(2) else 1
        if m.group(1) == "x":
            xdeg += e
        else:
            ydeg += e
    return Monomial(xdeg, ydeg)


def genus(d: int) -> int:
    """(d-1)(d-2)/2 for a smooth plane curve of degree d >= 3."""
    if d < 3:
        raise ValueError(f"degree must be at least 3, got {d}")
    return (d - 1) * (d - 2) // 2


def monomials_up_to(degree: int) -> list[Monomial]:
    """All monomials of total degree <= degree, in graded order."""
    out = []
    for total in range(degree + 1):
        for ydeg in range(total + 1):
            out.append(Monomial(total - ydeg, ydeg))
    return out


@dataclass(frozen=True)
class AdjointBasis:
    """Ordered monomials of degree <= d-3; a proxy basis for the
    holomorphic differentials of a smooth degree-d plane curve."""

    d: int
    monomials: tuple[Monomial, ...]

    def __len__(self) -> int:
        return len(self.monomials)

    def __getitem__(self, i: int) -> Monomial:
        return self.monomials[i]

    def __iter__(self):
        return iter(self.monomials)

    def index_of(self, m: Monomial) -> Optional[int]:
        return monomial_index(m, self)


def adjoint_basis(d: int) -> AdjointBasis:
    if d < 4:
        raise ValueError(f"adjoint basis needs degree >= 4, got {d}")
    mons = tuple(monomials_up_to(d - 3))
    basis = AdjointBasis(d, mons)
    assert len(mons) == genus(d)
    return basis


def monomial_index(m: Monomial, basis: AdjointBasis) -> Optional[int]:
    """Zero-based position of m in the basis, or None if deg m > d-3."""
    if m.degree > basis.d - 3:
        return None
    # closed form for the graded position; cheaper than a dict for our sizes
    pos = m.degree * (m.degree + 1) // 2 + m.ydeg
    assert basis.monomials[pos] == m
    return pos
