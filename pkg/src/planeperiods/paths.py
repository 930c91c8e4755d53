"""Branch points of the x-projection and a non-crossing loop system.

Branch x-values are the roots of the exact resultant of f and df/dy.
The loop system is a "comb": after rotating the frame so all branch
points have distinct real parts, every loop descends from the base
point to its own horizontal lane below the cluster, runs to its
point's vertical corridor, climbs to a circle around the point, and
retraces.  Lanes are deeper for points further left and descents are
further west for points further right, which makes the loops pairwise
non-crossing by construction; that embedding is what the homology
stage's ribbon structure relies on.

The rotation of the frame only changes how paths are drawn; the curve
itself is never transformed here.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .curves import PlaneCurve
from .polys import UPoly, is_squarefree, resultant_y
from .roots import find_roots


class BranchPointError(RuntimeError):
    """Raised when the projection is unusable; the caller should shear."""


@dataclass(frozen=True)
class Piece:
    """One parametrized path piece in original x-coordinates."""

    kind: str  # "line" | "arc"
    a: complex  # line start / arc center
    b: complex  # line end / unused
    radius: float = 0.0
    theta0: float = 0.0
    theta1: float = 0.0

    def at(self, t: float) -> complex:
        if self.kind == "line":
            return self.a + (self.b - self.a) * t
        th = self.theta0 + (self.theta1 - self.theta0) * t
        return self.a + self.radius * cmath.exp(1j * th)

    def start(self) -> complex:
        return self.at(0.0)

    def end(self) -> complex:
        return self.at(1.0)

    def length(self) -> float:
        if self.kind == "line":
            return abs(self.b - self.a)
        return abs(self.theta1 - self.theta0) * self.radius


def piece_velocity(piece: Piece, t: float) -> complex:
    """dx/dt along the piece (t in [0, 1])."""
    if piece.kind == "line":
        return piece.b - piece.a
    dth = piece.theta1 - piece.theta0
    th = piece.theta0 + dth * t
    return 1j * dth * piece.radius * cmath.exp(1j * th)


def reversed_piece(p: Piece) -> Piece:
    if p.kind == "line":
        return Piece("line", p.b, p.a)
    return Piece("arc", p.a, p.b, p.radius, p.theta1, p.theta0)


@dataclass
class BranchPointSet:
    """Branch x-values with the comb geometry attached.

    points are ordered left to right by the rotated real part; that
    ordering is the canonical branch index used everywhere downstream.
    """

    points: np.ndarray  # original-frame complex branch x-values
    discriminant: UPoly
    discriminant_degree: int
    basepoint: complex  # original frame
    rotation: float  # frame angle phi; work coords w = x * exp(-i phi)
    radii: np.ndarray
    clearance: float
    min_re_gap: float
    lane_depths: np.ndarray
    descent_offsets: np.ndarray
    lane_base: float

    @property
    def n(self) -> int:
        return len(self.points)


def _pick_rotation(pts: np.ndarray, candidates: int = 61) -> tuple[float, float]:
    """Angle maximizing the smallest pairwise gap of rotated real parts."""
    best_phi, best_gap = 0.0, -1.0
    for j in range(candidates):
        phi = j * math.pi / candidates
        re = np.sort((pts * cmath.exp(-1j * phi)).real)
        gap = float(np.diff(re).min()) if len(re) > 1 else 1.0
        if gap > best_gap + 1e-15:
            best_gap, best_phi = gap, phi
    return best_phi, best_gap


def branch_points(curve: PlaneCurve, root_tol: float = 1e-13) -> BranchPointSet:
    """Roots of Res_y(f, f_y) plus the comb layout.

    Raises BranchPointError (shear and retry) when the y-leading
    coefficient is non-constant/zero or the discriminant has repeated
    roots.
    """
    m = curve.poly.ydegree()
    if m < 2:
        raise BranchPointError("curve has fewer than 2 sheets over the x-line")
    for (a, b), _ in curve.poly.terms:
        if b == m and a > 0:
            raise BranchPointError(
                "y-leading coefficient depends on x; shear and retry"
            )
    if not curve.poly.coeff(0, m):
        raise BranchPointError("y-leading coefficient vanishes; shear and retry")
    disc = resultant_y(curve.poly, curve.poly.diff_y())
    if disc.is_zero():
        raise BranchPointError("discriminant is identically zero (repeated factor)")
    if disc.degree == 0:
        raise BranchPointError("projection has no finite branch point")
    if not is_squarefree(disc):
        raise BranchPointError(
            "repeated discriminant roots; shear and retry"
        )
    res = find_roots(disc.to_complex_coeffs(), tol=root_tol)
    pts = res.roots
    scale = max(float(np.abs(pts).max()), 1e-6)
    dist = np.abs(pts[:, None] - pts[None, :])
    np.fill_diagonal(dist, np.inf)
    nn = dist.min(axis=1)
    if float(nn.min()) < 1e-9 * scale:
        raise BranchPointError(
            "branch points closer than the separation threshold; shear and retry"
        )
    phi, gap = _pick_rotation(pts)
    if gap <= 1e-9 * scale:
        raise BranchPointError(
            "no frame rotation separates the branch points' real parts; shear"
        )
    lam = cmath.exp(1j * phi)
    w = pts * np.conj(lam)
    order = np.lexsort((w.imag, w.real))
    pts = pts[order]
    w = w[order]
    nn = nn[order]
    n = len(pts)
    radii = np.minimum(0.5 * nn, 0.45 * gap)
    clearance = 0.2 * min(float(nn.min()), gap)
    maxr = float(radii.max())
    wb = 2.0 * max(float(np.abs(w).max()), 0.5)
    H = float(np.abs(w.imag).max()) + 2.0 * maxr + 0.25 * max(scale, 1.0)
    eps = 0.04 * max(H, 1.0) / max(n, 1)
    margin_east = wb - float(w.real.max())
    eta = min(0.1 * gap, 0.4 * margin_east / (n + 1))
    # leftmost point: deepest lane, eastmost descent
    lane_depths = H + (n - np.arange(n)) * eps
    descent_offsets = -np.arange(n, dtype=float) * eta
    return BranchPointSet(
        points=pts,
        discriminant=disc,
        discriminant_degree=disc.degree,
        basepoint=lam * wb,
        rotation=phi,
        radii=radii,
        clearance=clearance,
        min_re_gap=gap,
        lane_depths=lane_depths,
        descent_offsets=descent_offsets,
        lane_base=H,
    )


def loop_pieces(bset: BranchPointSet, k: int) -> tuple[list[Piece], Piece, list[Piece]]:
    """(outbound pieces, full circle, inbound pieces) for loop k, in
    original coordinates.  The inbound list is the reversed outbound."""
    lam = cmath.exp(1j * bset.rotation)
    w = bset.points[k] * np.conj(lam)
    wb = bset.basepoint * np.conj(lam)
    D = bset.lane_depths[k]
    off = bset.descent_offsets[k]
    r = float(bset.radii[k])
    p0 = wb
    p1 = complex(wb.real + off, -D)
    p2 = complex(w.real, -D)
    p3 = complex(w.real, w.imag - r)
    out_w = [p0, p1, p2, p3]
    out = [
        Piece("line", lam * out_w[i], lam * out_w[i + 1])
        for i in range(len(out_w) - 1)
    ]
    # full counterclockwise circle starting at the bottom of the branch disk
    theta0 = -math.pi / 2 + bset.rotation
    circle = Piece(
        "arc",
        complex(bset.points[k]),
        0.0,
        r,
        theta0,
        theta0 + 2 * math.pi,
    )
    inbound = [reversed_piece(p) for p in reversed(out)]
    return out, circle, inbound


def rectangle_pieces(bset: BranchPointSet) -> list[Piece]:
    """A big clockwise rectangle through the basepoint that encloses
    every branch point; used for the monodromy-at-infinity check."""
    lam = cmath.exp(1j * bset.rotation)
    w = bset.points * np.conj(lam)
    wb = bset.basepoint * np.conj(lam)
    maxr = float(bset.radii.max())
    D = float(bset.lane_depths.max()) + 3 * maxr + 1.0
    Hup = float(w.imag.max()) + 2 * maxr + 1.0
    west = float(w.real.min()) - 2 * maxr - 1.0
    cw = [
        wb,
        complex(wb.real, -D),
        complex(west, -D),
        complex(west, Hup),
        complex(wb.real, Hup),
        wb,
    ]
    return [Piece("line", lam * cw[i], lam * cw[i + 1]) for i in range(len(cw) - 1)]


def sample_points(piece: Piece, max_step: float) -> list[float]:
    """Parameter values subdividing a piece into steps of bounded length."""
    n = max(1, int(math.ceil(piece.length() / max(max_step, 1e-12))))
    return [i / n for i in range(n + 1)]
