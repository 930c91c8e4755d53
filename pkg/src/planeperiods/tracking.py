"""Analytic continuation of y-fibers along paths in the x-plane.

A fiber is the vector of the sheet values y_1..y_m over a point x
(m = y-degree of the curve).  Continuation steps use an Euler
predictor dy = -f_x/f_y dx followed by Newton correction on every
sheet at once; a step is accepted only when each corrected root stays
closest to its own prediction by a comfortable margin, otherwise the
step is bisected.  That keeps sheet ordering trustworthy without any
global re-matching.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import PlaneCurve
from .roots import find_roots


class TrackingError(RuntimeError):
    pass


class CurveNumeric:
    """Double-precision view of an exact curve."""

    def __init__(self, curve: PlaneCurve):
        self.curve = curve
        self.d = curve.d
        ydeg = curve.poly.ydegree()
        xdeg = max((a for (a, _), _ in curve.poly.terms), default=0)
        C = np.zeros((xdeg + 1, ydeg + 1), dtype=complex)
        for (a, b), c in curve.poly.terms:
            C[a, b] = complex(c)
        self.C = C
        self.n_sheets = ydeg
        self.Cabs = np.abs(C)

    def y_coeffs_at(self, x: complex) -> np.ndarray:
        """Coefficients of f(x, .) as a polynomial in y (low-to-high)."""
        out = np.zeros(self.C.shape[1], dtype=complex)
        for a in range(self.C.shape[0] - 1, -1, -1):
            out = out * x + self.C[a]
        return out

    def _eval_rows(self, rows: np.ndarray, x: complex, y: np.ndarray) -> np.ndarray:
        cy = np.zeros(rows.shape[1], dtype=complex)
        for a in range(rows.shape[0] - 1, -1, -1):
            cy = cy * x + rows[a]
        acc = np.zeros_like(y)
        for b in range(cy.size - 1, -1, -1):
            acc = acc * y + cy[b]
        return acc

    def f(self, x: complex, y: np.ndarray) -> np.ndarray:
        return self._eval_rows(self.C, x, y)

    def f_y(self, x: complex, y: np.ndarray) -> np.ndarray:
        rows = self.C[:, 1:] * np.arange(1, self.C.shape[1])
        return self._eval_rows(rows, x, y)

    def f_x(self, x: complex, y: np.ndarray) -> np.ndarray:
        if self.C.shape[0] == 1:
            return np.zeros_like(y)
        rows = self.C[1:, :] * np.arange(1, self.C.shape[0])[:, None]
        return self._eval_rows(rows, x, y)

    def scale(self, x: complex, y: np.ndarray) -> np.ndarray:
        """sum |c_ab| |x|^a |y|^b, for relative residuals."""
        ax, ay = abs(x), np.abs(y)
        cy = np.zeros(self.Cabs.shape[1], dtype=float)
        for a in range(self.Cabs.shape[0] - 1, -1, -1):
            cy = cy * ax + self.Cabs[a]
        acc = np.zeros_like(ay)
        for b in range(cy.size - 1, -1, -1):
            acc = acc * ay + cy[b]
        return np.maximum(acc, 1e-300)

    def fiber_at(self, x: complex, tol: float = 1e-13) -> np.ndarray:
        """All sheet values over x via the simultaneous root finder."""
        coeffs = self.y_coeffs_at(x)
        if abs(coeffs[-1]) < 1e-14 * (np.abs(coeffs).max() + 1e-300):
            raise TrackingError(
                f"leading y-coefficient nearly vanishes at x={x}; shear first"
            )
        return find_roots(coeffs, tol=tol).roots


def _newton_correct(cn: CurveNumeric, x: complex, y: np.ndarray, tol: float):
    for _ in range(16):
        fv = cn.f(x, y)
        sc = cn.scale(x, y)
        if np.all(np.abs(fv) <= tol * sc):
            return y, True
        dfy = cn.f_y(x, y)
        bad = np.abs(dfy) < 1e-290
        if np.any(bad):
            return y, False
        y = y - fv / dfy
    fv = cn.f(x, y)
    return y, bool(np.all(np.abs(fv) <= 10 * tol * cn.scale(x, y)))


def continue_fiber(
    cn: CurveNumeric,
    x0: complex,
    fiber: np.ndarray,
    x1: complex,
    tol: float = 1e-12,
    max_depth: int = 48,
) -> np.ndarray:
    """Continue the whole fiber from x0 to x1 along the segment."""
    if x0 == x1:
        return fiber.copy()
    y = np.asarray(fiber, dtype=complex)
    stack = [(x0, x1, 0)]
    cur_x = x0
    while stack:
        a, b, depth = stack.pop()
        if a != cur_x:
            raise TrackingError("internal: discontiguous tracking stack")
        sep = _min_separation(y)
        dfy = cn.f_y(a, y)
        if np.any(np.abs(dfy) < 1e-290):
            raise TrackingError(f"df/dy vanished on a sheet at x={a}")
        dy = -cn.f_x(a, y) / dfy * (b - a)
        pred = y + dy
        ynew, ok = _newton_correct(cn, b, pred.copy(), tol)
        if ok:
            moved = np.abs(ynew - y)
            drift = np.abs(ynew - pred)
            limit = 0.25 * sep
            ok = bool(np.all(drift <= np.maximum(limit, 1e3 * tol * (1 + np.abs(y))))
                      and np.all(moved <= 4 * sep + np.abs(b - a) * 1e3))
            if ok and _min_separation(ynew) < 1e-9 * (1 + np.abs(ynew).max()):
                ok = False
        if ok:
            y = ynew
            cur_x = b
        else:
            if depth >= max_depth:
                raise TrackingError(
                    f"step size underflow near x={a} (depth {depth})"
                )
            mid = (a + b) / 2
            stack.append((mid, b, depth + 1))
            stack.append((a, mid, depth + 1))
    return y


def _min_separation(y: np.ndarray) -> float:
    if y.size < 2:
        return np.inf
    diff = np.abs(y[:, None] - y[None, :])
    np.fill_diagonal(diff, np.inf)
    return float(diff.min())


def track_fiber(
    curve: PlaneCurve,
    path: list[complex],
    start_fiber,
    tol: float = 1e-12,
    clearance_points: list[complex] | None = None,
    clearance: float = 0.0,
) -> np.ndarray:
    """Continue start_fiber along the polyline path, preserving the
    ordering-by-continuation.  Optionally enforces a clearance from a
    set of points (branch points)."""
    cn = CurveNumeric(curve)
    y = np.asarray(start_fiber, dtype=complex)
    if y.size != cn.n_sheets:
        raise ValueError(f"fiber has {y.size} entries, curve has {cn.n_sheets} sheets")
    resid = np.abs(cn.f(path[0], y)) / cn.scale(path[0], y)
    if np.any(resid > 1e-6):
        raise ValueError("start fiber does not satisfy the curve equation")
    if clearance_points is not None and clearance > 0:
        pts = np.asarray(clearance_points, dtype=complex)
        for a, b in zip(path[:-1], path[1:]):
            if _segment_distance(pts, a, b) < clearance * 0.999:
                raise TrackingError("path violates branch-point clearance")
    for a, b in zip(path[:-1], path[1:]):
        y = continue_fiber(cn, a, y, b, tol=tol)
    return y


def _segment_distance(pts: np.ndarray, a: complex, b: complex) -> float:
    """Distance from each point to segment [a, b], minimized."""
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0:
        return float(np.abs(pts - a).min())
    t = np.clip(((pts - a) * np.conj(ab)).real / denom, 0.0, 1.0)
    proj = a + t * ab
    return float(np.abs(pts - proj).min())


def match_to_fiber(reference: np.ndarray, moved: np.ndarray) -> np.ndarray:
    """Permutation p with moved[i] ~ reference[p[i]]; requires an
    unambiguous nearest match."""
    dist = np.abs(moved[:, None] - reference[None, :])
    p = np.argmin(dist, axis=1)
    if len(set(p.tolist())) != reference.size:
        raise TrackingError("ambiguous fiber matching (sheets collided)")
    best = dist[np.arange(dist.shape[0]), p]
    dist[np.arange(dist.shape[0]), p] = np.inf
    second = dist.min(axis=1)
    if np.any(best > 0.45 * second):
        raise TrackingError("fiber matching margin too small")
    return p
