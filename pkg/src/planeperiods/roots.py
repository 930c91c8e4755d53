"""Simultaneous root finding for complex polynomials (Aberth iteration).

All roots are refined together from starting points on a scaled
circle; convergence is cubic for simple roots and no external
eigenvalue solver is involved.  Residuals are measured against the
magnitude-weighted evaluation scale so the tolerance is relative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class RootFindingError(RuntimeError):
    pass


@dataclass
class RootResult:
    roots: np.ndarray
    residuals: np.ndarray
    iterations: int
    converged: bool


def _horner_all(coeffs: np.ndarray, z: np.ndarray):
    """Evaluate p and p' at each z (coeffs low-to-high)."""
    p = np.zeros_like(z)
    dp = np.zeros_like(z)
    for c in coeffs[::-1]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _scale_at(coeffs_abs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """sum |a_k| |z|^k, the natural evaluation magnitude."""
    az = np.abs(z)
    s = np.zeros(z.shape, dtype=float)
    for c in coeffs_abs[::-1]:
        s = s * az + c
    return np.maximum(s, 1e-300)


def roots(coeffs, tol: float = 1e-13, max_iter: int = 200) -> np.ndarray:
    """All complex roots of sum coeffs[k] z^k; raises on non-convergence."""
    return find_roots(coeffs, tol=tol, max_iter=max_iter).roots


def find_roots(coeffs, tol: float = 1e-13, max_iter: int = 200) -> RootResult:
    a = np.asarray(coeffs, dtype=complex)
    while a.size and a[-1] == 0:
        a = a[:-1]
    if a.size < 2:
        raise ValueError("need degree >= 1 with nonzero leading coefficient")
    n = a.size - 1
    a = a / a[-1]
    a_abs = np.abs(a)
    # Cauchy bound for the root radius
    radius = 1.0 + float(np.max(a_abs[:-1]))
    angles = 2.0 * np.pi * (np.arange(n) + 0.25) / n + 0.42
    z = radius * np.exp(1j * angles)
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        p, dp = _horner_all(a, z)
        scale = _scale_at(a_abs, z)
        if np.all(np.abs(p) <= tol * scale):
            converged = True
            break
        w = np.where(dp != 0, p / np.where(dp == 0, 1, dp), p)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        s = np.sum(1.0 / diff, axis=1)
        denom = 1.0 - w * s
        denom = np.where(np.abs(denom) < 1e-30, 1e-30, denom)
        z = z - w / denom
    p, _ = _horner_all(a, z)
    res = np.abs(p) / _scale_at(a_abs, z)
    if not converged and np.any(res > tol * 100):
        raise RootFindingError(
            f"root iteration did not converge in {max_iter} steps; "
            f"worst relative residual {res.max():.3e}"
        )
    order = np.lexsort((z.imag.round(9), z.real.round(9)))
    return RootResult(roots=z[order], residuals=res[order], iterations=it, converged=True)
