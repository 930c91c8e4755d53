"""Period matrices: integrate the adjoint differentials over the
canonical cycles and normalize.

Differential j is m_j(x, y) dx / (df/dy)(x, y).  For each branch-point
loop the engine integrates all sheets and all differentials in one
tracked pass, producing a tensor L[k][sheet][j]; a cycle is an integer
chain of lifted loops, so its period vector is a plain linear
combination of tensor rows.  Nothing is ever symmetrized: the symmetry
residual of the normalized matrix is the primary quality alarm for the
whole pipeline.

Normalization convention: rows index cycles, columns differentials,
A[i, j] = integral over alpha_i of omega_j, and Omega = B A^{-1}.
That order is the one that makes the re-normalized differentials
satisfy integral_{alpha_i} omega_hat_k = delta_ik: writing
omega_hat = omega A^{-1} (a column-operation on differentials), the
alpha periods of omega_hat are A A^{-1} = I and the beta periods are
B A^{-1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .curves import PlaneCurve, Verdict, ensure_smooth, shear, shear_candidates
from .homology import CanonicalHomology, CycleWord, canonical_homology
from .monodromy import MonodromyRep, monodromy
from .monomials import monomials_up_to
from .paths import BranchPointError, Piece, branch_points, loop_pieces, piece_velocity
from .tracking import CurveNumeric, continue_fiber, match_to_fiber


class PeriodError(RuntimeError):
    pass


class QuadratureError(PeriodError):
    pass


@dataclass
class PeriodMatrix:
    d: int
    A: np.ndarray
    B: np.ndarray
    Omega: np.ndarray
    diagnostics: dict
    shear_t: Fraction
    homology: CanonicalHomology = field(repr=False, default=None)
    mono: MonodromyRep = field(repr=False, default=None)


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


class _Integrator:
    def __init__(self, curve: PlaneCurve, g_basis, tracking_tol, quad_tol, max_depth=26):
        self.cn = CurveNumeric(curve)
        self.track_tol = tracking_tol
        self.quad_tol = quad_tol
        self.max_depth = max_depth
        self.a_list = np.array([m.xdeg for m in g_basis])
        self.b_list = np.array([m.ydeg for m in g_basis])
        self.max_a = int(self.a_list.max())
        self.max_b = int(self.b_list.max())
        self.n_evals = 0

    def integrand(self, x: complex, y: np.ndarray, dx: complex) -> np.ndarray:
        xp = np.empty(self.max_a + 1, dtype=complex)
        xp[0] = 1.0
        for a in range(1, self.max_a + 1):
            xp[a] = xp[a - 1] * x
        yp = np.empty((y.size, self.max_b + 1), dtype=complex)
        yp[:, 0] = 1.0
        for b in range(1, self.max_b + 1):
            yp[:, b] = yp[:, b - 1] * y
        mono = xp[self.a_list][None, :] * yp[:, self.b_list]
        fy = self.cn.f_y(x, y)
        if np.any(np.abs(fy) < 1e-12 * self.cn.scale(x, y)):
            raise QuadratureError(
                f"df/dy below the safety floor at x={x}; path too close to a "
                "ramification point"
            )
        return mono / fy[:, None] * dx

    def _panel(self, piece: Piece, t0: float, t1: float, fiber0: np.ndarray):
        y = fiber0
        prev = piece.at(t0)
        half = 0.5 * (t1 - t0)
        mid = 0.5 * (t0 + t1)
        acc = None
        for node, w in zip(_GL_NODES, _GL_WEIGHTS):
            t = mid + half * node
            x = piece.at(t)
            y = continue_fiber(self.cn, prev, y, x, tol=self.track_tol)
            prev = x
            self.n_evals += 1
            val = self.integrand(x, y, piece_velocity(piece, t)) * (w * half)
            acc = val if acc is None else acc + val
        end = piece.at(t1)
        y = continue_fiber(self.cn, prev, y, end, tol=self.track_tol)
        return acc, y

    def _adaptive(self, piece, t0, t1, fiber0, whole, depth):
        tm = 0.5 * (t0 + t1)
        left, fm = self._panel(piece, t0, tm, fiber0)
        right, f1 = self._panel(piece, tm, t1, fm)
        fine = left + right
        err = float(np.abs(fine - whole).max())
        if err <= self.quad_tol * (1.0 + float(np.abs(fine).max())):
            return fine, f1
        if depth >= self.max_depth:
            raise QuadratureError(
                f"quadrature did not converge on [{t0}, {t1}] of a "
                f"{piece.kind} piece (error {err:.2e})"
            )
        L, fm2 = self._adaptive(piece, t0, tm, fiber0, left, depth + 1)
        R, f12 = self._adaptive(piece, tm, t1, fm2, right, depth + 1)
        return L + R, f12

    def piece_integral(self, piece: Piece, fiber0: np.ndarray, panels: int):
        total = None
        fiber = fiber0
        for i in range(panels):
            t0, t1 = i / panels, (i + 1) / panels
            whole, _ = self._panel(piece, t0, t1, fiber)
            val, fiber = self._adaptive(piece, t0, t1, fiber, whole, 0)
            total = val if total is None else total + val
        return total, fiber


def prepare_projection(curve: PlaneCurve, seed: int = 0, retries: int = 5):
    """Shear until the x-projection has a constant y-lead and a
    squarefree discriminant.  Deterministic in the seed."""
    attempts = [Fraction(0)] + shear_candidates(seed, retries)
    last = None
    for t in attempts:
        work = curve if t == 0 else shear(curve, t)
        try:
            bset = branch_points(work)
            return work, t, bset
        except BranchPointError as exc:
            last = exc
    raise PeriodError(
        f"no shear in the retry budget gave a clean projection: {last}"
    )


def loop_tensor(
    curve: PlaneCurve,
    mono: MonodromyRep,
    g_basis,
    tracking_tol: float = 1e-12,
    quad_tol: float = 1e-10,
):
    """L[k][sheet][j]: integral of differential j along the lift of
    loop k starting on the given base sheet."""
    integ = _Integrator(curve, g_basis, tracking_tol, quad_tol)
    bset = mono.branch
    m = mono.n_sheets
    g = len(g_basis)
    L = np.zeros((bset.n, m, g), dtype=complex)
    for k in range(bset.n):
        out_pieces, circle, _ = loop_pieces(bset, k)
        I_out = np.zeros((m, g), dtype=complex)
        fiber = mono.base_fiber
        for piece in out_pieces:
            panels = max(2, min(6, int(np.ceil(piece.length()))))
            val, fiber = integ.piece_integral(piece, fiber, panels)
            I_out += val
        bottom = fiber
        I_circ, after = integ.piece_integral(circle, bottom, 8)
        p = match_to_fiber(bottom, after)
        if not np.array_equal(p, mono.perms[k]):
            raise PeriodError(
                f"loop {k}: quadrature pass saw permutation {p}, "
                f"monodromy pass saw {mono.perms[k]}"
            )
        # the return leg retraces the outbound path on permuted sheets
        L[k] = I_out + I_circ - I_out[mono.perms[k], :]
    return L


def cycle_periods(L: np.ndarray, cycle: CycleWord) -> np.ndarray:
    """Period vector of one cycle from the loop tensor (linear in the
    chain, so tree connectors cancel exactly)."""
    g = L.shape[2]
    out = np.zeros(g, dtype=complex)
    for (k, i), c in cycle.chain:
        out += c * L[k, i, :]
    return out


def normalize(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Omega = B A^{-1} (the alpha-period block is inverted)."""
    n = A.shape[0]
    if A.shape != (n, n) or B.shape != (n, n):
        raise ValueError("A and B must be square of equal size")
    cond = np.linalg.cond(A)
    if not np.isfinite(cond) or cond > 1e12:
        raise PeriodError(f"alpha-period block numerically singular (cond {cond:.2e})")
    return np.linalg.solve(A.T, B.T).T


@dataclass
class RiemannReport:
    passed: bool
    sym_residual: float
    min_im_eigenvalue: float


def riemann_validate(Omega: np.ndarray, tol: float = 1e-6) -> RiemannReport:
    """Symmetric with positive definite imaginary part, to tolerance.

    Definiteness is tested on the symmetrized imaginary part so the two
    diagnostics stay independent."""
    sym = float(np.abs(Omega - Omega.T).max())
    im = 0.5 * (Omega.imag + Omega.imag.T)
    eigs = np.linalg.eigvalsh(im)
    return RiemannReport(
        passed=bool(sym <= tol and eigs.min() > 0),
        sym_residual=sym,
        min_im_eigenvalue=float(eigs.min()),
    )


def period_matrix(
    curve: PlaneCurve,
    tracking_tol: float = 1e-12,
    quad_tol: float = 1e-10,
    seed: int = 0,
    retries: int = 5,
    degree_cap: int = 8,
) -> PeriodMatrix:
    """Full pipeline: shear, monodromy, homology, integration."""
    report = ensure_smooth(curve, retries=retries, seed=seed)
    if report.verdict is not Verdict.SMOOTH:
        raise PeriodError(
            f"period engine needs a Smooth curve, got {report.verdict.value}"
        )
    if curve.d > degree_cap:
        raise PeriodError(
            f"degree {curve.d} exceeds the configured cap {degree_cap}"
        )
    work, t_used, bset = prepare_projection(curve, seed=seed, retries=retries)
    mono = monodromy(work, tracking_tol=tracking_tol)
    hom = canonical_homology(mono)
    g_basis = monomials_up_to(curve.d - 3)
    g = len(g_basis)
    if hom.genus != g:
        raise PeriodError(
            f"homology genus {hom.genus} != adjoint count {g}"
        )
    L = loop_tensor(work, mono, g_basis, tracking_tol, quad_tol)
    A = np.array([cycle_periods(L, c) for c in hom.alpha])
    B = np.array([cycle_periods(L, c) for c in hom.beta])
    Omega = normalize(A, B)
    sym = float(np.abs(Omega - Omega.T).max())
    scale = float(np.abs(Omega).max())
    im = 0.5 * (Omega.imag + Omega.imag.T)
    eigs = np.linalg.eigvalsh(im)
    diagnostics = {
        "sym_residual": sym,
        "sym_residual_rel": sym / scale if scale > 0 else sym,
        "min_im_eigenvalue": float(eigs.min()),
        "A_condition_estimate": float(np.linalg.cond(A)),
        "max_entry": scale,
    }
    return PeriodMatrix(
        d=curve.d,
        A=A,
        B=B,
        Omega=Omega,
        diagnostics=diagnostics,
        shear_t=t_used,
        homology=hom,
        mono=mono,
    )


def integrate_cycle(
    curve: PlaneCurve,
    g_basis,
    cycle: CycleWord,
    mono: MonodromyRep,
    tracking_tol: float = 1e-12,
    quad_tol: float = 1e-10,
) -> np.ndarray:
    """Periods of the adjoint differentials along one cycle."""
    L = loop_tensor(curve, mono, g_basis, tracking_tol, quad_tol)
    return cycle_periods(L, cycle)
