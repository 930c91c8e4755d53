"""Plane curves with exact coefficients, smoothness testing, shears.

The smoothness test is sound but incomplete by design: a curve is
declared Smooth only when, in some sheared coordinate frame,

  (a) the y-leading coefficient is a nonzero constant,
  (b) Res_y(f, df/dy) is squarefree of the full degree d(d-1), and
  (c) the top-degree form factors into distinct linear forms.

(b) rules out affine singularities (a singular point forces a repeated
discriminant root), (c) rules out singular points at infinity.  Both
are checked exactly.  Singular is only reported with an exhibited
exact common zero of f, f_x, f_y; anything else after the shear retry
budget is Inconclusive.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .gaussrat import QI, QI_ZERO
from .monomials import Monomial
from .polys import BPoly, UPoly, is_squarefree, resultant_y, u_gcd


class Verdict(enum.Enum):
    SMOOTH = "Smooth"
    SINGULAR = "Singular"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class SmoothnessReport:
    verdict: Verdict
    detail: str = ""
    witness: Optional[tuple[QI, QI]] = None
    frame_shear: Optional[Fraction] = None


@dataclass
class PlaneCurve:
    """Degree-d curve f(x, y) = 0 with exact Gaussian-rational terms."""

    d: int
    poly: BPoly
    smoothness: Optional[SmoothnessReport] = None
    degenerate: bool = field(default=False, repr=False)

    @staticmethod
    def from_terms(terms, d: int | None = None, allow_degenerate: bool = False):
        """terms: iterable of (coefficient, Monomial)."""
        acc: dict = {}
        for c, m in terms:
            key = (m.xdeg, m.ydeg)
            acc[key] = acc.get(key, QI_ZERO) + c
        poly = BPoly.of(acc)
        if poly.is_zero():
            raise ValueError("curve polynomial is identically zero")
        true_d = poly.degree
        if d is None:
            d = true_d
        if true_d > d:
            raise ValueError(f"terms reach degree {true_d} > declared {d}")
        degenerate = true_d < d
        if degenerate and not allow_degenerate:
            raise ValueError(
                f"no term of total degree {d}; pass allow_degenerate to keep "
                f"the declared degree anyway"
            )
        return PlaneCurve(d=d, poly=poly, degenerate=degenerate)

    @property
    def terms(self):
        return [
            (c, Monomial(a, b)) for (a, b), c in self.poly.terms
        ]

    def f_x(self) -> BPoly:
        return self.poly.diff_x()

    def f_y(self) -> BPoly:
        return self.poly.diff_y()

    def lead_y_coeff(self) -> QI:
        """Coefficient of y^d (a scalar when the curve has full degree)."""
        return self.poly.coeff(0, self.d)


def shear(curve: PlaneCurve, t: Fraction | int) -> PlaneCurve:
    """x -> x + t*y; an isomorphism of the curve, so only the verdict's
    frame changes.  The verdict is dropped and recomputed on demand."""
    t = Fraction(t)
    sheared = curve.poly.shear(t)
    return PlaneCurve(d=curve.d, poly=sheared, degenerate=curve.degenerate)


def shear_candidates(seed: int, budget: int) -> list[Fraction]:
    """Deterministic nonzero shear parameters tried after t = 0."""
    rng = random.Random(seed)
    out = []
    while len(out) < budget:
        t = Fraction(rng.randint(1, 9), rng.randint(2, 9))
        if rng.random() < 0.5:
            t = -t
        if t != 0 and t not in out:
            out.append(t)
    return out


def _rational_root_candidates(p: UPoly) -> list[QI]:
    """Small-height Gaussian-rational candidates for roots of p, used
    only by the singular-witness search."""
    cands = []
    for a in range(-3, 4):
        for b in range(-3, 4):
            cands.append(QI.of(a, b))
    # rational-root-theorem candidates when p has rational coefficients
    if all(not c.im for c in p.coeffs) and not p.is_zero():
        nums = abs(p.coeffs[0].re.numerator) if p.coeffs[0] else 0
        dens = abs(p.lc().re.numerator * p.lc().re.denominator)
        if 0 < nums <= 10**6 and 0 < dens <= 10**6:
            for n in _divisors(nums):
                for m in _divisors(dens):
                    cands.append(QI.of(Fraction(n, m)))
                    cands.append(QI.of(Fraction(-n, m)))
    return cands


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = [k for k in range(1, min(n, 60) + 1) if n % k == 0]
    if n not in out:
        out.append(n)
    return out


def _witness_search(curve: PlaneCurve, disc: UPoly) -> Optional[tuple[QI, QI]]:
    """Try to exhibit an exact common zero of f, f_x, f_y."""
    f, fx, fy = curve.poly, curve.f_x(), curve.f_y()
    g = u_gcd(disc, disc.derivative()) if not disc.is_zero() else disc
    xcands = _rational_root_candidates(g if not g.is_zero() else disc)
    seen = set()
    for x0 in xcands:
        if x0 in seen:
            continue
        seen.add(x0)
        py = f.at_x(x0)
        pdy = fy.at_x(x0)
        if py.is_zero() or pdy.is_zero():
            common = py if pdy.is_zero() else pdy
        else:
            common = u_gcd(py, pdy)
        if common.is_zero() or common.degree < 1:
            continue
        if common.degree == 1:
            y0 = -common.coeffs[0] / common.coeffs[1]
            ys = [y0]
        else:
            ys = [y for y in _rational_root_candidates(common) if not common(y)]
        for y0 in ys:
            if (
                not f.eval_xy(x0, y0)
                and not fx.eval_xy(x0, y0)
                and not fy.eval_xy(x0, y0)
            ):
                return (x0, y0)
    return None


def _infinity_check(curve: PlaneCurve) -> str:
    """Smoothness at the line at infinity: "smooth", "singular" or
    "unknown".

    A direction [x0 : y0] with a simple root of the top form f_d is a
    transverse, hence smooth, point.  At a repeated root the gradient
    of the homogenized curve reduces to the degree-(d-1) part f_{d-1},
    so the point is smooth iff f_{d-1} does not vanish there.  Both
    conditions are exact gcd computations."""
    d = curve.d
    top = curve.poly.top_form(d)
    if top.is_zero():
        return "unknown"
    sub = curve.poly.top_form(d - 1)
    p = top.at_y(QI.of(1))  # f_d(u, 1); the direction [1 : 0] is u = infinity
    m_inf = d - p.degree
    if m_inf >= 2:
        if not sub.coeff(d - 1, 0):
            return "singular"
    rep = u_gcd(p, p.derivative()) if p.degree >= 1 else UPoly(())
    if not rep.is_zero() and rep.degree >= 1:
        q = sub.at_y(QI.of(1))
        if q.is_zero():
            return "singular"
        if u_gcd(rep, q).degree >= 1:
            return "singular"
    return "smooth"


def _const_lead(frame: PlaneCurve) -> bool:
    """True when the coefficient of y^(y-degree) has no x-dependence,
    so no sheet escapes to infinity over a finite x."""
    m = frame.poly.ydegree()
    return not any(b == m and a > 0 for (a, b), _ in frame.poly.terms)


def smoothness_check(
    curve: PlaneCurve,
    retries: int = 5,
    seed: int = 0,
) -> SmoothnessReport:
    """Classify a curve as Smooth / Singular / Inconclusive.

    Affine part: with a constant y-leading coefficient, any affine
    singular point forces a repeated root of Res_y(f, f_y) (the local
    intersection number of f and f_y is at least 2 there), so a
    squarefree discriminant certifies affine smoothness; the generic
    discriminant degree d(d-1) is reported but a smaller degree is
    legitimate when the curve is tangent to the line at infinity.
    Infinity is settled exactly by the gradient criterion.  Smoothness
    is coordinate-free, so the check shears internally as needed; the
    input curve is never modified.
    """
    d = curve.d
    if d < 3:
        return SmoothnessReport(Verdict.INCONCLUSIVE, "degree below 3")
    infinity = _infinity_check(curve)
    frames = [Fraction(0)] + shear_candidates(seed, retries)
    detail = []
    if infinity == "singular":
        detail.append("singular point on the line at infinity")
    if infinity == "unknown":
        detail.append(f"no degree-{d} term; not smooth as a degree-{d} curve")
    for t in frames:
        frame = curve if t == 0 else shear(curve, t)
        if frame.poly.ydegree() < 2:
            detail.append(f"t={t}: fewer than 2 sheets")
            continue
        if not _const_lead(frame):
            detail.append(f"t={t}: y-leading coefficient depends on x")
            continue
        disc = resultant_y(frame.poly, frame.f_y())
        if disc.is_zero():
            detail.append(f"t={t}: resultant identically zero (repeated factor)")
            continue
        if is_squarefree(disc):
            if infinity == "smooth":
                degree_note = (
                    "full generic degree"
                    if disc.degree == d * (d - 1)
                    else f"degree {disc.degree} < {d * (d - 1)} "
                    "(tangency at infinity)"
                )
                return SmoothnessReport(
                    Verdict.SMOOTH,
                    f"squarefree discriminant ({degree_note}) in frame t={t} "
                    "and smooth at infinity",
                    frame_shear=t,
                )
            # affine part is clean; the obstruction lives at infinity
            detail.append(f"t={t}: affine part smooth")
            break
        detail.append(f"t={t}: discriminant not squarefree")
        w = _witness_search(frame, disc)
        if w is not None:
            return SmoothnessReport(
                Verdict.SINGULAR,
                f"common zero of f, f_x, f_y in frame t={t}",
                witness=_unshear_point(w, t),
                frame_shear=t,
            )
    if infinity != "smooth":
        w = _witness_search(curve, UPoly(()))
        if w is not None:
            return SmoothnessReport(
                Verdict.SINGULAR,
                "common zero of f, f_x, f_y",
                witness=w,
                frame_shear=Fraction(0),
            )
    return SmoothnessReport(Verdict.INCONCLUSIVE, "; ".join(detail))


def _unshear_point(pt: tuple[QI, QI], t: Fraction) -> tuple[QI, QI]:
    """Map a point found in the sheared frame back to input coordinates:
    the frame substituted x -> x + t*y, so (x0, y0) corresponds to
    (x0 + t*y0, y0) on the original curve."""
    x0, y0 = pt
    return (x0 + y0.scale(Fraction(t)), y0)


def ensure_smooth(curve: PlaneCurve, retries: int = 5, seed: int = 0) -> SmoothnessReport:
    if curve.smoothness is None:
        curve.smoothness = smoothness_check(curve, retries=retries, seed=seed)
    return curve.smoothness


# ---------------------------------------------------------------------------
# curve files: "degree <d>" header, then "<re> <im> <a> <b>" per term


def parse_curve(text: str, allow_degenerate: bool = False) -> PlaneCurve:
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines or not lines[0].startswith("degree"):
        raise ValueError('curve file must start with a "degree <d>" line')
    try:
        d = int(lines[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise ValueError(f"bad degree line {lines[0]!r}") from exc
    terms = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 4:
            raise ValueError(f"expected '<re> <im> <a> <b>', got {ln!r}")
        re_s, im_s, a_s, b_s = parts
        coeff = QI.of(Fraction(re_s), Fraction(im_s))
        terms.append((coeff, Monomial(int(a_s), int(b_s))))
    return PlaneCurve.from_terms(terms, d=d, allow_degenerate=allow_degenerate)


def format_curve(curve: PlaneCurve) -> str:
    lines = [f"degree {curve.d}"]
    for (a, b), c in curve.poly.terms:
        lines.append(f"{c.re} {c.im} {a} {b}")
    return "\n".join(lines) + "\n"


def load_curve(path, allow_degenerate: bool = False) -> PlaneCurve:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_curve(fh.read(), allow_degenerate=allow_degenerate)


def save_curve(curve: PlaneCurve, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_curve(curve))


def fermat_curve(d: int, constant: int = -1) -> PlaneCurve:
    """x^d + y^d + constant = 0."""
    one = QI.of(1)
    return PlaneCurve.from_terms(
        [
            (one, Monomial(d, 0)),
            (one, Monomial(0, d)),
            (QI.of(constant), Monomial(0, 0)),
        ],
        d=d,
    )


def random_smooth_curve(
    d: int,
    seed: int,
    max_tries: int = 40,
    coeff_bound: int = 3,
) -> PlaneCurve:
    """Random dense curve with small rational coefficients, retried
    until the smoothness certificate succeeds.  Deterministic in seed."""
    rng = random.Random(seed)
    for _ in range(max_tries):
        terms = []
        for total in range(d + 1):
            for b in range(total + 1):
                num = rng.randint(-coeff_bound, coeff_bound)
                den = rng.choice([1, 1, 2, 3])
                if num or total == d:
                    if total == d and num == 0:
                        num = rng.choice([1, -1, 2, -2])
                    terms.append(
                        (QI.of(Fraction(num, den)), Monomial(total - b, b))
                    )
        try:
            curve = PlaneCurve.from_terms(terms, d=d)
        except ValueError:
            continue
        report = smoothness_check(curve, retries=2, seed=seed)
        if report.verdict is Verdict.SMOOTH:
            curve.smoothness = report
            return curve
    raise RuntimeError(f"no random smooth curve of degree {d} found (seed {seed})")
