"""Exact polynomial arithmetic over the Gaussian rationals.

Univariate polynomials are dense coefficient lists; bivariate ones are
sparse exponent dicts.  The bivariate resultant with respect to y is
computed by evaluation at integer points and Newton interpolation,
which keeps every intermediate a small univariate problem.

Squarefreeness tests are pre-screened modulo a Mersenne prime p with
p = 3 (mod 4), so that F_p[i] is a field; a constant gcd mod p already
certifies a constant gcd over Q(i).  Only the (rare) non-squarefree
path falls back to rational gcds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .gaussrat import QI, QI_ONE, QI_ZERO

SCREEN_PRIME = 2**61 - 1  # = 3 mod 4, so -1 is a non-residue


# ---------------------------------------------------------------------------
# univariate polynomials over QI


@dataclass(frozen=True)
class UPoly:
    """Dense univariate polynomial; coeffs[k] multiplies z^k."""

    coeffs: tuple[QI, ...]

    @staticmethod
    def of(cs) -> "UPoly":
        cs = list(cs)
        while cs and not cs[-1]:
            cs.pop()
        return UPoly(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> QI:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __call__(self, z: QI) -> QI:
        acc = QI_ZERO
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __add__(self, other: "UPoly") -> "UPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for k in range(n):
            a = self.coeffs[k] if k < len(self.coeffs) else QI_ZERO
            b = other.coeffs[k] if k < len(other.coeffs) else QI_ZERO
            out.append(a + b)
        return UPoly.of(out)

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self + other.scale(-QI_ONE)

    def __mul__(self, other: "UPoly") -> "UPoly":
        if self.is_zero() or other.is_zero():
            return UPoly(())
        out = [QI_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return UPoly.of(out)

    def scale(self, s: QI) -> "UPoly":
        return UPoly.of(c * s for c in self.coeffs)

    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        inv = QI_ONE / self.lc()
        return self.scale(inv)

    def derivative(self) -> "UPoly":
        return UPoly.of(
            self.coeffs[k].scale(Fraction(k)) for k in range(1, len(self.coeffs))
        )

    def rem(self, other: "UPoly") -> "UPoly":
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dv = other.coeffs
        inv = QI_ONE / other.lc()
        while len(r) >= len(dv):
            q = r[-1] * inv
            if q:
                off = len(r) - len(dv)
                for k in range(len(dv)):
                    r[off + k] = r[off + k] - q * dv[k]
            r.pop()
        return UPoly.of(r)

    def to_complex_coeffs(self):
        return [complex(c) for c in self.coeffs]


def upoly(*cs) -> UPoly:
    return UPoly.of(QI.of(c) if not isinstance(c, QI) else c for c in cs)


def u_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd by the Euclidean algorithm over Q(i)."""
    while not b.is_zero():
        r = a.rem(b)
        a, b = b, r.monic() if not r.is_zero() else r
    return a.monic() if not a.is_zero() else a


def u_resultant(p: UPoly, q: UPoly) -> QI:
    """Resultant via the Euclidean remainder sequence."""
    if p.is_zero() or q.is_zero():
        return QI_ZERO
    sign = 1
    res = QI_ONE
    a, b = p, q
    if a.degree < b.degree:
        if (a.degree * b.degree) % 2 == 1:
            sign = -sign
        a, b = b, a
    while b.degree > 0:
        r = a.rem(b)
        if r.is_zero():
            return QI_ZERO
        res = res * _power(b.lc(), a.degree - r.degree)
        if (a.degree * b.degree) % 2 == 1:
            sign = -sign
        a, b = b, r
    res = res * _power(b.coeffs[0], a.degree)
    return res if sign == 1 else -res


def _power(base: QI, n: int) -> QI:
    out = QI_ONE
    for _ in range(n):
        out = out * base
    return out


def is_squarefree(p: UPoly) -> bool:
    """Exact squarefreeness over Q(i), modular fast path first."""
    if p.is_zero():
        return False
    if p.degree == 0:
        return True
    verdict = _squarefree_mod(p, SCREEN_PRIME)
    if verdict is True:
        return True
    # fall back to a rational gcd (non-squarefree or unlucky prime)
    g = u_gcd(p, p.derivative())
    return g.degree <= 0


# ---------------------------------------------------------------------------
# modular image: F_p[i] with p = 3 mod 4 (a field with p^2 elements)


def _qi_mod(c: QI, p: int):
    """Image of an exact Gaussian rational in F_p[i], or None if a
    denominator dies mod p."""
    out = []
    for part in (c.re, c.im):
        den = part.denominator % p
        if den == 0:
            return None
        out.append(part.numerator % p * pow(den, -1, p) % p)
    return (out[0], out[1])


def _gi_mul(a, b, p):
    return (
        (a[0] * b[0] - a[1] * b[1]) % p,
        (a[0] * b[1] + a[1] * b[0]) % p,
    )


def _gi_inv(a, p):
    n = (a[0] * a[0] + a[1] * a[1]) % p
    if n == 0:
        return None
    ninv = pow(n, -1, p)
    return (a[0] * ninv % p, (-a[1]) * ninv % p)


def _upoly_mod(f: UPoly, p: int):
    out = []
    for c in f.coeffs:
        img = _qi_mod(c, p)
        if img is None:
            return None
        out.append(img)
    while out and out[-1] == (0, 0):
        out.pop()
    return out


def _mod_rem(a, b, p):
    r = list(a)
    inv = _gi_inv(b[-1], p)
    while len(r) >= len(b):
        q = _gi_mul(r[-1], inv, p)
        if q != (0, 0):
            off = len(r) - len(b)
            for k in range(len(b)):
                m = _gi_mul(q, b[k], p)
                r[off + k] = ((r[off + k][0] - m[0]) % p, (r[off + k][1] - m[1]) % p)
        r.pop()
    while r and r[-1] == (0, 0):
        r.pop()
    return r


def _squarefree_mod(f: UPoly, p: int):
    """True: certified squarefree.  None: screen unusable or negative
    (caller must confirm rationally)."""
    fm = _upoly_mod(f, p)
    if fm is None or len(fm) - 1 != f.degree:
        return None  # lc or a denominator vanished mod p
    # derivative mod p
    dm = [((k * c[0]) % p, (k * c[1]) % p) for k, c in enumerate(fm)][1:]
    while dm and dm[-1] == (0, 0):
        dm.pop()
    if not dm:
        return None
    a, b = fm, dm
    while b:
        if _gi_inv(b[-1], p) is None:
            return None
        a, b = b, _mod_rem(a, b, p)
    return True if len(a) == 1 else None


# ---------------------------------------------------------------------------
# bivariate polynomials over QI


@dataclass(frozen=True)
class BPoly:
    """Sparse bivariate polynomial: {(xdeg, ydeg): QI}."""

    terms: tuple[tuple[tuple[int, int], QI], ...]

    @staticmethod
    def of(d: dict) -> "BPoly":
        items = tuple(sorted((k, v) for k, v in d.items() if v))
        return BPoly(items)

    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((a + b for (a, b), _ in self.terms), default=-1)

    def ydegree(self) -> int:
        return max((b for (_, b), _ in self.terms), default=-1)

    def coeff(self, a: int, b: int) -> QI:
        for (i, j), c in self.terms:
            if (i, j) == (a, b):
                return c
        return QI_ZERO

    def __add__(self, other: "BPoly") -> "BPoly":
        d = dict(self.terms)
        for k, v in other.terms:
            d[k] = d.get(k, QI_ZERO) + v
        return BPoly.of(d)

    def __sub__(self, other: "BPoly") -> "BPoly":
        d = dict(self.terms)
        for k, v in other.terms:
            d[k] = d.get(k, QI_ZERO) - v
        return BPoly.of(d)

    def __mul__(self, other: "BPoly") -> "BPoly":
        d: dict = {}
        for (a1, b1), c1 in self.terms:
            for (a2, b2), c2 in other.terms:
                k = (a1 + a2, b1 + b2)
                d[k] = d.get(k, QI_ZERO) + c1 * c2
        return BPoly.of(d)

    def scale(self, s: QI) -> "BPoly":
        return BPoly.of({k: v * s for k, v in self.terms})

    def mul_monomial(self, a: int, b: int) -> "BPoly":
        return BPoly.of({(i + a, j + b): c for (i, j), c in self.terms})

    def diff_x(self) -> "BPoly":
        return BPoly.of(
            {(a - 1, b): c.scale(Fraction(a)) for (a, b), c in self.terms if a > 0}
        )

    def diff_y(self) -> "BPoly":
        return BPoly.of(
            {(a, b - 1): c.scale(Fraction(b)) for (a, b), c in self.terms if b > 0}
        )

    def top_form(self, d: int | None = None) -> "BPoly":
        """Homogeneous part of the given (default: actual) degree."""
        if d is None:
            d = self.degree
        return BPoly.of({(a, b): c for (a, b), c in self.terms if a + b == d})

    def shear(self, t: Fraction) -> "BPoly":
        """Substitute x -> x + t*y (exact; degree preserved)."""
        if t == 0:
            return self
        d: dict = {}
        for (a, b), c in self.terms:
            # (x + t y)^a expanded by binomials
            binom = 1
            tp = Fraction(1)
            for i in range(a, -1, -1):
                # coefficient of x^i y^(a-i): C(a, i) * t^(a-i)
                k = (i, b + a - i)
                d[k] = d.get(k, QI_ZERO) + c.scale(binom * tp)
                if i > 0:
                    binom = binom * i // (a - i + 1)
                    tp *= t
        return BPoly.of(d)

    def eval_xy(self, x: QI, y: QI) -> QI:
        acc = QI_ZERO
        for (a, b), c in self.terms:
            acc = acc + c * _power(x, a) * _power(y, b)
        return acc

    def y_coefficients(self) -> list[UPoly]:
        """coeffs[b] = coefficient of y^b, as a polynomial in x."""
        ydeg = self.ydegree()
        rows: list[dict] = [dict() for _ in range(ydeg + 1)]
        for (a, b), c in self.terms:
            rows[b][a] = c
        out = []
        for row in rows:
            n = max(row, default=-1)
            out.append(UPoly.of([row.get(k, QI_ZERO) for k in range(n + 1)]))
        return out

    def at_x(self, x0: QI) -> UPoly:
        """The univariate polynomial in y obtained by fixing x = x0."""
        return UPoly.of([c(x0) for c in self.y_coefficients()])

    def at_y(self, y0: QI) -> UPoly:
        xdeg = max((a for (a, _), _ in self.terms), default=-1)
        out = [QI_ZERO] * (xdeg + 1)
        for (a, b), c in self.terms:
            out[a] = out[a] + c * _power(y0, b)
        return UPoly.of(out)


def newton_interpolate(points: list[tuple[QI, QI]]) -> UPoly:
    """Exact polynomial through the given (node, value) pairs."""
    n = len(points)
    xs = [p for p, _ in points]
    coef = [v for _, v in points]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand the Newton form
    poly = UPoly(())
    basis = UPoly((QI_ONE,))
    for j in range(n):
        poly = poly + basis.scale(coef[j])
        basis = basis * UPoly.of([-xs[j], QI_ONE])
    return poly


def resultant_y(f: BPoly, g: BPoly) -> UPoly:
    """Res_y(f, g) as an exact polynomial in x.

    Evaluated at enough integer nodes and interpolated; the degree
    bound is the Sylvester bound (deg_y f + deg_y g) * max x-degree.
    """
    if f.is_zero() or g.is_zero():
        return UPoly(())
    xdeg = max(
        max((a for (a, _), _ in f.terms), default=0),
        max((a for (a, _), _ in g.terms), default=0),
    )
    bound = (f.ydegree() + g.ydegree()) * xdeg
    nodes: list[QI] = []
    k = 0
    while len(nodes) < bound + 1:
        nodes.append(QI.of(k))
        if k > 0 and len(nodes) < bound + 1:
            nodes.append(QI.of(-k))
        k += 1
    fy = f.y_coefficients()
    gy = g.y_coefficients()
    samples = []
    for x0 in nodes:
        pf = UPoly.of([c(x0) for c in fy])
        pg = UPoly.of([c(x0) for c in gy])
        samples.append((x0, u_resultant(pf, pg)))
    return newton_interpolate(samples)
