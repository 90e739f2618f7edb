"""Witness factories: quadratic-field triangles, twist search on
m*y^2 = x^4 + 4n^2, and the explicit cubic-field point P_lambda.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterator, Optional

from .correspondence import Triangle, point_to_triangle, triangle_new, triangle_to_points
from .elliptic import CurveEn, CurvePoint, TorsionCertificate, certify_infinite_order
from .errors import DegenerateN4, ExceptionalTorsionPair, IdentityViolated
from .exact import (
    Interval,
    Poly,
    RationalLike,
    as_rational,
    format_rational,
    is_rational_square,
    rational_roots,
    refine_root,
    squarefree_part,
)
from .number_field import QQ, FieldElement, NumberField

__all__ = [
    "CnmPoint",
    "CubicWitness",
    "DesbovesCheck",
    "KappaLambda",
    "QuadraticWitness",
    "cnm_candidates",
    "cnm_point_search",
    "coord_closed_form",
    "cubic_polynomial",
    "cubic_witness",
    "desboves_identity_check",
    "desboves_sides",
    "kappa_lambda_closed_form",
    "quadratic_witness",
    "substituted_identity_check",
    "tzt_point",
]

# Q(sqrt(2)) carries extra torsion on E_1 and E_2
EXCEPTIONAL_PAIRS = frozenset({(1, 2), (2, 2)})


# ---------------------------------------------------------------------------
# polynomial identities

def desboves_sides(X, Y):
    """(left, right) of Desboves' quartic identity at (X, Y)."""
    left = (Y * Y + 2 * X * Y - X * X) ** 4 + (2 * X**3 * Y + X * X * Y * Y) * (2 * X + 2 * Y) ** 4
    right = (X**4 + Y**4 + 10 * X * X * Y * Y + 4 * X * Y**3 + 12 * X**3 * Y) ** 2
    return left, right


@dataclass
class DesbovesCheck:
    points: list = dc_field(default_factory=list)
    residuals: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r == 0 for r in self.residuals)

    def to_json(self) -> dict:
        return {"evaluations": len(self.points), "all_zero": self.ok,
                "nonzero": [[format_rational(x), format_rational(y)]
                            for (x, y), r in zip(self.points, self.residuals) if r]}


def _random_rational(rng: random.Random, bound: int = 10**6) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def desboves_identity_check(samples: int = 100, grid: int = 50, seed: int = 0) -> DesbovesCheck:
    """Evaluate the identity on a grid x grid block of distinct rationals plus
    ``samples`` random points.

    Both sides have degree 8 in each variable, so agreement on a grid with
    more than 8 values per axis already proves the identity.
    """
    if grid < 9:
        raise ValueError("grid must have at least 9 values per axis to prove the identity")
    values = [Fraction(2 * i - grid + 1, 3) for i in range(grid)]
    rng = random.Random(seed)
    points = [(x, y) for x in values for y in values]
    points += [(_random_rational(rng), _random_rational(rng)) for _ in range(samples)]
    check = DesbovesCheck()
    for x, y in points:
        left, right = desboves_sides(x, y)
        check.points.append((x, y))
        check.residuals.append(left - right)
    if not check.ok:
        raise IdentityViolated(f"Desboves identity fails at {len(check.points) - sum(r == 0 for r in check.residuals)} points")
    return check


def substituted_identity_check(lam):
    """Residual of the identity obtained from X = 1 - 2*lam, Y = 4*lam."""
    lam = as_rational(lam) if not isinstance(lam, FieldElement) else lam
    u = 1 - 12 * lam + 4 * lam * lam
    w = 1 + 40 * lam - 104 * lam**2 + 160 * lam**3 + 16 * lam**4
    d = 8 * lam * (2 * lam - 1) ** 2
    return u**4 + d * (2 * (1 + 2 * lam)) ** 4 - w * w


# ---------------------------------------------------------------------------
# quadratic fields

@dataclass
class QuadraticWitness:
    n: int
    b: Fraction
    m: Fraction
    s: int
    field: NumberField
    sqrt_m: FieldElement
    triangle: Triangle
    point: CurvePoint
    minus_point: CurvePoint
    certificate: TorsionCertificate

    def to_json(self, approx_digits: int = 10) -> dict:
        return {
            "n": self.n,
            "construction": "quadratic",
            "parameters": {"b": format_rational(self.b), "m": format_rational(self.m), "s": self.s},
            "field": self.field.to_json(),
            "triangle": self.triangle.to_json(approx_digits),
            "point": self.point.to_json(),
            "minus_point": self.minus_point.to_json(),
            "certificate": self.certificate.to_json(),
            "cross_checks": {
                "cb_equals_sqrt_m": self.triangle.c * self.b == self.sqrt_m,
                "torsion_sweep_agrees": self.certificate.infinite_order,
            },
        }


def _sqrt_in_field(m: Fraction, s: int, field: NumberField) -> FieldElement:
    r = is_rational_square(m / s)
    if r is None:
        raise ArithmeticError(f"{m} is not {s} times a square")
    if s == 1:
        return field(r)
    return r * field.theta


def quadratic_field_for(s: int) -> NumberField:
    return QQ if s == 1 else NumberField.quadratic(s)


def quadratic_witness(n: int, b: RationalLike = 1) -> QuadraticWitness:
    """Triangle (2n/b, b, sqrt(4n^2 + b^4)/b) over Q(sqrt(s)), s the
    square-free part of 4n^2 + b^4."""
    n = int(n)
    b = as_rational(b)
    if n < 1:
        raise ValueError("n must be a positive integer")
    if b <= 0:
        raise ValueError("b must be a positive rational")
    m = 4 * n * n + b**4
    s = squarefree_part(m)
    if (n, s) in EXCEPTIONAL_PAIRS:
        raise ExceptionalTorsionPair(
            f"b = {format_rational(b)} gives Q(sqrt({s})), where E_{n} has extra torsion; "
            f"choose another b", n=n, s=s)
    field = quadratic_field_for(s)
    sqrt_m = _sqrt_in_field(m, s, field)
    tri = triangle_new(2 * n / b, b, sqrt_m / b, n, field=field)
    plus, minus = triangle_to_points(tri)
    cert = certify_infinite_order(plus)
    return QuadraticWitness(n, b, m, s, field, sqrt_m, tri, plus, minus, cert)


@dataclass(frozen=True)
class CnmPoint:
    """Rational point (x, y) on m*y^2 = x^4 + 4n^2 with y >= 0."""

    n: int
    m: int
    x: Fraction
    y: Fraction

    @property
    def convertible(self) -> bool:
        return self.x != 0

    def to_witness(self) -> QuadraticWitness:
        """Quadratic witness with b = |x|; its hypotenuse is y*sqrt(m)/|x|."""
        if not self.convertible:
            raise ValueError("x = 0 gives no triangle")
        w = quadratic_witness(self.n, abs(self.x))
        sqrt_m = _sqrt_in_field(Fraction(self.m), w.s, w.field)
        if w.triangle.c != self.y * sqrt_m / abs(self.x):
            raise ArithmeticError("twist point and quadratic witness disagree")
        return w

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "x": format_rational(self.x), "y": format_rational(self.y)}


def cnm_candidates(height: int) -> Iterator[Fraction]:
    """x = p/q in lowest terms, ordered by max(|p|, q), then q, then |p|,
    positive before negative."""
    for h in range(1, height + 1):
        for q in range(1, h + 1):
            for p in range(0, h + 1):
                if max(p, q) != h or math.gcd(p, q) != 1:
                    continue
                yield Fraction(p, q)
                if p:
                    yield Fraction(-p, q)


def cnm_point_search(n: int, m: int, height: int) -> Optional[CnmPoint]:
    """First rational point on m*y^2 = x^4 + 4n^2 with height <= ``height``."""
    n, m = int(n), int(m)
    if m == 0:
        raise ValueError("m must be nonzero")
    if height < 1:
        raise ValueError("height must be >= 1")
    c = 4 * n * n
    for x in cnm_candidates(height):
        y = is_rational_square((x**4 + c) / m)
        if y is not None:
            return CnmPoint(n, m, x, y)
    return None


# ---------------------------------------------------------------------------
# cubic fields

def cubic_polynomial(n: int) -> Poly:
    """32 t^3 - 32 t^2 + 8 t + n^2 (integer form)."""
    return Poly([n * n, 8, -32, 32])


def tzt_point(lam):
    """(x, y) on y^2 = x^3 + d(lam) x from the substituted identity."""
    u = 1 - 12 * lam + 4 * lam * lam
    w = 1 + 40 * lam - 104 * lam**2 + 160 * lam**3 + 16 * lam**4
    t = 1 + 2 * lam
    x = u * u / (4 * t * t)
    y = u * w / (8 * t**3)
    return x, y


def coord_closed_form(n: int, lam):
    """Closed-form coordinates of P_lambda as quadratics in lambda
    (undefined for n = 4)."""
    n2 = n * n
    k = n2 - 16
    if k == 0:
        raise DegenerateN4("closed-form coordinates have the factor n^2 - 16 in the denominator")
    n4, n6, n8 = n2 * n2, n2**3, n2**4
    x = (256 + 992 * n2 + 65 * n4
         + (1024 - 2688 * n2 - 28 * n4) * lam
         + (1024 + 1920 * n2 + 4 * n4) * lam * lam) * Fraction(1, 4 * k * k)
    y = (-16384 + 72704 * n2 + 80960 * n4 + 2868 * n6 - n8
         + (196608 - 462848 * n2 - 145152 * n4 - 1456 * n6) * lam
         + (196608 + 421888 * n2 + 100608 * n4 + 208 * n6) * lam * lam) * Fraction(1, 32 * k**3)
    return x, y


@dataclass
class KappaLambda:
    """Certified enclosures of kappa(n) and lambda(n) from the radical formula."""

    n: int
    radicand: str
    kappa: Interval
    lam: Interval
    root_interval: Interval
    consistent: bool

    def to_json(self) -> dict:
        return {
            "radicand": self.radicand,
            "kappa_enclosure": [format_rational(self.kappa.lo), format_rational(self.kappa.hi)],
            "lambda_enclosure": [format_rational(self.lam.lo), format_rational(self.lam.hi)],
            "consistent_with_root_isolation": self.consistent,
        }


def _kth_root_interval(v: Interval, k: int, eps: Fraction) -> Interval:
    """Enclosure of the real k-th root of every point of v > 0."""

    def lower(a: Fraction) -> Fraction:
        lo, hi = Fraction(0), max(Fraction(1), a)
        while hi - lo > eps:
            mid = (lo + hi) / 2
            if mid**k <= a:
                lo = mid
            else:
                hi = mid
        return lo

    def upper(a: Fraction) -> Fraction:
        lo, hi = Fraction(0), max(Fraction(1), a)
        while hi - lo > eps:
            mid = (lo + hi) / 2
            if mid**k >= a:
                hi = mid
            else:
                lo = mid
        return hi

    return Interval(lower(v.lo), upper(v.hi))


def kappa_lambda_closed_form(n: int, width: RationalLike = Fraction(1, 10**12)) -> KappaLambda:
    """kappa = cbrt(-8 - 27n^2 + 3 sqrt(48n^2 + 81n^4)) (the negative real cube
    root) and lambda = 1/3 + kappa/12 + 1/(3 kappa), both enclosed to ``width``."""
    n = int(n)
    width = as_rational(width)
    if width <= 0:
        raise ValueError("width must be positive")
    disc = 48 * n**2 + 81 * n**4
    shift = -8 - 27 * n**2
    radicand = f"{shift}+3*sqrt({disc})"
    eps = width / 64
    while True:
        sq = _kth_root_interval(Interval.point(disc), 2, eps)
        inner = shift + 3 * sq
        if inner.hi >= 0:
            eps /= 16
            continue
        kappa = -_kth_root_interval(-inner, 3, eps)
        lam = Fraction(1, 3) + kappa * Fraction(1, 12) + (3 * kappa).reciprocal()
        if kappa.width <= width and lam.width <= width:
            break
        eps /= 16
    cubic = cubic_polynomial(n)
    roots = rational_roots(cubic)
    if roots:
        root_iv = Interval.point(roots[-1])
    else:
        field = _cubic_field(n)
        root_iv = refine_root(field.min_poly, field.root_interval, width)
    return KappaLambda(n, radicand, kappa, lam, root_iv, lam.intersects(root_iv))


def _cubic_field(n: int) -> NumberField:
    monic = cubic_polynomial(n).monic()
    return NumberField(monic, f"Q(lambda_{n})", variable="lambda",
                       metadata={"integer_min_poly": cubic_polynomial(n).to_json()})


@dataclass
class CubicWitness:
    n: int
    field: NumberField
    lam: FieldElement
    d_check: FieldElement
    point: CurvePoint
    triangle: Triangle
    certificate: TorsionCertificate
    coord_agrees: Optional[bool]
    closed_form: Optional[KappaLambda] = None

    @property
    def d_equation_holds(self) -> bool:
        return self.d_check == -self.n * self.n

    def to_json(self, approx_digits: int = 10) -> dict:
        plus, minus = triangle_to_points(self.triangle)
        out = {
            "n": self.n,
            "construction": "cubic",
            "field": self.field.to_json(),
            "lambda": self.lam.to_json(),
            "triangle": self.triangle.to_json(approx_digits),
            "point": self.point.to_json(),
            "triangle_points": {"plus": plus.to_json(), "minus": minus.to_json()},
            "certificate": self.certificate.to_json(),
            "cross_checks": {
                "coord_agrees": self.coord_agrees,
                "d_equation_holds": self.d_equation_holds,
            },
        }
        if self.closed_form is not None:
            out["kappa"] = self.closed_form.to_json()
        return out


def cubic_witness(n: int, closed_form: bool = True) -> CubicWitness:
    """P_lambda on E_n over Q(lambda), lambda the real root of
    32 t^3 - 32 t^2 + 8 t + n^2, with its certificate and triangle.

    A rational real root (n = 20, lambda = -2, ...) gives a witness over Q.
    n = 4 is refused: lambda = -1/2 kills both coordinate formulas.
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be a positive integer")
    cubic = cubic_polynomial(n)
    roots = rational_roots(cubic)
    if roots:
        # the critical values n^2 + 16/27 and n^2 are positive: one real root
        field = QQ
        lam = QQ(roots[0])
    else:
        field = _cubic_field(n)
        lam = field.theta
    if (1 + 2 * lam).is_zero():
        raise DegenerateN4(
            f"n = {n}: the cubic has the root lambda = -1/2, so 1 + 2*lambda = 0 and "
            f"n^2 - 16 = 0; both coordinate formulas are singular. "
            f"Use the quadratic construction instead.")
    d_check = 8 * lam * (2 * lam - 1) ** 2
    if d_check != -n * n:
        raise ArithmeticError(f"8*lambda*(2*lambda - 1)^2 = {d_check}, expected {-n * n}")
    x, y = tzt_point(lam)
    curve = CurveEn(n, field)
    point = curve.point(x, y)
    coord_agrees = None
    if n * n != 16:
        cx, cy = coord_closed_form(n, lam)
        coord_agrees = (cx == x and cy == y)
    cert = certify_infinite_order(point)
    tri = point_to_triangle(point).canonical()
    kl = kappa_lambda_closed_form(n) if closed_form else None
    return CubicWitness(n, field, lam, d_check, point, tri, cert, coord_agrees, kl)
