"""The congruent number curve E_n: y^2 = x^3 - n^2 x over a real number field.

Affine chord-tangent arithmetic with exact inversion, division polynomials
in x alone, and the finite-order sweep that certifies a point has infinite
order over a field of degree at most 3.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .errors import CurveMismatch, InvalidIndex, NotOnCurve
from .exact import Poly
from .number_field import QQ, FieldElement, NumberField

__all__ = [
    "CurveEn",
    "CurvePoint",
    "TORSION_ORDERS",
    "TorsionCertificate",
    "certify_infinite_order",
    "division_poly_sq",
    "point_add",
    "scalar_mul",
]

# Orders M with phi(M) <= 6: the only possible orders of a torsion point of
# E_n over a field of degree <= 3 (CM by Z[i]).
TORSION_ORDERS = frozenset({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 18})


def _euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


def _orders_with_small_phi(bound: int = 6) -> frozenset:
    # phi(M) >= sqrt(M/2), so M <= 2 * bound**2 covers every candidate
    return frozenset(m for m in range(1, 2 * bound * bound + 1) if _euler_phi(m) <= bound)


assert TORSION_ORDERS == _orders_with_small_phi(6), "torsion order table is inconsistent"


class CurveEn:
    """E_n over ``field``."""

    def __init__(self, n: int, field: NumberField = QQ):
        n = int(n)
        if n < 1:
            raise ValueError(f"n must be a positive integer, got {n}")
        self.n = n
        self.field = field

    def __eq__(self, other):
        if not isinstance(other, CurveEn):
            return NotImplemented
        return self.n == other.n and self.field == other.field

    def __hash__(self):
        return hash(("CurveEn", self.n, self.field))

    def __repr__(self):
        return f"CurveEn(n={self.n}, field={self.field.label})"

    @property
    def infinity(self) -> "CurvePoint":
        return CurvePoint(self, None, None)

    def rhs(self, x: FieldElement) -> FieldElement:
        return x * x * x - self.n * self.n * x

    def residual(self, x, y) -> FieldElement:
        x, y = self.field(x), self.field(y)
        return y * y - self.rhs(x)

    def point(self, x, y) -> "CurvePoint":
        """Affine point, checked to lie on the curve exactly."""
        x, y = self.field(x), self.field(y)
        res = y * y - self.rhs(x)
        if not res.is_zero():
            raise NotOnCurve(f"({x}, {y}) is not on y^2 = x^3 - {self.n * self.n}x: "
                             f"residual {res}", residual=res)
        return CurvePoint(self, x, y)

    def two_torsion(self) -> list["CurvePoint"]:
        n = self.n
        return [self.point(0, 0), self.point(n, 0), self.point(-n, 0)]


@dataclass(frozen=True, eq=False)
class CurvePoint:
    """Point on E_n; ``x is None`` encodes the point at infinity.

    Build affine points through :meth:`CurveEn.point` so the curve equation
    is checked.
    """

    curve: CurveEn
    x: Optional[FieldElement]
    y: Optional[FieldElement]

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        return self.curve == other.curve and self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.curve, self.x, self.y))

    def __repr__(self):
        if self.is_infinity:
            return f"CurvePoint(E_{self.curve.n}, infinity)"
        return f"CurvePoint(E_{self.curve.n}, ({self.x}, {self.y}))"

    def __neg__(self):
        if self.is_infinity:
            return self
        return CurvePoint(self.curve, self.x, -self.y)

    def __add__(self, other):
        return point_add(self, other)

    def __sub__(self, other):
        return point_add(self, -other)

    def __rmul__(self, k):
        return scalar_mul(k, self)

    def to_json(self):
        if self.is_infinity:
            return "infinity"
        return {"x": self.x.to_json(), "y": self.y.to_json()}


def point_add(p: CurvePoint, q: CurvePoint) -> CurvePoint:
    if p.curve != q.curve:
        raise CurveMismatch(f"{p.curve} vs {q.curve}")
    if p.is_infinity:
        return q
    if q.is_infinity:
        return p
    curve = p.curve
    if p.x == q.x:
        if p.y == -q.y:
            return curve.infinity
        # doubling; y != 0 here
        n2 = curve.n * curve.n
        slope = (3 * p.x * p.x - n2) / (2 * p.y)
    else:
        slope = (q.y - p.y) / (q.x - p.x)
    x3 = slope * slope - p.x - q.x
    y3 = slope * (p.x - x3) - p.y
    return curve.point(x3, y3)


def scalar_mul(k: int, p: CurvePoint) -> CurvePoint:
    """k*P by double-and-add."""
    if k < 0:
        return -scalar_mul(-k, p)
    result = p.curve.infinity
    addend = p
    while k:
        if k & 1:
            result = point_add(result, addend)
        k >>= 1
        if k:
            addend = point_add(addend, addend)
    return result


# ---------------------------------------------------------------------------
# division polynomials
#
# psi_m is h_m(x) for odd m and y*h_m(x) for even m; each value is carried as
# (h, e) meaning h*y^e with e in {0, 1}, and y^2 is replaced by x^3 + A x.

def _curve_poly(n: int) -> Poly:
    return Poly([0, -n * n, 0, 1])


def _times(f: Poly, *terms):
    h, e = Poly([1]), 0
    for th, te in terms:
        h = h * th
        e += te
    h = h * f ** (e // 2)
    return h, e % 2


def _minus(f: Poly, a, b):
    if a[1] != b[1]:
        raise ArithmeticError("parity mismatch in division polynomial recurrence")
    return a[0] - b[0], a[1]


@functools.lru_cache(maxsize=None)
def _psi(n: int, m: int):
    A = -n * n
    f = _curve_poly(n)
    if m == 0:
        return Poly(), 0
    if m == 1:
        return Poly([1]), 0
    if m == 2:
        return Poly([2]), 1
    if m == 3:
        return Poly([-A * A, 0, 6 * A, 0, 3]), 0
    if m == 4:
        return Poly([-A**3, 0, -5 * A * A, 0, 5 * A, 0, 1]) * 4, 1
    k = m // 2
    if m % 2:
        # psi_{2k+1} = psi_{k+2} psi_k^3 - psi_{k-1} psi_{k+1}^3
        pk, pk1, pkm1, pk2 = _psi(n, k), _psi(n, k + 1), _psi(n, k - 1), _psi(n, k + 2)
        return _minus(f, _times(f, pk2, pk, pk, pk), _times(f, pkm1, pk1, pk1, pk1))
    # psi_{2k} = psi_k (psi_{k+2} psi_{k-1}^2 - psi_{k-2} psi_{k+1}^2) / (2y)
    pk, pk1, pkm1, pk2, pkm2 = (_psi(n, k), _psi(n, k + 1), _psi(n, k - 1),
                                _psi(n, k + 2), _psi(n, k - 2))
    inner = _minus(f, _times(f, pk2, pkm1, pkm1), _times(f, pkm2, pk1, pk1))
    h, e = _times(f, pk, inner)
    return _drop_y(f, h * Fraction(1, 2), e)


def _drop_y(f: Poly, h: Poly, e: int):
    """Divide h*y^e by y."""
    if e == 1:
        return h, 0
    return h.exact_div(f), 1


def division_poly_sq(curve_or_n, m: int) -> Poly:
    """psi_m^2 as a polynomial in x alone (y^2 eliminated)."""
    n = curve_or_n.n if isinstance(curve_or_n, CurveEn) else int(curve_or_n)
    if m < 1:
        raise InvalidIndex(f"division polynomial index must be >= 1, got {m}")
    return _psi_sq(n, m)


@functools.lru_cache(maxsize=None)
def _psi_sq(n: int, m: int) -> Poly:
    h, e = _psi(n, m)
    return h * h * _curve_poly(n) ** e


def evaluate_division_poly_sq(m: int, x: FieldElement, n: int) -> FieldElement:
    """psi_m^2 at x, by Horner's rule in the field of ``x``."""
    return division_poly_sq(n, m)(x)


# ---------------------------------------------------------------------------
# torsion certificate

@dataclass
class TorsionCertificate:
    """Outcome of the finite-order sweep for one point.

    ``checks`` holds (m, psi_m^2(x_P)) for every m in TORSION_ORDERS, m >= 2.
    When every value is nonzero the point has infinite order.
    """

    point: CurvePoint
    verdict: str
    order: Optional[int] = None
    checks: list = dc_field(default_factory=list)

    @property
    def infinite_order(self) -> bool:
        return self.verdict == "infinite_order"

    def to_json(self) -> dict:
        out = {
            "point": self.point.to_json(),
            "verdict": self.verdict,
            "checks": [{"m": m, "value_nonzero": not v.is_zero()} for m, v in self.checks],
        }
        if self.order is not None:
            out["order"] = self.order
        return out


def certify_infinite_order(p: CurvePoint) -> TorsionCertificate:
    """Decide whether ``p`` is torsion over its field (degree <= 3).

    Any torsion point there has order in TORSION_ORDERS, and a nonzero affine
    point satisfies m*P = O exactly when psi_m^2(x_P) = 0, so nonvanishing at
    every listed m proves infinite order.
    """
    if p.curve.field.degree > 3:
        raise ValueError("torsion bound only covers fields of degree <= 3")
    if p.is_infinity:
        return TorsionCertificate(p, "torsion", order=1)
    if p.y.is_zero():
        return TorsionCertificate(p, "torsion", order=2)
    checks = []
    order = None
    for m in sorted(TORSION_ORDERS - {1}):
        value = evaluate_division_poly_sq(m, p.x, p.curve.n)
        checks.append((m, value))
        if order is None and value.is_zero():
            order = m
    verdict = "torsion" if order is not None else "infinite_order"
    return TorsionCertificate(p, verdict, order=order, checks=checks)
