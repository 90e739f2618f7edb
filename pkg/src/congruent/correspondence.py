"""Right triangles of area n versus points on E_n.

A triangle (a, b, c) with a^2 + b^2 = c^2 and ab/2 = n gives the points
x = a(a +- c)/2, y = a*x; a point with y != 0 gives back
a = |y/x|, b = 2n|x/y|, c = (x^2 + n^2)/|y|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .elliptic import CurveEn, CurvePoint, certify_infinite_order, point_add
from .errors import NonPositiveSide, NotCertified, NotRightTriangle, TorsionInput, WrongArea
from .number_field import QQ, FieldElement, NumberField

__all__ = [
    "Triangle",
    "decimal_string",
    "generate_triangles",
    "point_to_triangle",
    "triangle_new",
    "triangle_to_points",
]


@dataclass(frozen=True)
class Triangle:
    """Legs a, b and hypotenuse c, all in one real field, with area n.

    Use :func:`triangle_new` to build one; it checks the invariants exactly.
    """

    a: FieldElement
    b: FieldElement
    c: FieldElement
    n: int

    @property
    def field(self) -> NumberField:
        return self.a.field

    def canonical(self) -> "Triangle":
        """Same triangle with a <= b under the real embedding."""
        if self.a <= self.b:
            return self
        return Triangle(self.b, self.a, self.c, self.n)

    def leg_key(self) -> frozenset:
        return frozenset((self.a, self.b))

    def same_legs(self, other: "Triangle") -> bool:
        return self.leg_key() == other.leg_key()

    def to_json(self, approx_digits: int = 10) -> dict:
        return {
            "n": self.n,
            "field_label": self.field.label,
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "c": self.c.to_json(),
            "approx": {
                "a": decimal_string(self.a, approx_digits),
                "b": decimal_string(self.b, approx_digits),
                "c": decimal_string(self.c, approx_digits),
            },
        }


def decimal_string(value: FieldElement, digits: int = 10) -> str:
    """Decimal display of a real field element, truncated toward -inf.

    The value is enclosed to within 10**-(digits+1) first, so the string is
    within 1.1 * 10**-digits of the true value.
    """
    iv = value.approx(Fraction(1, 10 ** (digits + 1)))
    scaled = math.floor(iv.lo * 10**digits)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def triangle_new(a, b, c, n: int, field: Optional[NumberField] = None) -> Triangle:
    """Validated triangle; raises on the first violated condition."""
    if field is None:
        field = next((v.field for v in (a, b, c) if isinstance(v, FieldElement)), QQ)
    a, b, c = field(a), field(b), field(c)
    n = int(n)
    pyth = a * a + b * b - c * c
    if not pyth.is_zero():
        raise NotRightTriangle(f"a^2 + b^2 - c^2 = {pyth}, not 0", residual=pyth)
    area = a * b / 2 - n
    if not area.is_zero():
        raise WrongArea(f"ab/2 - n = {area}, not 0", residual=area)
    for name, side in (("a", a), ("b", b), ("c", c)):
        if side.sign() <= 0:
            raise NonPositiveSide(f"side {name} = {side} is not positive")
    return Triangle(a, b, c, n)


def triangle_to_points(t: Triangle) -> tuple[CurvePoint, CurvePoint]:
    """The two points x = a(a + c)/2 and x = a(a - c)/2 with y = a*x."""
    curve = CurveEn(t.n, t.field)
    x_plus = t.a * (t.a + t.c) / 2
    x_minus = t.a * (t.a - t.c) / 2
    return curve.point(x_plus, t.a * x_plus), curve.point(x_minus, t.a * x_minus)


def point_to_triangle(p: CurvePoint) -> Triangle:
    if p.is_infinity or p.y.is_zero():
        raise TorsionInput(f"{p} has y = 0 or is the point at infinity; no triangle")
    n = p.curve.n
    x, y = p.x, p.y
    abs_y = abs(y)
    a = abs(y / x)
    b = 2 * n * abs(x / y)
    c = (x * x + n * n) / abs_y
    return triangle_new(a, b, c, n, field=p.curve.field)


def generate_triangles(p: CurvePoint, count: int, max_steps: Optional[int] = None) -> list[Triangle]:
    """First ``count`` distinct triangles from P, 2P, 3P, ...

    Triangles are deduplicated on the unordered pair of legs and returned with
    a <= b.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    cert = certify_infinite_order(p)
    if not cert.infinite_order:
        raise NotCertified(f"{p} is torsion (order {cert.order}); it yields finitely many triangles")
    cap = max_steps if max_steps is not None else 10 * count
    seen = set()
    out = []
    q = p
    for _ in range(cap):
        tri = point_to_triangle(q).canonical()
        key = tri.leg_key()
        if key not in seen:
            seen.add(key)
            out.append(tri)
            if len(out) == count:
                return out
        q = point_add(q, p)
    raise RuntimeError(f"only {len(out)} distinct triangles after {cap} multiples")

