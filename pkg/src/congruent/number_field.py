"""Real number fields Q(theta) of degree at most 3.

A field is a monic minimal polynomial plus an isolating interval for the
real root that defines the embedding into R. Irreducibility for degree <= 3
is the absence of rational roots.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import FieldMismatch, NoRealRoot, Reducible
from .exact import (
    Interval,
    Poly,
    RationalLike,
    as_rational,
    bisect_root,
    ext_gcd,
    format_rational,
    isolate_real_roots,
    rational_roots,
)

__all__ = ["NumberField", "FieldElement", "QQ"]


class NumberField:
    """Q(theta) for a designated real root theta of ``min_poly``.

    When the polynomial has several real roots the largest one is designated
    (for t^2 - m this is +sqrt(m)).
    """

    def __init__(self, min_poly: Poly, label: Optional[str] = None, *,
                 variable: str = "t", metadata: Optional[dict] = None):
        if not isinstance(min_poly, Poly):
            min_poly = Poly(min_poly)
        d = min_poly.degree
        if not 1 <= d <= 3:
            raise ValueError(f"degree must be 1, 2 or 3, got {d}")
        if min_poly.lead != 1:
            raise ValueError(f"minimal polynomial must be monic: {min_poly}")
        if d >= 2:
            roots = rational_roots(min_poly)
            if roots:
                raise Reducible(f"{min_poly} has the rational root {format_rational(roots[0])}",
                                root=roots[0])
            intervals = isolate_real_roots(min_poly)
            if not intervals:
                raise NoRealRoot(f"{min_poly} has no real root")
            interval = intervals[-1]
        else:
            interval = Interval.point(-min_poly.coeffs[0])
        self.min_poly = min_poly
        self.degree = d
        self.variable = variable
        self.label = label or self._default_label()
        self.metadata = dict(metadata or {})
        self._interval = interval
        self._lock = threading.Lock()

    def _default_label(self) -> str:
        if self.degree == 1:
            return "Q"
        return f"Q({self.variable}: {self.min_poly} = 0)"

    # -- constructors -------------------------------------------------------

    @classmethod
    def rationals(cls) -> "NumberField":
        return cls(Poly([0, 1]), "Q")

    @classmethod
    def quadratic(cls, m: int) -> "NumberField":
        """Q(sqrt(m)) with the positive square root designated; m must be a
        positive non-square integer."""
        m = int(m)
        if m <= 0:
            raise NoRealRoot(f"Q(sqrt({m})) is not a real field")
        return cls(Poly([-m, 0, 1]), f"Q(sqrt({m}))", variable=f"sqrt({m})")

    # -- identity -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, NumberField):
            return NotImplemented
        return self is other or self.min_poly == other.min_poly

    def __hash__(self):
        return hash(("NumberField", self.min_poly))

    def __repr__(self):
        return f"NumberField({self.label})"

    # -- the real embedding -------------------------------------------------

    @property
    def root_interval(self) -> Interval:
        return self._interval

    def refine(self, width: Optional[RationalLike] = None) -> Interval:
        """Shrink the isolating interval (at least one bisection).

        The new interval is computed outside the lock and swapped in only if
        it is tighter, so readers always see a valid isolating interval.
        """
        current = self._interval
        if self.degree == 1:
            return current
        target = as_rational(width) if width is not None else current.width / 2
        iv = current
        while True:
            iv = bisect_root(self.min_poly, iv)
            if iv.width <= target:
                break
        with self._lock:
            if iv.width < self._interval.width:
                self._interval = iv
            return self._interval

    # -- elements -----------------------------------------------------------

    def element(self, coeffs: Iterable[RationalLike]) -> "FieldElement":
        """Element c0 + c1*theta + ...; longer inputs are reduced."""
        return self.from_poly(Poly(coeffs))

    def from_poly(self, p: Poly) -> "FieldElement":
        if p.degree >= self.degree:
            p = p % self.min_poly
        cs = list(p.coeffs) + [Fraction(0)] * (self.degree - len(p.coeffs))
        return FieldElement(self, cs, _trusted=True)

    def __call__(self, value: Union[RationalLike, "FieldElement"]) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"element of {value.field.label} used in {self.label}")
            return value
        return self.element([value])

    @property
    def zero(self) -> "FieldElement":
        return self.element([0])

    @property
    def one(self) -> "FieldElement":
        return self.element([1])

    @property
    def theta(self) -> "FieldElement":
        return self.from_poly(Poly([0, 1]))

    def to_json(self) -> dict:
        iv = self.root_interval
        out = {
            "min_poly": self.min_poly.to_json(),
            "root_interval": [format_rational(iv.lo), format_rational(iv.hi)],
            "label": self.label,
        }
        if self.metadata:
            out["metadata"] = self.metadata
        return out

    @classmethod
    def from_json(cls, data: dict) -> "NumberField":
        field = cls(Poly.from_json(data["min_poly"]), data.get("label"),
                    metadata=data.get("metadata"))
        return field


QQ = NumberField.rationals()


class FieldElement:
    """c0 + c1*theta + ... + c_{d-1}*theta^(d-1) in a NumberField."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: Iterable[RationalLike], *, _trusted=False):
        cs = tuple(coeffs) if _trusted else tuple(as_rational(c) for c in coeffs)
        if len(cs) != field.degree:
            raise ValueError(f"expected {field.degree} coefficients, got {len(cs)}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def poly(self) -> Poly:
        return Poly(self.coeffs)

    def _other(self, other) -> Optional["FieldElement"]:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field.label} vs {other.field.label}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field.element([other])
        return None

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, [a + b for a, b in zip(self.coeffs, o.coeffs)], _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coeffs], _trusted=True)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, [a - b for a, b in zip(self.coeffs, o.coeffs)], _trusted=True)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return FieldElement(self.field, [a * other for a in self.coeffs], _trusted=True)
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.field.degree == 1:
            return FieldElement(self.field, [self.coeffs[0] * o.coeffs[0]], _trusted=True)
        return self.field.from_poly(self.poly() * o.poly())

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError(f"division by zero in {self.field.label}")
        if self.field.degree == 1:
            return FieldElement(self.field, [1 / self.coeffs[0]], _trusted=True)
        # u*a + v*f = 1 since f is irreducible and a != 0 mod f
        g, u, _ = ext_gcd(self.poly(), self.field.min_poly)
        if g.degree != 0:
            raise ArithmeticError(f"{self.field.min_poly} is not irreducible")
        return self.field.from_poly(u)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field, self.coeffs))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def enclosure(self) -> Interval:
        """Interval containing the real-embedding value at the current
        precision of the field's isolating interval."""
        if self.is_rational():
            return Interval.point(self.coeffs[0])
        return self.poly()(self.field.root_interval)

    def sign(self) -> int:
        """Exact sign under the designated real embedding."""
        if self.is_zero():
            return 0
        if self.is_rational():
            c = self.coeffs[0]
            return (c > 0) - (c < 0)
        while True:
            s = self.enclosure().sign()
            if s is not None:
                return s
            self.field.refine()

    def approx(self, width: RationalLike) -> Interval:
        """Rational interval of width <= ``width`` around the real value."""
        width = as_rational(width)
        if width <= 0:
            raise ValueError("width must be positive")
        while True:
            iv = self.enclosure()
            if iv.width <= width:
                return iv
            self.field.refine()

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    # -- display ------------------------------------------------------------

    def __repr__(self):
        return f"FieldElement({self.field.label}, {self})"

    def __str__(self):
        if self.is_rational():
            return format_rational(self.coeffs[0])
        var = self.field.variable
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = format_rational(abs(c)) + ("*" + mono if mono else "")
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, body in parts[1:]:
            out += f" {s} {body}"
        return out

    def to_json(self) -> dict:
        return {"field_label": self.field.label, "coeffs": [format_rational(c) for c in self.coeffs]}
