"""Exact arithmetic substrate: rationals, polynomials over Q, real roots.

Rationals are :class:`fractions.Fraction` throughout; it already keeps the
canonical reduced form with a positive denominator, which is what makes
structural equality trustworthy in the torsion certificates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Optional, Sequence, Union

from .errors import NotUniqueRealRoot, ZeroInput

__all__ = [
    "Interval",
    "IsolatingInterval",
    "Poly",
    "X",
    "as_rational",
    "bisect_root",
    "count_real_roots",
    "ext_gcd",
    "format_rational",
    "integer_divisors",
    "is_rational_square",
    "isolate_real_roots",
    "isolate_unique_real_root",
    "poly_gcd",
    "rational_roots",
    "refine_root",
    "squarefree_part",
    "sturm_sequence",
]

RationalLike = Union[int, Fraction, str]


# ---------------------------------------------------------------------------
# rationals

def as_rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a Fraction.

    Accepts ints, Fractions and strings of the form ``"p/q"`` or ``"p"``.
    Floats are refused: nothing in the trusted path is allowed to be inexact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational number")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(q: RationalLike) -> str:
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def is_rational_square(a: RationalLike) -> Optional[Fraction]:
    """Return the nonnegative rational square root of ``a``, or None."""
    a = as_rational(a)
    if a < 0:
        return None
    # reduced form: a is a square iff numerator and denominator both are
    p, q = a.numerator, a.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def squarefree_part(a: RationalLike) -> int:
    """The unique square-free integer s with a = s * (rational square).

    The sign of ``a`` is kept.
    """
    a = as_rational(a)
    if a == 0:
        raise ZeroInput("squarefree_part of 0 is undefined")
    sign = -1 if a < 0 else 1
    # p/q = p*q / q**2, so sf(p/q) = sf(p*q)
    rest = abs(a.numerator) * a.denominator
    # once primes up to rest**(1/3) are gone the cofactor has at most two
    # prime factors, so it is square-free unless it is a perfect square
    limit = _icbrt(rest) + 1
    s = 1
    d = 2
    while d <= limit and d * d <= rest:
        if rest % d == 0:
            e = 0
            while rest % d == 0:
                rest //= d
                e += 1
            if e % 2:
                s *= d
        d = 3 if d == 2 else d + 2
    if rest > 1:
        r = math.isqrt(rest)
        if r * r != rest:
            s *= rest
    return sign * s


def _icbrt(n: int) -> int:
    if n < 0:
        raise ValueError("negative")
    lo, hi = 0, 1
    while hi**3 <= n:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**3 <= n:
            lo = mid
        else:
            hi = mid
    return lo


def integer_divisors(n: int) -> list[int]:
    """Positive divisors of ``n != 0`` by trial division, sorted."""
    n = abs(n)
    if n == 0:
        raise ZeroInput("0 has infinitely many divisors")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


# ---------------------------------------------------------------------------
# intervals

@dataclass(frozen=True)
class Interval:
    """Closed rational interval [lo, hi] with exact interval arithmetic.

    Also used as the isolating-interval type, where the designated root lies
    strictly inside and the polynomial has opposite signs at the endpoints.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value: RationalLike) -> "Interval":
        value = as_rational(value)
        return cls(value, value)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi

    def sign(self) -> Optional[int]:
        """Sign of every point of the interval, or None if it straddles 0."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def _coerce(self, other) -> "Interval":
        if isinstance(other, Interval):
            return other
        return Interval.point(other)

    def __add__(self, other):
        other = self._coerce(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        products = (self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi)
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()


IsolatingInterval = Interval


# ---------------------------------------------------------------------------
# polynomials

class Poly:
    """Univariate polynomial over Q, coefficients lowest degree first.

    Immutable. The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, c: RationalLike) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c: RationalLike = 1) -> "Poly":
        return cls([0] * degree + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __repr__(self):
        return f"Poly([{', '.join(format_rational(c) for c in self.coeffs)}])"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = format_rational(abs(c)) + ("*" + mono if mono else "")
            terms.append(("-" if c < 0 else "+", body))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for s, body in terms[1:]:
            out += f" {s} {body}"
        return out

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction, str)):
            return Poly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = Poly([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return Poly(), self
        inv_lead = 1 / other.lead
        quot = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv_lead
            quot[k - dq] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __call__(self, x):
        """Evaluate by Horner's rule; ``x`` may be any ring element that mixes
        with Fractions (Fraction, Interval, FieldElement, Poly)."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = 1 / self.lead
        return Poly([c * inv for c in self.coeffs])

    def primitive_integer(self) -> list[int]:
        """Integer coefficients of the primitive multiple with positive lead."""
        if self.is_zero():
            return []
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*ints)
        if ints[-1] < 0:
            g = -g
        return [c // g for c in ints]

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Poly":
        return cls(as_rational(c) for c in data)


X = Poly([0, 1])


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    while q:
        p, q = q, p % q
    return p.monic()


def ext_gcd(p: Poly, q: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, u, v) with u*p + v*q = g and g monic."""
    r0, r1 = p, q
    s0, s1 = Poly([1]), Poly()
    t0, t1 = Poly(), Poly([1])
    while r1:
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = 1 / r0.lead
    return r0 * inv, s0 * inv, t0 * inv


def rational_roots(p: Poly) -> list[Fraction]:
    """All rational roots of ``p != 0`` by the rational-root test, sorted."""
    if p.is_zero():
        raise ZeroInput("the zero polynomial has every number as a root")
    ints = p.primitive_integer()
    roots = set()
    # peel off x^k so the constant term is nonzero
    k = 0
    while ints[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
    ints = ints[k:]
    if len(ints) == 1:
        return sorted(roots)
    core = Poly(ints)
    for num in integer_divisors(ints[0]):
        for den in integer_divisors(ints[-1]):
            if math.gcd(num, den) != 1:
                continue
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if core(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


# ---------------------------------------------------------------------------
# real roots

def squarefree_poly(p: Poly) -> Poly:
    """p / gcd(p, p'), monic."""
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, p.derivative()]
    while seq[-1]:
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()
    return seq


def _sign_variations(seq: Sequence[Poly], x: Fraction) -> int:
    signs = [s for s in ((q(x) > 0) - (q(x) < 0) for q in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _root_bound(p: Poly) -> Fraction:
    """Power of two strictly exceeding every |root| (Cauchy bound)."""
    lead = abs(p.lead)
    b = 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))
    bound = Fraction(1)
    while bound <= b:
        bound *= 2
    return bound


def count_real_roots(p: Poly, lo=None, hi=None) -> int:
    """Number of distinct real roots in (lo, hi], or on the whole line."""
    if p.degree < 1:
        return 0
    seq = sturm_sequence(p)
    if lo is None or hi is None:
        bound = _root_bound(p)
        lo = -bound if lo is None else lo
        hi = bound if hi is None else hi
    return _sign_variations(seq, as_rational(lo)) - _sign_variations(seq, as_rational(hi))


def _sgn(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def isolate_real_roots(p: Poly) -> list[Interval]:
    """Isolating intervals for every distinct real root, in increasing order.

    Endpoints are dyadic and never roots; the square-free part of ``p``
    changes sign across each interval.
    """
    if p.degree < 1:
        return []
    sqf = squarefree_poly(p)
    seq = sturm_sequence(sqf)
    bound = _root_bound(sqf)

    def variations(x):
        return _sign_variations(seq, x)

    out = []
    stack = [(-bound, bound, variations(-bound), variations(bound))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        count = vlo - vhi
        if count == 0:
            continue
        if count == 1:
            out.append(Interval(lo, hi))
            continue
        mid = (lo + hi) / 2
        step = (hi - lo) / 4
        while sqf(mid) == 0:
            # keep split points off the roots so endpoints stay sign-definite
            step /= 2
            mid += step
        vmid = variations(mid)
        stack.append((mid, hi, vmid, vhi))
        stack.append((lo, mid, vlo, vmid))
    out.sort(key=lambda iv: iv.lo)
    return out


def isolate_unique_real_root(p: Poly) -> Interval:
    """Isolating interval for a polynomial certified to have one real root."""
    if p.degree < 1:
        raise NotUniqueRealRoot(f"{p} is constant")
    roots = isolate_real_roots(p)
    if len(roots) != 1:
        raise NotUniqueRealRoot(f"{p} has {len(roots)} distinct real roots, expected 1")
    return roots[0]


def bisect_root(p: Poly, iv: Interval) -> Interval:
    """Halve an isolating interval, keeping the sign change."""
    mid = iv.mid
    v = p(mid)
    if v == 0:
        quarter = iv.width / 4
        return Interval(mid - quarter, mid + quarter)
    if _sgn(p(iv.lo)) * _sgn(v) < 0:
        return Interval(iv.lo, mid)
    return Interval(mid, iv.hi)


def refine_root(p: Poly, iv: Interval, width: RationalLike) -> Interval:
    """Bisect until the interval is at most ``width`` wide."""
    width = as_rational(width)
    if width <= 0:
        raise ValueError("width must be positive")
    while iv.width > width:
        iv = bisect_root(p, iv)
    return iv
