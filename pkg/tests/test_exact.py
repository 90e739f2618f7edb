import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from congruent.errors import NotUniqueRealRoot, ZeroInput
from congruent.exact import (
    Interval,
    Poly,
    X,
    as_rational,
    bisect_root,
    count_real_roots,
    ext_gcd,
    format_rational,
    is_rational_square,
    isolate_real_roots,
    isolate_unique_real_root,
    poly_gcd,
    rational_roots,
    refine_root,
    squarefree_part,
)

small_fractions = st.fractions(min_value=-50, max_value=50, max_denominator=60)
nonzero_fractions = small_fractions.filter(lambda q: q != 0)
polys = st.lists(small_fractions, min_size=0, max_size=6).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def lambda_cubic(n):
    return Poly([n * n, 8, -32, 32])


def canonical(q):
    return q.denominator > 0 and math.gcd(q.numerator, q.denominator) == 1


# -- rationals ---------------------------------------------------------------

def test_fibonacci_area():
    assert F(3, 2) * F(20, 3) / 2 == 5


def test_additive_identity():
    assert F(7, 9) + 0 == F(7, 9)


def test_hypotenuse_square():
    assert F(25, 4) ** 2 + 25 == F(1025, 16)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        F(1, 2) / F(0)


@pytest.mark.parametrize("text,value", [("3/2", F(3, 2)), ("-62279/1728", F(-62279, 1728)),
                                        ("7", F(7)), ("4/6", F(2, 3))])
def test_as_rational_parses(text, value):
    assert as_rational(text) == value


@pytest.mark.parametrize("bad", ["1.5", "2e3", "", "x"])
def test_as_rational_rejects_inexact(bad):
    with pytest.raises(ValueError):
        as_rational(bad)


def test_as_rational_rejects_float():
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_format_rational():
    assert format_rational(F(41, 6)) == "41/6"
    assert format_rational(F(-5)) == "-5"
    assert format_rational(F(0)) == "0"


@given(small_fractions, nonzero_fractions, st.sampled_from(["add", "sub", "mul", "div"]))
def test_canonical_form_closure(a, b, op):
    result = {"add": a + b, "sub": a - b, "mul": a * b, "div": a / b}[op]
    assert canonical(result)
    assert canonical(as_rational(format_rational(result)))


@given(polys, polys)
def test_poly_coefficients_canonical(p, q):
    for c in (p * q + p).coeffs:
        assert canonical(c)


# -- squares -----------------------------------------------------------------

def test_square_root_of_hypotenuse_square():
    assert 41 * 41 == 1681 and 12 * 12 == 144
    assert is_rational_square(F(1681, 144)) == F(41, 12)


def test_square_zero_and_two():
    assert is_rational_square(0) == 0
    assert is_rational_square(2) is None
    assert is_rational_square(-4) is None


@given(small_fractions)
def test_square_of_anything_is_square(q):
    assert is_rational_square(q * q) == abs(q)


def test_square_detection_matches_brute_force():
    squares = {k * k for k in range(40)}
    for num in range(0, 300):
        for den in (1, 4, 9, 12, 16):
            q = F(num, den)
            expected = q.numerator in squares and q.denominator in squares
            assert (is_rational_square(q) is not None) == expected


# -- square-free part --------------------------------------------------------

def is_squarefree(s):
    s = abs(s)
    return all(s % (p * p) for p in range(2, math.isqrt(s) + 1))


@pytest.mark.parametrize("a,s", [(5, 5), (20, 5), (F(9, 4), 1), (32, 2), (17, 17),
                                 (F(168100, 81), 1), (-12, -3), (F(1, 8), 2)])
def test_squarefree_part_examples(a, s):
    assert squarefree_part(a) == s


def test_squarefree_part_zero():
    with pytest.raises(ZeroInput):
        squarefree_part(0)


def test_squarefree_part_large_prime_square():
    p = 1000003
    assert squarefree_part(3 * p * p) == 3
    assert squarefree_part(3 * p) == 3 * p
    assert squarefree_part(7 * p * 1000033) == 7 * p * 1000033


@given(nonzero_fractions)
def test_squarefree_part_times_square(a):
    s = squarefree_part(a)
    assert is_squarefree(s)
    assert (s > 0) == (a > 0)
    assert is_rational_square(a / s) is not None


def test_squarefree_part_brute_force():
    for a in range(1, 2000):
        s = max(d for d in range(1, a + 1) if a % d == 0 and is_squarefree(d)
                and is_rational_square(F(a, d)) is not None)
        assert squarefree_part(a) == s


# -- polynomial arithmetic ---------------------------------------------------

def test_gcd_example():
    assert poly_gcd(X * X - 1, X - 1) == X - 1


def test_gcd_is_monic():
    assert poly_gcd(2 * X * X - 2, 4 * X - 4) == X - 1


def test_remainder_is_value():
    p = Poly([F(1, 32), F(1, 4), -1, 1])
    _, r = divmod(p, X + F(1, 2))
    # synthetic division by hand: -1/8 - 1/4 - 1/8 + 1/32
    assert r == Poly([F(-15, 32)])
    assert p(F(-1, 2)) == F(-15, 32)


def test_ext_gcd_coprime():
    p, q = X * X - 5, 2 * X + 1
    g, u, v = ext_gcd(p, q)
    assert g == Poly([1])
    assert u * p + v * q == 1


def test_divmod_by_zero():
    with pytest.raises(ZeroDivisionError):
        divmod(X, Poly())


@given(polys, nonzero_polys)
def test_divmod_contract(p, q):
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert rem.degree < q.degree


@given(polys, polys)
def test_bezout_identity(p, q):
    g, u, v = ext_gcd(p, q)
    assert u * p + v * q == g
    if not g.is_zero():
        assert g.lead == 1
        assert (p % g).is_zero() and (q % g).is_zero()


@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)


def test_poly_is_immutable():
    with pytest.raises(AttributeError):
        X.coeffs = ()


# -- rational roots ----------------------------------------------------------

def test_rational_root_n20():
    assert -256 - 128 - 16 + 400 == 0
    assert rational_roots(lambda_cubic(20)) == [F(-2)]


def test_rational_root_n4():
    assert -4 - 8 - 4 + 16 == 0
    assert rational_roots(lambda_cubic(4)) == [F(-1, 2)]


def test_no_rational_root_n1():
    # candidates +-p/q with p | 1, q | 32
    cands = [F(s, q) for s in (1, -1) for q in (1, 2, 4, 8, 16, 32)]
    assert all(lambda_cubic(1)(c) != 0 for c in cands)
    assert rational_roots(lambda_cubic(1)) == []


def test_zero_root_and_repeated_roots():
    p = X * (X - F(2, 3)) ** 2 * (X * X + 1)
    assert rational_roots(p) == [F(0), F(2, 3)]


@given(st.lists(st.fractions(min_value=-6, max_value=6, max_denominator=5), max_size=4),
       st.booleans())
def test_rational_roots_of_products(roots, with_irreducible):
    p = Poly([1])
    for r in roots:
        p = p * (X - r)
    if with_irreducible:
        p = p * (X * X - 2)
    if p.degree < 1:
        return
    assert rational_roots(p) == sorted(set(roots))


# -- real roots --------------------------------------------------------------

def float_bisection_root(f, lo, hi, steps=80):
    flo = f(lo)
    for _ in range(steps):
        mid = (lo + hi) / 2
        if (f(mid) > 0) == (flo > 0):
            lo, flo = mid, f(mid)
        else:
            hi = mid
    return (lo + hi) / 2


def test_isolate_n1_cubic():
    p = lambda_cubic(1)
    iv = isolate_unique_real_root(p)
    assert p(iv.lo) * p(iv.hi) < 0
    fine = refine_root(p, iv, F(1, 16))
    assert fine == Interval(F(-1, 8), F(-1, 16))
    assert p(F(-1, 8)) < 0 < p(F(-1, 16))
    root = float_bisection_root(lambda t: 32 * t**3 - 32 * t**2 + 8 * t + 1, -1.0, 1.0)
    assert abs(root - (-0.0898260215)) < 1e-9
    tight = refine_root(p, iv, F(1, 10**6))
    assert tight.lo <= F(root) <= tight.hi


@pytest.mark.parametrize("n", [1, 2, 3, 5, 7, 20, 50, 1000])
def test_lambda_cubic_root_is_negative(n):
    p = lambda_cubic(n)
    assert p(0) == n * n > 0
    iv = isolate_unique_real_root(p)
    iv = refine_root(p, iv, F(1, 64))
    assert iv.hi <= 0
    assert count_real_roots(p, 0, 10**9) == 0


def test_cube_root_of_eight():
    p = X**3 - 8
    iv = isolate_unique_real_root(p)
    assert iv.lo < 2 < iv.hi
    fine = refine_root(p, iv, F(1, 1000))
    assert fine.lo < 2 < fine.hi
    assert fine.width <= F(1, 1000)


def test_not_unique_real_root():
    with pytest.raises(NotUniqueRealRoot):
        isolate_unique_real_root(X * X - 2)
    with pytest.raises(NotUniqueRealRoot):
        isolate_unique_real_root(X * X + 1)


def test_sturm_counts():
    assert count_real_roots((X - 1) * (X - 2) * (X - 3)) == 3
    assert count_real_roots(X * X + 1) == 0
    assert count_real_roots((X - 1) ** 2 * (X + 2)) == 2
    assert count_real_roots((X - 1) * (X - 2) * (X - 3), F(3, 2), 3) == 2


def test_isolate_all_roots_with_root_on_split_point():
    p = X * (X - 1) * (X + 1) * (X - F(1, 2))
    ivs = isolate_real_roots(p)
    expected = [-1, 0, F(1, 2), 1]
    assert len(ivs) == 4
    for iv, r in zip(ivs, expected):
        assert iv.lo < r < iv.hi
        assert p(iv.lo) * p(iv.hi) < 0


@given(st.integers(min_value=1, max_value=400), st.integers(min_value=1, max_value=30))
def test_bisection_keeps_sign_change(n, steps):
    p = lambda_cubic(n)
    iv = isolate_unique_real_root(p)
    for _ in range(steps):
        nxt = bisect_root(p, iv)
        assert nxt.width == iv.width / 2
        assert p(nxt.lo) * p(nxt.hi) < 0
        iv = nxt
    # dyadic endpoints
    for e in (iv.lo, iv.hi):
        assert e.denominator & (e.denominator - 1) == 0


def test_interval_arithmetic_contains():
    a, b = Interval(F(1), F(2)), Interval(F(-3), F(1, 2))
    for x in (F(1), F(3, 2), F(2)):
        for y in (F(-3), F(0), F(1, 2)):
            assert x * y in a * b
            assert x + y in a + b
            assert x - y in a - b
    assert Interval(F(2), F(4)).reciprocal() == Interval(F(1, 4), F(1, 2))
    with pytest.raises(ZeroDivisionError):
        b.reciprocal()
