import pytest

from congruent.constructions import cnm_candidates
from congruent.exact import is_rational_square
from congruent.tunnell import (
    CONSISTENT_CONGRUENT,
    INAPPLICABLE,
    NOT_CONGRUENT,
    count_representations,
    count_representations_by_octant,
    tunnell_scan,
    tunnell_verdict,
)


def brute_count(n, z_coeff):
    r = int(n**0.5) + 1
    return sum(1 for x in range(-r, r + 1) for y in range(-r, r + 1) for z in range(-r, r + 1)
               if 2 * x * x + y * y + z_coeff * z * z == n)


@pytest.mark.parametrize("n,c8,c32,verdict", [
    (1, 2, 2, NOT_CONGRUENT),
    (3, 4, 4, NOT_CONGRUENT),
    (5, 0, 0, CONSISTENT_CONGRUENT),
    (7, 0, 0, CONSISTENT_CONGRUENT),
    (11, 12, 4, NOT_CONGRUENT),  # 2 + 9 and 2 + 1 + 8
])
def test_examples(n, c8, c32, verdict):
    res = tunnell_verdict(n)
    assert (res.count_8, res.count_32, res.verdict) == (c8, c32, verdict)


def test_meaning_is_conditional():
    assert "conditional on BSD" in tunnell_verdict(5).meaning
    assert "unconditional" in tunnell_verdict(1).meaning


@pytest.mark.parametrize("n,why", [(6, "even"), (9, "square-free"), (0, "positive")])
def test_inapplicable(n, why):
    res = tunnell_verdict(n)
    assert res.verdict == INAPPLICABLE
    assert why in res.meaning
    assert res.count_8 is None


def test_counts_match_brute_force():
    for n in range(1, 80):
        for zc in (8, 32):
            assert count_representations(n, zc) == brute_count(n, zc)


def test_octant_weighting_agrees():
    for n in range(1, 201):
        for zc in (8, 32):
            assert count_representations(n, zc) == count_representations_by_octant(n, zc)


def test_known_congruent_numbers_agree():
    # odd square-free congruent numbers below 50
    for n in (5, 7, 13, 15, 21, 23, 29, 31, 37, 39, 41, 47):
        assert tunnell_verdict(n).verdict == CONSISTENT_CONGRUENT


def test_twist_hits_are_never_refuted():
    # with m = 1 a hit with x != 0 is a rational triangle (2n/x, x, y/x), so
    # n is congruent and the necessary condition has to hold
    found = []
    for n in range(1, 101, 2):
        if tunnell_verdict(n).verdict == INAPPLICABLE:
            continue
        if any(x and is_rational_square(x**4 + 4 * n * n) is not None
               for x in cnm_candidates(40)):
            found.append(n)
            assert tunnell_verdict(n).verdict == CONSISTENT_CONGRUENT
    assert {5, 7} <= set(found)


def test_scan_parallel_matches_serial():
    ns = list(range(1, 60))
    assert tunnell_scan(ns, jobs=2) == tunnell_scan(ns, jobs=1)


def test_json():
    assert tunnell_verdict(1).to_json() == {
        "n": 1, "count_8": 2, "count_32": 2, "verdict": NOT_CONGRUENT,
        "meaning": "not congruent (unconditional: counts disagree)"}
