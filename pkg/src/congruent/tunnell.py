"""Tunnell's criterion for odd square-free n.

If n is congruent then #{2x^2 + y^2 + 8z^2 = n} = 2 #{2x^2 + y^2 + 32z^2 = n}.
A mismatch therefore proves n is not congruent; a match only says n is
congruent if the Birch and Swinnerton-Dyer conjecture holds.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

from .exact import squarefree_part

__all__ = [
    "CONSISTENT_CONGRUENT",
    "INAPPLICABLE",
    "NOT_CONGRUENT",
    "TunnellCounts",
    "count_representations",
    "count_representations_by_octant",
    "tunnell_scan",
    "tunnell_verdict",
]

CONSISTENT_CONGRUENT = "consistent_congruent"
NOT_CONGRUENT = "not_congruent_unconditional_direction"
INAPPLICABLE = "inapplicable"

_MEANING = {
    CONSISTENT_CONGRUENT: "congruent conditional on BSD (counts agree)",
    NOT_CONGRUENT: "not congruent (unconditional: counts disagree)",
}


def count_representations(n: int, z_coeff: int) -> int:
    """#{(x, y, z) in Z^3 : 2x^2 + y^2 + z_coeff*z^2 = n}, signs counted."""
    if n < 1:
        raise ValueError("n must be positive")
    total = 0
    xmax = math.isqrt(n // 2)
    zmax = math.isqrt(n // z_coeff)
    for x in range(-xmax, xmax + 1):
        rest_x = n - 2 * x * x
        for z in range(-zmax, zmax + 1):
            rest = rest_x - z_coeff * z * z
            if rest < 0:
                continue
            y = math.isqrt(rest)
            if y * y == rest:
                total += 1 if y == 0 else 2
    return total


def count_representations_by_octant(n: int, z_coeff: int) -> int:
    """Same count from nonnegative solutions, each weighted by 2^(nonzero coords)."""
    total = 0
    for x in range(math.isqrt(n // 2) + 1):
        for z in range(math.isqrt(n // z_coeff) + 1):
            rest = n - 2 * x * x - z_coeff * z * z
            if rest < 0:
                continue
            y = math.isqrt(rest)
            if y * y == rest:
                total += 2 ** sum(1 for v in (x, y, z) if v)
    return total


@dataclass(frozen=True)
class TunnellCounts:
    n: int
    count_8: Optional[int]
    count_32: Optional[int]
    verdict: str
    reason: str = ""

    @property
    def meaning(self) -> str:
        return _MEANING.get(self.verdict, f"inapplicable: {self.reason}")

    def to_json(self) -> dict:
        return {"n": self.n, "count_8": self.count_8, "count_32": self.count_32,
                "verdict": self.verdict, "meaning": self.meaning}


def tunnell_verdict(n: int) -> TunnellCounts:
    n = int(n)
    if n < 1:
        return TunnellCounts(n, None, None, INAPPLICABLE, "n must be positive")
    if n % 2 == 0:
        return TunnellCounts(n, None, None, INAPPLICABLE, "even n is not covered")
    s = squarefree_part(n)
    if s != n:
        return TunnellCounts(n, None, None, INAPPLICABLE,
                             f"n is not square-free; test its square-free part {s}")
    c8 = count_representations(n, 8)
    c32 = count_representations(n, 32)
    verdict = CONSISTENT_CONGRUENT if c8 == 2 * c32 else NOT_CONGRUENT
    return TunnellCounts(n, c8, c32, verdict)


def tunnell_scan(ns: Iterable[int], jobs: int = 1) -> list[TunnellCounts]:
    """Verdicts for many n, in input order; ``jobs > 1`` uses worker processes."""
    ns = list(ns)
    if jobs <= 1 or len(ns) < 2:
        return [tunnell_verdict(n) for n in ns]
    chunk = max(1, len(ns) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(tunnell_verdict, ns, chunksize=chunk))
