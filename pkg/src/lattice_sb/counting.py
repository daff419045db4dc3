"""Exact counting: binomials, Gaussian binomials, Whitney numbers.

Everything returns exact Python ints; any log2 rendering happens at output
time only.  Two independent Gaussian-binomial algorithms are kept on purpose
as permanent mutual oracles: `gaussian` (product formula with exact stepwise
division) and `gaussian_pascal` (q-Pascal recurrence).
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .lattice import Lattice

FAMILIES = ("powerset", "projective")


def binomial(n: int, k: int) -> int:
    """C(n, k) with the total convention: out-of-range k gives 0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def _check_nq(n: int, q: int):
    if n < 0:
        raise ValueError("n must be >= 0")
    if q < 2:
        raise ValueError("q must be >= 2")


def gaussian(n: int, k: int, q: int) -> int:
    """Count of k-dim subspaces of an n-dim space over a q-element field.

    Product formula; each partial product is itself a Gaussian binomial, so
    the stepwise integer division is exact.
    """
    _check_nq(n, q)
    if k < 0 or k > n:
        return 0
    r = 1
    for i in range(1, k + 1):
        r = r * (q ** (n - k + i) - 1) // (q ** i - 1)
    return r


@lru_cache(maxsize=None)
def gaussian_pascal(n: int, k: int, q: int) -> int:
    """Same count via the q-Pascal recurrence; independent cross-check route."""
    _check_nq(n, q)
    if k < 0 or k > n:
        return 0
    if k == 0 or k == n:
        return 1
    return gaussian_pascal(n - 1, k - 1, q) + q**k * gaussian_pascal(n - 1, k, q)


def whitney(lat: Lattice) -> list[int]:
    """Element counts per height level of a built lattice."""
    counts = [0] * (lat.total_height() + 1)
    for h in lat.heights:
        counts[h] += 1
    return counts


def whitney_closed_form(family: str, n: int, k: int, q: int | None = None) -> int:
    """Height-k count for the power-set / projective family lattices."""
    if family == "powerset":
        return binomial(n, k)
    if family == "projective":
        if q is None:
            raise ValueError("projective family needs q")
        return gaussian(n, k, q)
    raise ValueError(f"unknown family: {family!r}")
