"""Canonical forms for rational combinations of roots of unity.

A value ``sum(s_c * exp(2 pi i c))`` with rational ``c`` lives in some
cyclotomic field Q(zeta_N). It is stored in the power basis of the smallest
field Q(zeta_M) containing it (M != 2 mod 4), which makes the stored form
unique: two inputs with the same complex value canonicalize identically.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm

__all__ = ["canonical_roots", "cyclotomic_poly", "power_basis_vector", "totient"]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    # x^n - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        q, rem = divmod(num[i + len(den) - 1], lead)
        assert rem == 0
        out[i] = q
        if q:
            for j, c in enumerate(den):
                num[i + j] -= q * c
    assert not any(num[: len(den) - 1])
    return out


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


def power_basis_vector(n: int, terms: dict[int, Fraction]) -> list[Fraction]:
    """Coordinates of ``sum(v * zeta_n**k)`` in the basis 1, zeta_n, ..., zeta_n**(phi(n)-1)."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    poly = [Fraction(0)] * max(n, deg)
    for k, v in terms.items():
        poly[k % n] += v
    for i in range(len(poly) - 1, deg - 1, -1):
        c = poly[i]
        if c:
            # Phi_n is monic
            for j in range(deg + 1):
                poly[i - deg + j] -= c * phi[j]
    return poly[:deg]


@lru_cache(maxsize=None)
def _subfield_solver(n: int, m: int):
    """Left inverse of the inclusion Q(zeta_m) -> Q(zeta_n) in power bases."""
    step = n // m
    phi_m = totient(m)
    cols = [power_basis_vector(n, {j * step: Fraction(1)}) for j in range(phi_m)]
    rows = len(cols[0])
    # Gaussian elimination on the transposed system to pick independent rows
    matrix = [[cols[j][i] for j in range(phi_m)] for i in range(rows)]
    chosen: list[int] = []
    basis_rows: list[list[Fraction]] = []
    for i, row in enumerate(matrix):
        vec = row[:]
        for pivot_col, brow in _with_pivots(basis_rows):
            if vec[pivot_col]:
                factor = vec[pivot_col]
                vec = [a - factor * b for a, b in zip(vec, brow)]
        nz = next((c for c, val in enumerate(vec) if val), None)
        if nz is not None:
            inv = 1 / vec[nz]
            basis_rows.append([v * inv for v in vec])
            chosen.append(i)
            if len(chosen) == phi_m:
                break
    square = [matrix[i] for i in chosen]
    inverse = _invert(square)
    return tuple(chosen), inverse, cols


def _with_pivots(rows: list[list[Fraction]]):
    for row in rows:
        pivot = next(c for c, val in enumerate(row) if val)
        yield pivot, row


def _invert(square: list[list[Fraction]]) -> list[list[Fraction]]:
    size = len(square)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(size)] for i, row in enumerate(square)]
    for col in range(size):
        pivot = next(r for r in range(col, size) if aug[r][col])
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(size):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[size:] for row in aug]


@lru_cache(maxsize=None)
def _divisors(n: int) -> tuple[int, ...]:
    return tuple(d for d in range(1, n + 1) if n % d == 0 and d % 4 != 2)


def canonical_roots(terms: dict[Fraction, Fraction]) -> dict[Fraction, Fraction]:
    """Canonical ``{exponent in [0,1): rational}`` representation of a cyclotomic number."""
    terms = {c % 1: v for c, v in terms.items() if v}
    if not terms:
        return {}
    n = lcm(*(c.denominator for c in terms))
    if n == 1:
        return {Fraction(0): sum(terms.values(), Fraction(0))} if sum(terms.values()) else {}
    # merge exponents that coincide after reduction
    merged: dict[int, Fraction] = {}
    for c, v in terms.items():
        k = int(c * n)
        merged[k] = merged.get(k, Fraction(0)) + v
    vec = power_basis_vector(n, merged)
    if not any(vec):
        return {}
    for m in _divisors(n):
        coords = _coords_in_subfield(n, m, vec)
        if coords is not None:
            return {Fraction(j, m): v for j, v in enumerate(coords) if v}
    raise AssertionError("value must lie in Q(zeta_n)")


def _coords_in_subfield(n: int, m: int, vec: list[Fraction]) -> list[Fraction] | None:
    if m == n:
        return vec
    chosen, inverse, cols = _subfield_solver(n, m)
    rhs = [vec[i] for i in chosen]
    coords = [sum((a * b for a, b in zip(row, rhs)), Fraction(0)) for row in inverse]
    rebuilt = [Fraction(0)] * len(vec)
    for coeff, col in zip(coords, cols):
        if coeff:
            for i, val in enumerate(col):
                rebuilt[i] += coeff * val
    return coords if rebuilt == vec else None
