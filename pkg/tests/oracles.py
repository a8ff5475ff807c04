"""Slow, obviously-correct reference computations used only by the tests."""

from fractions import Fraction
from math import gcd


def min_sum_fraction(n, m):
    """Double loop over Fractions, no shared code with the package."""
    total = Fraction(0)
    for j in range(1, n):
        for k in range(1, m):
            total += min(Fraction(j, n), Fraction(k, m))
    return total


def lattice_size(s):
    """Distinct reduced fractions k/n, n in {2s, 2s+1, 4s, 4s+1}, counted via gcd."""
    seen = set()
    for n in (2 * s, 2 * s + 1, 4 * s, 4 * s + 1):
        for k in range(1, n):
            g = gcd(k, n)
            seen.add((k // g, n // g))
    return len(seen)


def x_n_fraction(f, n):
    """Exact x_n for a function mapping Fractions to Fractions."""
    return sum((f(Fraction(k, n)) for k in range(1, n)), Fraction(0))


def y_n_fraction(f, n):
    return x_n_fraction(f, n + 1) - x_n_fraction(f, n)
