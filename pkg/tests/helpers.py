"""Brute-force oracles for the test-suite.

Everything here is written directly from definitions (recursive block
assignment, exact partial sums) and deliberately avoids the package's own
algorithms, so a test comparing the two routes is a real cross-check.
"""

from fractions import Fraction
from math import factorial


def naive_partitions(n):
    """All restricted growth strings of length n by direct recursive assignment."""
    if n == 0:
        yield ()
        return
    out = [0] * n

    def rec(i, used):
        if i == n:
            yield tuple(out)
            return
        for v in range(used + 1):
            out[i] = v
            yield from rec(i + 1, used + 1 if v == used else used)

    yield from rec(1, 1)


def block_count(rgs):
    return max(rgs) + 1 if rgs else 0


def zero_block_sum(rgs):
    return sum(i for i, b in enumerate(rgs) if b == 0)


def naive_bell(n):
    return sum(1 for _ in naive_partitions(n))


def naive_stirling2(n, k):
    return sum(1 for p in naive_partitions(n) if block_count(p) == k)


def partial_sum(term, n_terms):
    """Exact sum of term(0) + ... + term(n_terms - 1)."""
    return sum((Fraction(term(k)) for k in range(n_terms)), Fraction(0))


def exp_partial(n_terms=51):
    """Partial sum of 1/k!, the classical-series reference point."""
    return partial_sum(lambda k: Fraction(1, factorial(k)), n_terms)
