"""Set partitions, the zero-block element-sum statistic, and its q-tower.

Partitions of {0, ..., n-1} are handled as restricted growth strings: entry
i is the index of the block containing i, blocks numbered by first
appearance, so rgs[0] = 0 and rgs[i] <= 1 + max(rgs[:i]).  The statistic
attached to a partition is the sum of the elements in the block containing
0.  Counting partitions weighted by q**statistic gives q-analogues of the
Stirling and Bell numbers that are genuinely different from the Carlitz
ones, yet satisfy their own exact Dobinski-type identity, checked here by
expanding a product of shifted powers and substituting Bell numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .dobinski import poisson_moment_exact
from .errors import CapExceededError
from .exact_core import Poly

# Full enumeration of n = 13 already means 27.6 million partitions; past that
# the desk-scale guarantees of this module stop holding.
PARTITION_CAP = 13


def _check_cap(n: int) -> None:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > PARTITION_CAP:
        raise CapExceededError(
            f"partition enumeration is capped at n={PARTITION_CAP}, got n={n}"
        )


@dataclass(frozen=True)
class SetPartition:
    """A validated restricted growth string over the ground set {0, ..., n-1}."""

    rgs: tuple[int, ...]

    def __post_init__(self):
        rgs = tuple(int(b) for b in self.rgs)
        object.__setattr__(self, "rgs", rgs)
        top = 0
        for i, b in enumerate(rgs):
            if i == 0 and b != 0:
                raise ValueError("rgs must start with block 0")
            if b < 0 or b > top:
                raise ValueError(f"rgs entry {b} at position {i} breaks restricted growth")
            top = max(top, b + 1)

    @property
    def n(self) -> int:
        return len(self.rgs)

    @property
    def block_count(self) -> int:
        return max(self.rgs) + 1 if self.rgs else 0

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.block_count)]
        for i, b in enumerate(self.rgs):
            out[b].append(i)
        return out


def enumerate_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Yield every restricted growth string of length n in lexicographic order.

    Streams plain tuples (cheap at the several-million scale of n = 12);
    wrap one in SetPartition when a validated object is wanted.
    """
    _check_cap(n)
    if n == 0:
        yield ()
        return
    a = [0] * n
    b = [1] * n  # b[i] = 1 + max(a[:i]); position i may hold values 0..b[i]
    yield tuple(a)
    while True:
        i = n - 1
        while i > 0 and a[i] == b[i]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        nb = b[i] + 1 if a[i] == b[i] else b[i]
        for j in range(i + 1, n):
            a[j] = 0
            b[j] = nb
        yield tuple(a)


def cigl_statistic(partition) -> int:
    """Sum of the elements in the block containing 0."""
    rgs = partition.rgs if isinstance(partition, SetPartition) else tuple(partition)
    return sum(i for i, b in enumerate(rgs) if b == 0)


@dataclass(frozen=True)
class CiglWeightedCount:
    """Per-block-count generating polynomials of the statistic for one n."""

    n: int
    by_blocks: tuple[Poly, ...]  # index k: sum of q**statistic over k-block partitions

    def total(self) -> Poly:
        acc = Poly(())
        for p in self.by_blocks:
            acc = acc + p
        return acc


def _weighted_histograms(n: int) -> list[dict[int, int]]:
    # hists[k][c] = number of partitions with k blocks whose statistic is c.
    # Walk the restricted-growth choices; blocks other than block 0 are
    # interchangeable for the statistic, so one weighted branch covers all of
    # them and the walk visits 3**(n-1) paths instead of Bell(n) leaves.
    hists: list[dict[int, int]] = [dict() for _ in range(n + 1)]
    if n == 0:
        hists[0][0] = 1
        return hists

    def walk(i: int, blocks: int, stat: int, mult: int) -> None:
        if i == n:
            row = hists[blocks]
            row[stat] = row.get(stat, 0) + mult
            return
        walk(i + 1, blocks + 1, stat, mult)  # element i opens a new block
        walk(i + 1, blocks, stat + i, mult)  # element i joins the block of 0
        if blocks > 1:
            walk(i + 1, blocks, stat, mult * (blocks - 1))

    walk(1, 1, 0, 1)
    return hists


@lru_cache(maxsize=None)
def cigl_weighted_count(n: int) -> CiglWeightedCount:
    """Weighted partition counts for every block count at once."""
    _check_cap(n)
    hists = _weighted_histograms(n)
    polys = []
    for h in hists:
        if h:
            cs = [0] * (max(h) + 1)
            for stat, count in h.items():
                cs[stat] = count
            polys.append(Poly(cs))
        else:
            polys.append(Poly(()))
    return CiglWeightedCount(n, tuple(polys))


def cigl_q_stirling(n: int, k: int) -> Poly:
    """Sum of q**statistic over the k-block partitions of an n-set."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > n:
        return Poly(())
    return cigl_weighted_count(n).by_blocks[k]


def cigl_q_bell(n: int) -> Poly:
    """Sum of q**statistic over all partitions of an n-set."""
    return cigl_weighted_count(n).total()


def _q_const(c) -> Poly:
    return Poly((c,))


def cigl_q_power(n: int) -> Poly:
    """The product x * (x + q - 1) * (x + q**2 - 1) * ... * (x + q**(n-1) - 1).

    Returned as a polynomial in x whose coefficients are q-polynomials; the
    empty product at n = 0 is the constant 1.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    out = Poly((_q_const(1),), var="x")
    for i in range(n):
        offset = Poly((-1,) + (0,) * (i - 1) + (1,)) if i >= 1 else Poly(())
        out = out * Poly((offset, _q_const(1)), var="x")
    return out


def cigl_q_dobinski_exact(n: int) -> Poly:
    """Exact moment evaluation of the shifted q-power product.

    Expands cigl_q_power(n) in x and substitutes each power of x by the
    matching Bell number, coefficient-wise over the q-polynomials.  The
    result must coincide with cigl_q_bell(n) as an exact polynomial.
    """
    res = poisson_moment_exact(cigl_q_power(n))
    return res if isinstance(res, Poly) else Poly((res,))
