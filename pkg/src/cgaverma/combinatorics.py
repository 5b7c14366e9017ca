"""Integer partitions, their statistics, and Bernoulli numbers."""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod

__all__ = [
    "Partition",
    "partitions_of",
    "partition_stats",
    "count_no_ones",
    "bernoulli_number",
    "bernoulli_poly",
]


class Partition(tuple):
    """A non-increasing tuple of positive integers.

    >>> Partition([3, 1, 1]).z
    6
    >>> Partition([]).size
    0
    """

    def __new__(cls, parts=()):
        parts = tuple(int(x) for x in parts)
        if any(x <= 0 for x in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be non-increasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_multiplicities(cls, mults: dict[int, int]) -> "Partition":
        parts = []
        for i in sorted(mults, reverse=True):
            parts.extend([i] * mults[i])
        return cls(parts)

    def __repr__(self):
        return f"Partition({list(self)})"

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicity(self, i: int) -> int:
        return self.count(i)

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for x in self:
            out[x] = out.get(x, 0) + 1
        return out

    @property
    def epsilon(self) -> int:
        return -1 if (self.size - self.length) % 2 else 1

    @property
    def z(self) -> int:
        return prod(i**m * factorial(m) for i, m in self.multiplicities().items())

    @property
    def u(self) -> Fraction:
        denom = prod(factorial(m) for m in self.multiplicities().values())
        return Fraction(factorial(self.length), denom)

    def to_json(self) -> list[int]:
        return list(self)


@lru_cache(maxsize=None)
def _partitions(n: int, max_part: int) -> tuple[Partition, ...]:
    if n == 0:
        return (Partition(),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            out.append(Partition((first,) + tuple(rest)))
    return tuple(out)


def partitions_of(n: int, max_part: int | None = None) -> list[Partition]:
    """All partitions of ``n`` (parts at most ``max_part``), lexicographically descending."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if max_part is None:
        max_part = n
    if max_part < 0:
        raise ValueError("max_part must be non-negative")
    return list(_partitions(n, max_part))


def partition_stats(lam: Partition) -> tuple[int, int, Fraction]:
    """Return ``(epsilon, z, u)`` for ``lam``."""
    lam = Partition(lam)
    return lam.epsilon, lam.z, lam.u


def count_no_ones(j: int) -> int:
    """Number of partitions of ``j`` with no part equal to 1."""
    if j < 0:
        raise ValueError("j must be non-negative")
    return sum(1 for lam in partitions_of(j) if 1 not in lam)


_bern_lock = threading.Lock()
_bern_memo: list[Fraction] = [Fraction(1)]


def bernoulli_number(n: int) -> Fraction:
    """B_n with B_1 = -1/2, from sum_{k<=n} C(n+1, k) B_k = 0."""
    if n < 0:
        raise ValueError("n must be non-negative")
    with _bern_lock:
        while len(_bern_memo) <= n:
            m = len(_bern_memo)
            s = sum(comb(m + 1, k) * _bern_memo[k] for k in range(m))
            _bern_memo.append(-s / (m + 1))
        return _bern_memo[n]


def bernoulli_poly(n: int, x) -> Fraction:
    """B_n(x) = sum_k C(n, k) B_k x^(n-k)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = Fraction(x)
    return sum(
        (comb(n, k) * bernoulli_number(k) * x ** (n - k) for k in range(n + 1)),
        Fraction(0),
    )
