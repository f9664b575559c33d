"""Partitions: the Jordan types of finite torsion modules over a DVR.

A partition is stored as a plain tuple of positive ints in weakly decreasing
order. ``Partition`` is a thin ``tuple`` subclass so that the value can be
used anywhere a tuple can (dict keys, ``lru_cache`` keys, slicing).
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence


class Partition(tuple):
    """Weakly decreasing tuple of positive integers. ``Partition()`` is empty."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "Partition":
        """Sort and drop zeros, then build."""
        return cls(sorted((p for p in parts if p != 0), reverse=True))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Inverse of :meth:`serialize`: ``"3,1,1"``, ``"-"`` or ``""`` for empty."""
        text = text.strip()
        if text in ("", "-", "()"):
            return cls()
        return cls(int(p) for p in text.strip("()").split(",") if p.strip())

    def serialize(self) -> str:
        return ",".join(str(p) for p in self) if self else "-"

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        """Number of parts, written t(lambda) in the density formulas."""
        return len(self)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"


def size(lam: Sequence[int]) -> int:
    return sum(lam)


def length(lam: Sequence[int]) -> int:
    return len(lam)


def conjugate(lam: Sequence[int]) -> Partition:
    if not lam:
        return Partition()
    return Partition(sum(1 for p in lam if p >= j) for j in range(1, lam[0] + 1))


def insert_sorted(m: int, lam: Sequence[int]) -> Partition:
    """Insert ``m`` into ``lam`` keeping weak decrease; ``m == 0`` is a no-op.

    The zero case matters for the Sub recursion: peeling a part of size 1
    leaves the zero module, i.e. the partition is unchanged.
    """
    if m < 0:
        raise ValueError(f"cannot insert negative part {m}")
    if m == 0:
        return Partition(lam)
    parts = list(lam)
    i = 0
    while i < len(parts) and parts[i] >= m:
        i += 1
    parts.insert(i, m)
    return Partition(parts)


@lru_cache(maxsize=None)
def _partitions(d: int, largest: int) -> tuple[Partition, ...]:
    if d == 0:
        return (Partition(),)
    out = []
    for first in range(min(d, largest), 0, -1):
        for rest in _partitions(d - first, first):
            out.append(Partition((first,) + tuple(rest)))
    return tuple(out)


def enumerate_partitions(d: int, max_len: int | None = None) -> list[Partition]:
    """All partitions of ``d`` in reverse lexicographic order.

    >>> enumerate_partitions(3)
    [Partition((3,)), Partition((2, 1)), Partition((1, 1, 1))]
    """
    if d < 0:
        raise ValueError("d must be nonnegative")
    parts = _partitions(d, d)
    if max_len is not None:
        parts = tuple(p for p in parts if len(p) <= max_len)
    return list(parts)


def partitions_up_to(max_size: int, max_len: int | None = None) -> list[Partition]:
    """Every partition of size 0..max_size, grouped by size."""
    return [p for d in range(max_size + 1) for p in enumerate_partitions(d, max_len)]


def n_stat(lam: Sequence[int]) -> int:
    """n(lambda) = sum_i (i-1) * lambda_i."""
    return sum(i * p for i, p in enumerate(lam))


def dominates(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """True iff lam >= mu in dominance order (sizes must agree)."""
    if sum(lam) != sum(mu):
        return False
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True
