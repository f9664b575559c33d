"""Kostka numbers, charge, Kostka-Foulkes polynomials and Sub via graded multiplicities.

Conventions (the identity ``sub_via_kf == sub_poly`` is what pins them):

* tableaux are in English notation; the reading word lists the rows from the
  bottom row to the top row, each row left to right;
* charge follows Lascoux-Schuetzenberger: split the word into standard
  subwords by scanning leftwards cyclically for 1, 2, 3, ...; inside a
  subword, r+1 gets the index of r, plus one if r+1 sits to the right of r;
* K_{lam,mu}(t) sums t^charge over SSYT of shape lam and content mu, and the
  modified polynomial is t^{n(mu)} K_{lam,mu}(1/t);
* Sub_{a,lam}(t) = sum_mu Kmod_{mu,lam}(t) * K_{mu,(a, |lam|-a)}.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import PreconditionViolated
from .exactpoly import IntPoly1
from .partitions import Partition, enumerate_partitions, n_stat


@dataclass(frozen=True)
class Tableau:
    shape: Partition
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        shape = Partition(self.shape)
        object.__setattr__(self, "shape", shape)
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if tuple(len(r) for r in rows) != tuple(shape):
            raise PreconditionViolated(f"rows {rows} do not fill shape {tuple(shape)}")
        for r in rows:
            if any(x < 1 for x in r) or any(r[j] > r[j + 1] for j in range(len(r) - 1)):
                raise PreconditionViolated(f"row {r} is not weakly increasing in positive entries")
        for i in range(1, len(rows)):
            if any(rows[i][j] <= rows[i - 1][j] for j in range(len(rows[i]))):
                raise PreconditionViolated(f"columns of {rows} are not strictly increasing")

    @property
    def content(self) -> tuple[int, ...]:
        top = max((x for r in self.rows for x in r), default=0)
        flat = [x for r in self.rows for x in r]
        return tuple(flat.count(v) for v in range(1, top + 1))

    def reading_word(self) -> list[int]:
        return [x for r in reversed(self.rows) for x in r]


def ssyt(shape: Sequence[int], content: Sequence[int]) -> Iterator[Tableau]:
    """Semistandard tableaux of the given shape and content (zeros allowed in content)."""
    shape = Partition(shape)
    content = tuple(content)
    if sum(content) != shape.size or any(c < 0 for c in content):
        return
    rows0: tuple[tuple[int, ...], ...] = tuple(() for _ in shape)

    def grow(rows: tuple[tuple[int, ...], ...], value: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if value > len(content):
            yield rows
            return
        # place content[value-1] copies of ``value`` as a horizontal strip
        for strip in _horizontal_strips(tuple(len(r) for r in rows), shape, content[value - 1]):
            new = tuple(r + (value,) * k for r, k in zip(rows, strip))
            yield from grow(new, value + 1)

    for rows in grow(rows0, 1):
        yield Tableau(shape, rows)


def _horizontal_strips(inner: tuple[int, ...], outer: Partition, k: int) -> Iterator[tuple[int, ...]]:
    """Ways to add k boxes to ``inner``, at most one per column, staying inside ``outer``."""
    n = len(outer)

    def rec(i: int, left: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            if left == 0:
                yield ()
            return
        # row i may grow up to the old length of row i-1 (one box per column) and outer[i]
        cap = outer[i] if i == 0 else min(outer[i], inner[i - 1])
        for add in range(min(cap - inner[i], left), -1, -1):
            for rest in rec(i + 1, left - add):
                yield (add,) + rest

    yield from rec(0, k)


def kostka_number(mu: Sequence[int], content: Sequence[int]) -> int:
    """Number of SSYT of shape mu with the given content."""
    if sum(content) != sum(mu):
        raise PreconditionViolated("content must sum to the size of the shape")
    return sum(1 for _ in ssyt(mu, content))


def word_charge(word: Sequence[int]) -> int:
    """Charge of a word whose content is a partition."""
    letters = list(word)
    counts = [letters.count(v) for v in range(1, max(letters, default=0) + 1)]
    if any(counts[i] < counts[i + 1] for i in range(len(counts) - 1)) or (counts and counts[-1] == 0):
        raise PreconditionViolated(f"charge needs partition content, got {counts}")
    positions = list(range(len(letters)))
    total = 0
    while positions:
        top = max(letters[p] for p in positions)
        chosen = []
        idx = index = 0
        start = len(positions)  # scanning begins at the right end
        for r in range(1, top + 1):
            # search leftwards cyclically, starting just left of the previous letter
            found = None
            for step in range(1, len(positions) + 1):
                j = (start - step) % len(positions)
                if letters[positions[j]] == r:
                    found = j
                    break
            if r > 1 and found > start:
                index += 1
            idx += index
            chosen.append(found)
            start = found
        total += idx
        positions = [p for j, p in enumerate(positions) if j not in set(chosen)]
    return total


def charge(T: Tableau) -> int:
    return word_charge(T.reading_word())


@lru_cache(maxsize=None)
def _kostka_foulkes(lam: Partition, mu: Partition) -> IntPoly1:
    out: dict[int, int] = {}
    for T in ssyt(lam, mu):
        c = charge(T)
        out[c] = out.get(c, 0) + 1
    return IntPoly1(out, "t")


def kostka_foulkes(lam: Sequence[int], mu: Sequence[int]) -> IntPoly1:
    """K_{lam,mu}(t); the content mu is sorted into a partition first."""
    if sum(lam) != sum(mu):
        raise PreconditionViolated("sizes of lam and mu must agree")
    return _kostka_foulkes(Partition(lam), Partition.from_parts(mu))


def modified_kf(lam: Sequence[int], mu: Sequence[int]) -> IntPoly1:
    """t^{n(mu)} K_{lam,mu}(1/t)."""
    K = kostka_foulkes(lam, mu)
    top = n_stat(Partition.from_parts(mu))
    return IntPoly1({top - e: c for e, c in K.coeffs.items()}, "t")


def sub_via_kf(a: int, lam: Sequence[int]) -> IntPoly1:
    """Sub_{a,lam}(t) as sum_mu Kmod_{mu,lam}(t) * kostka_number(mu, (a, |lam|-a))."""
    lam = Partition(lam)
    n = lam.size
    if a < 0 or a > n:
        raise PreconditionViolated(f"a must lie in [0, {n}], got {a}")
    content = tuple(sorted((a, n - a), reverse=True))
    out = IntPoly1({}, "t")
    for mu in enumerate_partitions(n):
        k = kostka_number(mu, content)
        if k:
            out = out + modified_kf(mu, lam) * k
    return out
