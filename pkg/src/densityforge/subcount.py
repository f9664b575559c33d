"""Universal submodule-counting polynomials Sub_{a,lam}(t).

Sub_{a,lam}(q) is the number of length-a submodules of the torsion module of
Jordan type lam over a DVR with residue field of size q. The computation of
record is the peel-the-largest-part recursion

    Sub_{a,(m,rho)} = Sub_{a-1, (m-1) inserted into rho} + t^a Sub_{a,rho};

``sub_poly_interp`` rebuilds the same polynomial from submodule counts.
"""
from __future__ import annotations

import json
import os
import threading
from pathlib import Path
from typing import Callable, Iterator, Sequence

from .exactpoly import IntPoly1, interpolate
from .finitemod import DEFAULT_MAX_ELEMENTS, brute_sub_count, orbit_sub_count
from .partitions import Partition, insert_sorted

CACHE_FORMAT_VERSION = 1


class SubTable:
    """Memo of Sub_{a,lam}, optionally persisted to a JSON file.

    Reads are lock-free; insertion and saving hold a lock. Values never
    depend on the order in which entries were filled.
    """

    def __init__(self, path: str | os.PathLike | None = None):
        self.memo: dict[tuple[int, Partition], IntPoly1] = {}
        self.path = Path(path) if path is not None else None
        self._lock = threading.Lock()
        if self.path is not None and self.path.exists():
            self.load(self.path)

    def get(self, a: int, lam: Sequence[int]) -> IntPoly1:
        lam = Partition(lam)
        key = (a, lam)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        value = self._compute(a, lam)
        with self._lock:
            self.memo.setdefault(key, value)
        return value

    def _compute(self, a: int, lam: Partition) -> IntPoly1:
        if a < 0 or a > lam.size:
            return IntPoly1({}, "t")
        if not lam:
            return IntPoly1({0: 1}, "t")
        m, rho = lam[0], lam[1:]
        left = self.get(a - 1, insert_sorted(m - 1, rho))
        right = self.get(a, rho)
        return left + IntPoly1.monomial(a, 1, "t") * right

    def load(self, path: str | os.PathLike) -> None:
        data = json.loads(Path(path).read_text())
        if data.get("version") != CACHE_FORMAT_VERSION:
            return  # stale format: ignore and recompute
        with self._lock:
            for entry in data.get("entries", []):
                lam = Partition.parse(entry["lambda"])
                self.memo[(int(entry["a"]), lam)] = IntPoly1.from_pairs(entry["poly"], "t")

    def save(self, path: str | os.PathLike | None = None) -> None:
        target = Path(path) if path is not None else self.path
        if target is None:
            raise ValueError("no cache path configured")
        with self._lock:
            entries = [
                {"a": a, "lambda": lam.serialize(), "poly": poly.to_pairs()}
                for (a, lam), poly in sorted(self.memo.items(), key=lambda kv: (kv[0][1].size, kv[0][1], kv[0][0]))
            ]
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(json.dumps({"version": CACHE_FORMAT_VERSION, "entries": entries}, separators=(",", ":")))


_default_table = SubTable()


def default_table() -> SubTable:
    return _default_table


def set_default_table(table: SubTable) -> None:
    global _default_table
    _default_table = table


def sub_poly(a: int, lam: Sequence[int]) -> IntPoly1:
    """Sub_{a,lam}(t); zero when a is out of range.

    >>> str(sub_poly(1, (1, 1)))
    't + 1'
    """
    return _default_table.get(a, lam)


def sub_degree(a: int, lam: Sequence[int]) -> int | float:
    """t-degree of Sub_{a,lam} (-inf when it vanishes)."""
    return sub_poly(a, lam).degree


def odd_primes() -> Iterator[int]:
    p = 3
    while True:
        if all(p % d for d in range(3, int(p ** 0.5) + 1, 2)):
            yield p
        p += 2


def oracle_sub_count(q: int, lam: Sequence[int], a: int, max_elements: int = DEFAULT_MAX_ELEMENTS) -> int:
    """Count length-a submodules exhaustively when the module is small, else via orbit counting."""
    if q ** sum(lam) <= max_elements:
        return brute_sub_count(q, lam, a, max_elements)
    return orbit_sub_count(q, lam, a)


def sub_poly_interp(
    a: int,
    lam: Sequence[int],
    counter: Callable[[int, Partition, int], int] | None = None,
) -> IntPoly1:
    """Rebuild Sub_{a,lam} from counts at odd primes 3, 5, 7, ... plus one surplus prime.

    The degree bound is the degree of the recursion's answer. ``counter``
    defaults to :func:`oracle_sub_count`; pass ``brute_sub_count`` to insist on
    exhaustive enumeration (and get SizeBound when the primes outgrow it).
    """
    lam = Partition(lam)
    deg = sub_degree(a, lam)
    if deg < 0:
        return IntPoly1({}, "t")
    count = counter or oracle_sub_count
    primes = []
    gen = odd_primes()
    while len(primes) < deg + 2:
        primes.append(next(gen))
    points = [(p, count(p, lam, a)) for p in primes]
    return interpolate(points, int(deg), "t")


def gaussian_binomial(n: int, k: int) -> IntPoly1:
    """[n choose k]_t from the q-Pascal rule [n,k] = [n-1,k-1] + t^k [n-1,k]."""
    if k < 0 or k > n:
        return IntPoly1({}, "t")
    if k == 0 or k == n:
        return IntPoly1({0: 1}, "t")
    return gaussian_binomial(n - 1, k - 1) + IntPoly1.monomial(k, 1, "t") * gaussian_binomial(n - 1, k)
