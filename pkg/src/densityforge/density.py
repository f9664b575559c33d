"""Density polynomials of Hermitian torsion modules, local and global.

Local polynomials live in Z[q, T] with q symbolic. At a split place the
polynomial is Den+(lam) = sum_a Sub_{a,lam}(q) T^a; at an inert place it is
Den-(lam) = sum_a (-1)^a Sub_{a,lam}(-q) T^a. The twisted variant replaces T
by -T at inert places. A global polynomial multiplies the local ones after
q -> q^deg, T -> T^deg. The same polynomials serve equal and mixed
characteristic, so no p-adic arithmetic is needed.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Sequence

from .errors import PreconditionViolated
from .exactpoly import IntPoly2
from .partitions import Partition, insert_sorted
from .subcount import sub_poly


class PlaceKind(enum.Enum):
    SPLIT = "split"
    INERT = "inert"

    @property
    def eta(self) -> int:
        """Value of the quadratic character at a uniformizer."""
        return 1 if self is PlaceKind.SPLIT else -1


@dataclass(frozen=True)
class LocalDatum:
    deg: int
    kind: PlaceKind
    lam: Partition

    def __post_init__(self):
        if self.deg < 1:
            raise PreconditionViolated(f"place degree must be positive, got {self.deg}")
        object.__setattr__(self, "lam", Partition(self.lam))
        object.__setattr__(self, "kind", PlaceKind(self.kind))

    @property
    def length(self) -> int:
        """Contribution deg * |lam| to the total degree d."""
        return self.deg * self.lam.size

    def to_json(self) -> dict[str, Any]:
        return {"deg": self.deg, "kind": self.kind.value, "type": self.lam.serialize()}

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "LocalDatum":
        return cls(int(obj["deg"]), PlaceKind(obj["kind"]), Partition.parse(str(obj["type"])))


@dataclass(frozen=True)
class GlobalPlaceData:
    q: int
    places: tuple[LocalDatum, ...] = field(default=())

    def __post_init__(self):
        if self.q < 3 or self.q % 2 == 0:
            raise PreconditionViolated(f"q must be an odd prime power, got {self.q}")
        object.__setattr__(self, "places", tuple(self.places))

    @property
    def d(self) -> int:
        return sum(p.length for p in self.places)

    def to_json(self) -> dict[str, Any]:
        return {"q": self.q, "places": [p.to_json() for p in self.places]}

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "GlobalPlaceData":
        return cls(int(obj["q"]), tuple(LocalDatum.from_json(p) for p in obj.get("places", [])))

    @classmethod
    def load(cls, path: str | Path) -> "GlobalPlaceData":
        return cls.from_json(json.loads(Path(path).read_text()))


def m_factor(eps: int, a: int) -> IntPoly2:
    """prod_{i<a} (1 - (eps*q)^i T)."""
    if eps not in (1, -1):
        raise PreconditionViolated("eps must be +1 or -1")
    out = IntPoly2.const(1)
    for i in range(a):
        out = out * IntPoly2({(0, 0): 1, (i, 1): -(eps ** i)})
    return out


@lru_cache(maxsize=None)
def _den_split(lam: Partition) -> IntPoly2:
    coeffs: dict[tuple[int, int], int] = {}
    for a in range(lam.size + 1):
        for e, c in sub_poly(a, lam).coeffs.items():
            coeffs[(e, a)] = c
    return IntPoly2(coeffs)


@lru_cache(maxsize=None)
def _den_inert(lam: Partition) -> IntPoly2:
    coeffs: dict[tuple[int, int], int] = {}
    for a in range(lam.size + 1):
        for e, c in sub_poly(a, lam).coeffs.items():
            coeffs[(e, a)] = (-1) ** (a + e) * c
    return IntPoly2(coeffs)


def den_split(lam: Sequence[int]) -> IntPoly2:
    """Split density polynomial sum_a Sub_{a,lam}(q) T^a."""
    return _den_split(Partition(lam))


def den_inert(lam: Sequence[int]) -> IntPoly2:
    """Inert density polynomial sum_a (-1)^a Sub_{a,lam}(-q) T^a."""
    return _den_inert(Partition(lam))


def den_local(kind: PlaceKind | str, lam: Sequence[int]) -> IntPoly2:
    kind = PlaceKind(kind)
    return den_split(lam) if kind is PlaceKind.SPLIT else den_inert(lam)


def den_eta_local(kind: PlaceKind | str, lam: Sequence[int]) -> IntPoly2:
    """Twisted local polynomial Den(eta(pi) T)."""
    kind = PlaceKind(kind)
    P = den_local(kind, lam)
    return P if kind is PlaceKind.SPLIT else P.neg_T()


def den_global(G: GlobalPlaceData, twisted: bool = False) -> IntPoly2:
    """Product over places of the (twisted) local polynomial at q^deg, T^deg."""
    local = den_eta_local if twisted else den_local
    out = IntPoly2.const(1)
    for place in G.places:
        out = out * local(place.kind, place.lam).subst(q_exp=place.deg, T_exp=place.deg)
    return out


def functional_defect(G: GlobalPlaceData) -> int:
    """(-1)^(sum of |lam_v| over inert places v)."""
    return (-1) ** sum(p.lam.size for p in G.places if p.kind is PlaceKind.INERT)


def _check_peel(m: int, lam: Partition, slack: int) -> None:
    top = lam[0] if lam else 0
    if m < max(top + slack, 1):
        raise PreconditionViolated(f"need m >= {max(top + slack, 1)} for lam={tuple(lam)}, got m={m}")


def den_split_induction(m: int, lam: Sequence[int]) -> IntPoly2:
    """T Den+((m-1, lam)) + Den+(lam)(qT); equals Den+((m, lam)) for m >= lam_1."""
    lam = Partition(lam)
    _check_peel(m, lam, 0)
    return IntPoly2.T() * den_split(insert_sorted(m - 1, lam)) + den_split(lam).shift_T(1)


def den_inert_induction(m: int, lam: Sequence[int]) -> IntPoly2:
    """-T Den-((m-1, lam)) + Den-(lam)(-qT); equals Den-((m, lam)) for m >= lam_1."""
    lam = Partition(lam)
    _check_peel(m, lam, 0)
    return -IntPoly2.T() * den_inert(insert_sorted(m - 1, lam)) + den_inert(lam).subst(T_sign=-1, T_qpow=1)


def den_inert_weak(m: int, lam: Sequence[int]) -> IntPoly2:
    """T^2 Den-((m-2, lam)) + (1-T) Den-(lam)(-qT); equals Den-((m, lam)) for m >= lam_1 + 1.

    m >= 2 is also required so that m - 2 is a legal part (0 means dropped).
    """
    lam = Partition(lam)
    _check_peel(m, lam, 1)
    if m < 2:
        raise PreconditionViolated(f"need m >= 2, got m={m}")
    T = IntPoly2.T()
    return T * T * den_inert(insert_sorted(m - 2, lam)) + (1 - T) * den_inert(lam).subst(T_sign=-1, T_qpow=1)
