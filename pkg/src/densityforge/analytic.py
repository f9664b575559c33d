"""Exact s-exponential calculus and the Eisenstein-side formulas built on it.

Every quantity of the form q^(alpha*s + beta) with half-integral alpha, beta
is a monomial w^(2 alpha) x^(2 beta) in w = q^(s/2) and x = q^(1/2). ``SExp``
is a Laurent polynomial in (w, x) with rational coefficients, and ``SRat`` is
a quotient of two of them. The operator D = (1/log q) d/ds acts by
D(w^k) = (k/2) w^k, so r-th normalized derivatives at s = 0 are exact
rational functions of x.

q stays symbolic throughout. L-polynomial coefficients above the middle
degree are stored as powers of q times the mirrored lower coefficients, which
makes their functional equation hold identically in x.

All Hecke-character values that would multiply both sides of an identity
(chi(det E) and friends) are taken to be 1.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Any, Mapping, Sequence

from sympy import QQ
from sympy.polys.rings import ring

from .density import GlobalPlaceData, LocalDatum, den_global
from .errors import BundleDataError, CurveDataError, ParityMismatch, PoleAtCenter, PreconditionViolated
from .exactpoly import IntPoly2
from .finitemod import prime_power

Monomial = tuple[int, int]  # (w exponent, x exponent)


def _as_fraction(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


def _half(v) -> int:
    """2*v as an int, for a half-integer v."""
    two = 2 * _as_fraction(v)
    if two.denominator != 1:
        raise PreconditionViolated(f"{v} is not a half-integer")
    return int(two)


class SExp:
    """Finite sum of c * w^i * x^j, rational c, integer i and j."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean: dict[Monomial, Fraction] = {}
        for k, c in (terms or {}).items():
            c = _as_fraction(c)
            if c:
                k = (int(k[0]), int(k[1]))
                clean[k] = clean.get(k, Fraction(0)) + c
        self.terms = {k: c for k, c in clean.items() if c}

    @classmethod
    def const(cls, c) -> "SExp":
        return cls({(0, 0): c})

    @classmethod
    def q_power(cls, s_coeff=0, const=0, c=1) -> "SExp":
        """c * q^(s_coeff*s + const)."""
        return cls({(_half(s_coeff), _half(const)): c})

    @classmethod
    def x_power(cls, j: int, c=1) -> "SExp":
        return cls({(0, j): c})

    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other) -> "SExp":
        return other if isinstance(other, SExp) else SExp.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return SExp(out)

    __radd__ = __add__

    def __neg__(self):
        return SExp({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, SRat):
            return NotImplemented
        other = self._coerce(other)
        out: dict[Monomial, Fraction] = {}
        for (a, b), c in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a + a2, b + b2)
                out[k] = out.get(k, Fraction(0)) + c * c2
        return SExp(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = SExp.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, SRat):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            other = SExp.const(other)
        return isinstance(other, SExp) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def D(self) -> "SExp":
        """Normalized s-derivative: w^k -> (k/2) w^k."""
        return SExp({k: c * Fraction(k[0], 2) for k, c in self.terms.items()})

    def at_s0(self) -> "SExp":
        """Set w = 1."""
        out: dict[Monomial, Fraction] = {}
        for (_, b), c in self.terms.items():
            out[(0, b)] = out.get((0, b), Fraction(0)) + c
        return SExp(out)

    def flip_s(self) -> "SExp":
        """s -> -s."""
        return SExp({(-a, b): c for (a, b), c in self.terms.items()})

    def shift_half(self) -> "SExp":
        """s -> s + 1/2, i.e. w^k -> w^k x^(k/2); needs even w-exponents."""
        out = {}
        for (a, b), c in self.terms.items():
            if a % 2:
                raise PreconditionViolated("half shift needs even w-exponents")
            out[(a, b + a // 2)] = c
        return SExp(out)

    def is_even_in_s(self) -> bool:
        return self == self.flip_s()

    def evaluate(self, q: float, s: float = 0.0) -> float:
        return sum(float(c) * q ** (a * s / 2 + b / 2) for (a, b), c in self.terms.items())

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (a, b), c in sorted(self.terms.items(), key=lambda kv: (-kv[0][1], -kv[0][0])):
            exp = _exp_text(a, b)
            mag = abs(c)
            if exp:
                body = exp if mag == 1 else f"{mag}*{exp}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            if not pieces:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"SExp({self.to_text()})"


def _exp_text(a: int, b: int) -> str:
    """q-power text for w^a x^b = q^(a*s/2 + b/2)."""
    parts = []
    if b:
        fb = Fraction(b, 2)
        parts.append(str(fb))
    if a:
        fa = Fraction(a, 2)
        parts.append(("" if fa == 1 else "-" if fa == -1 else f"{fa}*") + "s")
    if not parts:
        return ""
    inner = " + ".join(parts).replace("+ -", "- ")
    if not a and fb.denominator == 1:
        return "q" if fb == 1 else f"q^{fb}"
    return f"q^({inner})"


_RING, _W, _X = ring("w,x", QQ)


def _to_poly(e: SExp) -> tuple[int, int, Any]:
    mw = min(a for a, _ in e.terms)
    mx = min(b for _, b in e.terms)
    p = _RING({(a - mw, b - mx): QQ(c.numerator, c.denominator) for (a, b), c in e.terms.items()})
    return mw, mx, p


def _from_poly(p, ow: int = 0, ox: int = 0) -> SExp:
    return SExp({(a + ow, b + ox): Fraction(int(c.numerator), int(c.denominator)) for (a, b), c in p.terms()})


class SRat:
    """num/den with num, den in SExp; kept reduced by a polynomial GCD.

    Equality is equality of rational functions (cross multiplication).
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce: bool = True):
        num = num if isinstance(num, SExp) else SExp.const(num)
        den = SExp.const(1) if den is None else (den if isinstance(den, SExp) else SExp.const(den))
        if den.is_zero():
            raise ZeroDivisionError("SRat with zero denominator")
        self.num, self.den = num, den
        if reduce:
            self._reduce()

    def _reduce(self) -> None:
        if self.num.is_zero():
            self.den = SExp.const(1)
            return
        if len(self.den.terms) == 1:
            # monomial denominator: fold it into the numerator, no GCD needed
            ((a, b), c), = self.den.terms.items()
            self.num = SExp({(k0 - a, k1 - b): v / c for (k0, k1), v in self.num.terms.items()})
            self.den = SExp.const(1)
            return
        nw, nx, Np = _to_poly(self.num)
        dw, dx, Dp = _to_poly(self.den)
        _, Np, Dp = Np.cofactors(Dp)
        lc = Dp.LC
        Np, Dp = Np.quo_ground(lc), Dp.quo_ground(lc)
        self.num = _from_poly(Np, nw - dw, nx - dx)
        self.den = _from_poly(Dp)

    @classmethod
    def coerce(cls, v) -> "SRat":
        return v if isinstance(v, SRat) else cls(v)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        o = SRat.coerce(other)
        if self.den == o.den:
            return SRat(self.num + o.num, self.den)
        return SRat(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return SRat(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-SRat.coerce(other))

    def __rsub__(self, other):
        return SRat.coerce(other) - self

    def __mul__(self, other):
        o = SRat.coerce(other)
        return SRat(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = SRat.coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero SRat")
        return SRat(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return SRat.coerce(other) / self

    def __eq__(self, other):
        if isinstance(other, (SExp, int, Fraction)):
            other = SRat(other)
        if not isinstance(other, SRat):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def D(self) -> "SRat":
        """Quotient rule."""
        return SRat(self.num.D() * self.den - self.num * self.den.D(), self.den * self.den)

    def flip_s(self) -> "SRat":
        return SRat(self.num.flip_s(), self.den.flip_s())

    def shift_half(self) -> "SRat":
        return SRat(self.num.shift_half(), self.den.shift_half())

    def is_even_in_s(self) -> bool:
        return self == self.flip_s()

    def at_s0(self) -> "SRat":
        d = self.den.at_s0()
        if d.is_zero():
            raise PoleAtCenter(f"denominator {self.den} vanishes at s = 0")
        return SRat(self.num.at_s0(), d)

    def evaluate(self, q: float, s: float = 0.0) -> float:
        return self.num.evaluate(q, s) / self.den.evaluate(q, s)

    def to_text(self) -> str:
        if self.den == SExp.const(1):
            return self.num.to_text()
        return f"({self.num.to_text()})/({self.den.to_text()})"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"SRat({self.to_text()})"


def normalized_derivative(f, r: int) -> SRat:
    """(1/log q)^r d^r/ds^r f at s = 0, as a rational function of x alone.

    With f = N/Den reduced and c = Den(s=0) != 0, the Leibniz rule on
    N = f * Den gives f_k = (N_k - sum_{j<k} C(k,j) f_j Den_{k-j}) / c where
    subscripts are D-derivatives at s = 0.
    """
    if r < 0:
        raise PreconditionViolated("derivative order must be nonnegative")
    f = SRat.coerce(f)
    c = f.den.at_s0()
    if c.is_zero():
        raise PoleAtCenter(f"denominator {f.den} vanishes at s = 0")
    nums, dens = [f.num], [f.den]
    for _ in range(r):
        nums.append(nums[-1].D())
        dens.append(dens[-1].D())
    vals: list[SRat] = []
    for k in range(r + 1):
        acc = SRat(nums[k].at_s0())
        for j in range(k):
            dk = dens[k - j].at_s0()
            if not dk.is_zero():
                acc = acc - vals[j] * SRat(dk * math.comb(k, j))
        vals.append(acc / SRat(c))
    return vals[r]


def from_density(P: IntPoly2, a=0, b=0) -> SExp:
    """Substitute T -> q^(a + b*s) into P(q, T), keeping q symbolic."""
    A, B = _half(a), _half(b)
    return SExp({(B * eT, 2 * eq + A * eT): c for (eq, eT), c in P.coeffs.items()})


# ---------------------------------------------------------------------------
# curve and bundle data


def _mirror_symbolic(coeffs: Sequence[int], top: int) -> list[SExp]:
    """Coefficients c_j of a degree-``top`` polynomial obeying c_{top-j} = q^(top/2 - j) c_j.

    Upper entries are rewritten through the lower ones so the relation holds
    identically in x; their numeric value is unchanged.
    """
    half = top // 2
    out = []
    for j, c in enumerate(coeffs):
        if j <= half:
            out.append(SExp.const(c))
        else:
            out.append(SExp.x_power(2 * (j - half), coeffs[top - j]))
    return out


def _obeys_mirror(coeffs: Sequence[int], top: int, q: int) -> bool:
    for j in range(top + 1):
        e = Fraction(top, 2) - j
        if Fraction(coeffs[top - j]) != Fraction(q) ** e * coeffs[j]:
            return False
    return True


@dataclass(frozen=True)
class CurveData:
    """Arithmetic data of a curve with an etale double cover.

    ``L_eta`` lists the coefficients of P_eta(u) with L(s, eta) = P_eta(q^-s);
    ``zeta_num`` those of P_X(u) with zeta_X(s) = P_X(u)/((1-u)(1-qu)).
    ``similitude_shift`` is added to deg_omega in the Eisenstein prefactors
    only; it is carried for experiments and not tested against anything.
    """

    q: int
    deg_omega: int
    L_eta: tuple[int, ...]
    zeta_num: tuple[int, ...] = (1,)
    similitude_shift: int = 0
    _L_sym: tuple[SExp, ...] = field(init=False, repr=False, compare=False)
    _zeta_sym: tuple[SExp, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "L_eta", tuple(int(c) for c in self.L_eta))
        object.__setattr__(self, "zeta_num", tuple(int(c) for c in self.zeta_num))
        try:
            p, _ = prime_power(self.q)
        except ValueError as exc:
            raise CurveDataError(str(exc)) from None
        if p == 2:
            raise CurveDataError("q must be odd")
        dw = self.deg_omega
        if dw < 0 or dw % 2:
            raise CurveDataError(f"deg_omega must be a nonnegative even integer, got {dw}")
        if len(self.L_eta) != dw + 1:
            raise CurveDataError(f"L_eta needs {dw + 1} coefficients, got {len(self.L_eta)}")
        if self.L_eta[0] != 1:
            raise CurveDataError("L_eta must have constant term 1")
        if not _obeys_mirror(self.L_eta, dw, self.q):
            bad = [j for j in range(dw + 1)
                   if Fraction(self.L_eta[dw - j]) != Fraction(self.q) ** (Fraction(dw, 2) - j) * self.L_eta[j]]
            raise CurveDataError(
                f"L_eta violates l[{dw}-j] = q^({dw}/2-j) l[j] at j={bad[0]}: {list(self.L_eta)}")
        object.__setattr__(self, "_L_sym", tuple(_mirror_symbolic(self.L_eta, dw)))
        zt = len(self.zeta_num) - 1
        if zt == dw + 2 and _obeys_mirror(self.zeta_num, zt, self.q):
            zsym = _mirror_symbolic(self.zeta_num, zt)
        else:
            zsym = [SExp.const(c) for c in self.zeta_num]
        object.__setattr__(self, "_zeta_sym", tuple(zsym))

    @property
    def genus(self) -> int:
        return self.deg_omega // 2 + 1

    @property
    def omega(self) -> int:
        """deg_omega plus the optional similitude shift."""
        return self.deg_omega + self.similitude_shift

    def L_coeffs(self) -> tuple[SExp, ...]:
        return self._L_sym

    def e_coeffs(self) -> list[SExp]:
        """e_m = (-1)^m l_m, the elementary symmetric functions of Frobenius eigenvalues."""
        return [c * (-1) ** m for m, c in enumerate(self._L_sym)]

    @classmethod
    def from_json(cls, obj: Mapping[str, Any]) -> "CurveData":
        try:
            return cls(int(obj["q"]), int(obj["deg_omega"]), tuple(obj["L_eta"]),
                       tuple(obj.get("zeta_num", (1,))), int(obj.get("similitude_shift", 0)))
        except KeyError as exc:
            raise CurveDataError(f"missing field {exc}") from None

    @classmethod
    def load(cls, path: str | Path) -> "CurveData":
        return cls.from_json(json.loads(Path(path).read_text()))

    def to_json(self) -> dict[str, Any]:
        out = {"q": self.q, "deg_omega": self.deg_omega, "L_eta": list(self.L_eta), "zeta_num": list(self.zeta_num)}
        if self.similitude_shift:
            out["similitude_shift"] = self.similitude_shift
        return out


@dataclass(frozen=True)
class BundleData:
    """A vector bundle by rank and degree, with d(E) = rank*deg_omega - deg."""

    rank: int
    deg: int
    deg_omega: int
    places: GlobalPlaceData | None = None

    def __post_init__(self):
        if self.rank < 0:
            raise BundleDataError("rank must be nonnegative")
        if self.places is not None and self.places.d != self.d:
            raise BundleDataError(f"d(E) = {self.d} but the places have total length {self.places.d}")

    @property
    def d(self) -> int:
        return self.rank * self.deg_omega - self.deg

    @classmethod
    def with_places(cls, C: CurveData, rank: int, places: Sequence[LocalDatum] | GlobalPlaceData) -> "BundleData":
        """Bundle whose degree is chosen so that d(E) matches the places."""
        G = places if isinstance(places, GlobalPlaceData) else GlobalPlaceData(C.q, tuple(places))
        return cls(rank, rank * C.deg_omega - G.d, C.deg_omega, G)

    def require_places(self) -> GlobalPlaceData:
        if self.places is None:
            raise BundleDataError("this formula needs place data attached to the bundle")
        return self.places

    @classmethod
    def from_json(cls, obj: Mapping[str, Any], C: CurveData) -> "BundleData":
        places = obj.get("places")
        G = None
        if places is not None:
            if isinstance(places, Mapping):
                G = GlobalPlaceData.from_json(places)
            else:
                G = GlobalPlaceData(C.q, tuple(LocalDatum.from_json(p) for p in places))
        rank = int(obj["rank"])
        deg = int(obj["deg"]) if "deg" in obj else rank * C.deg_omega - (G.d if G else 0)
        return cls(rank, deg, C.deg_omega, G)


@dataclass(frozen=True)
class CorankOneData:
    """Splitting data E = E0 + E_flat of a corank-one coefficient; E0 is a line bundle."""

    E0: BundleData
    E_flat: BundleData

    def __post_init__(self):
        if self.E0.rank != 1:
            raise BundleDataError("E0 must have rank 1")

    @property
    def n(self) -> int:
        return self.E_flat.rank + 1

    @property
    def d(self) -> int:
        return self.E0.d + self.E_flat.d


class Parity(enum.Enum):
    """Which power of eta the restricted character chi0 is, relative to the rank m."""

    SAME = "eta^m"
    SHIFTED = "eta^(m+1)"

    def lowered(self) -> "Parity":
        """The same character seen from rank m-1."""
        return Parity.SHIFTED if self is Parity.SAME else Parity.SAME


# ---------------------------------------------------------------------------
# L-functions and Eisenstein coefficients


def L_eta_shift(C: CurveData, c=0, slope: int = 2) -> SExp:
    """L(slope*s + c, eta) = sum_j l_j q^(-j (slope*s + c))."""
    out = SExp()
    for j, lj in enumerate(C.L_coeffs()):
        out = out + lj * SExp.q_power(-j * slope, -j * _as_fraction(c))
    return out


def zeta_shift(C: CurveData, c=0, slope: int = 2) -> SRat:
    """zeta_X(slope*s + c) = P_X(u) / ((1-u)(1-qu)) with u = q^(-(slope*s + c))."""
    u = SExp.q_power(-slope, -_as_fraction(c))
    num = SExp()
    for j, zj in enumerate(C._zeta_sym):
        num = num + zj * u ** j
    den = (1 - u) * (1 - SExp.x_power(2) * u)
    return SRat(num, den)


@lru_cache(maxsize=4096)
def script_L(C: CurveData, m: int, parity: Parity) -> SRat:
    """prod_{i=1}^m L(2s+i, eta^(i-m) chi0); eta-twisted factors give L, trivial ones zeta."""
    if m < 0:
        raise PreconditionViolated("m must be nonnegative")
    e = m if parity is Parity.SAME else m + 1
    out = SRat(1)
    for i in range(1, m + 1):
        if (i - m + e) % 2:
            out = out * SRat(L_eta_shift(C, i, 2))
        else:
            out = out * zeta_shift(C, i, 2)
    return out


def _density(E: BundleData, twisted: bool, a, b) -> SExp:
    return from_density(den_global(E.require_places(), twisted=twisted), a, b)


@lru_cache(maxsize=4096)
def eisenstein_coeff(C: CurveData, E: BundleData, m: int, parity: Parity) -> SRat:
    """q^((s-m/2) d(E)) q^(-m s omega) / script_L(m) * Den(q^-2s), twisted for the shifted parity."""
    if E.rank != m:
        raise PreconditionViolated(f"bundle rank {E.rank} differs from m = {m}")
    d = E.d
    pref = SExp.q_power(d, Fraction(-m * d, 2)) * SExp.q_power(-m * C.omega)
    dens = _density(E, parity is Parity.SHIFTED, 0, -2)
    return SRat(pref * dens) / script_L(C, m, parity)


def lambda_fn(C: CurveData, E_flat: BundleData) -> SRat:
    """q^(-s d) L(-2s, eta) Den_eta(q^(2s+1))."""
    d = E_flat.d
    return SRat(SExp.q_power(-d) * L_eta_shift(C, 0, -2) * _density(E_flat, True, 1, 2))


def lambda_via_eisenstein(C: CurveData, E_flat: BundleData, n: int) -> SRat:
    """q^((n/2) d) q^((n/2 + (n+1)s) omega) script_L(n) E_flat(s+1/2)_{n-1} at the shifted parity."""
    d = E_flat.d
    w = C.omega
    pref = SExp.q_power(0, Fraction(n * d, 2)) * SExp.q_power((n + 1) * w, Fraction(n * w, 2))
    E_shift = eisenstein_coeff(C, E_flat, n - 1, Parity.SHIFTED).shift_half()
    return SRat(pref) * script_L(C, n, Parity.SAME) * E_shift


def key_degree_integrand(C: CurveData, E: BundleData, d0: int) -> SRat:
    """q^(s(d0 + d)) L(2s, eta) Den_eta(q^(1-2s))."""
    return SRat(SExp.q_power(d0 + E.d) * L_eta_shift(C, 0, 2) * _density(E, True, 1, -2))


def key_degree_rhs(C: CurveData, E: BundleData, d0: int, r: int) -> SRat:
    """2 D^r[q^(s(d0+d)) L(2s, eta) Den_eta(q^(1-2s))] at s = 0 for even r; 0 for odd r.

    The integrand is not even in s, so the odd case is a stipulated zero,
    not a computed one.
    """
    if r % 2:
        return SRat(0)
    return 2 * normalized_derivative(key_degree_integrand(C, E, d0), r)


def off_center_integrand(C: CurveData, E: BundleData, e0_deg: int, n: int) -> SRat:
    """q^(n s omega + s deg E0) script_L(n) E(s+1/2)_{n-1}, E at the shifted parity."""
    if E.rank != n - 1:
        raise PreconditionViolated(f"bundle rank {E.rank} differs from n-1 = {n - 1}")
    E_shift = eisenstein_coeff(C, E, n - 1, Parity.SHIFTED).shift_half()
    return SRat(SExp.q_power(n * C.omega + e0_deg)) * script_L(C, n, Parity.SAME) * E_shift


def off_center_rhs(C: CurveData, E: BundleData, e0_deg: int, n: int, r: int) -> SRat:
    """2 q^((n/2)(d + omega)) D^r[off_center_integrand] at s = 0 for even r; 0 for odd r."""
    if r % 2:
        return SRat(0)
    pref = SExp.q_power(0, Fraction(n * (E.d + C.omega), 2))
    return 2 * SRat(pref) * normalized_derivative(off_center_integrand(C, E, e0_deg, n), r)


def genus_drop_summand(C: CurveData, E0: BundleData, E_flat: BundleData, m: int, parity: Parity) -> SRat:
    """q^((m/2+s) deg E0) q^(m s omega) script_L(m) E_flat(s+1/2)_{m-1}."""
    if E_flat.rank != m - 1:
        raise PreconditionViolated(f"E_flat rank {E_flat.rank} differs from m-1 = {m - 1}")
    e0 = E0.deg
    pref = SExp.q_power(e0, Fraction(m * e0, 2)) * SExp.q_power(m * C.omega)
    E_shift = eisenstein_coeff(C, E_flat, m - 1, parity.lowered()).shift_half()
    return SRat(pref) * script_L(C, m, parity) * E_shift


def genus_drop_bracket(C: CurveData, E0: BundleData, E_flat: BundleData, m: int, parity: Parity) -> SRat:
    """Sum of the genus-drop summand at s and at -s (even in s by construction)."""
    A = genus_drop_summand(C, E0, E_flat, m, parity)
    return A + A.flip_s()


def singular_coeff_via_genus_drop(C: CurveData, E0: BundleData, E_flat: BundleData, m: int,
                                  parity: Parity = Parity.SAME) -> SRat:
    """Corank-one coefficient: the genus-drop bracket over q^(m s omega) script_L(m)."""
    bracket = genus_drop_bracket(C, E0, E_flat, m, parity)
    return bracket / (SRat(SExp.q_power(m * C.omega)) * script_L(C, m, parity))


def corank_one_rhs(C: CurveData, data: CorankOneData, r: int) -> SRat:
    """q^((n/2) d(E)) D^r[q^(n s omega) script_L(n) singular_coeff] at s = 0."""
    n = data.n
    sing = singular_coeff_via_genus_drop(C, data.E0, data.E_flat, n, Parity.SAME)
    integrand = SRat(SExp.q_power(n * C.omega)) * script_L(C, n, Parity.SAME) * sing
    pref = SExp.q_power(0, Fraction(n * data.d, 2))
    return SRat(pref) * normalized_derivative(integrand, r)


def corank_one_via_lambda(C: CurveData, data: CorankOneData, r: int) -> SRat:
    """2 D^r[q^(-s d(E0)) Lambda(s, E_flat)] at s = 0."""
    f = SRat(SExp.q_power(-data.E0.d)) * lambda_fn(C, data.E_flat)
    return 2 * normalized_derivative(f, r)


def trace_identity_check(C: CurveData, deg_N: int, eta_N: int, r: int) -> tuple[SRat, SRat]:
    """Both sides of sum_m (-1)^m (deg_N - 2m)^r 2 e_m = 2 D^r[q^(s deg_N) L(2s, eta)].

    Only the branch with (-1)^r = eta_N is an identity of L-coefficients;
    the other branch raises ParityMismatch.
    """
    if eta_N not in (1, -1):
        raise PreconditionViolated("eta_N must be +1 or -1")
    if (-1) ** r != eta_N:
        raise ParityMismatch(f"(-1)^{r} != eta_N = {eta_N}")
    lhs = SExp()
    for m, e in enumerate(C.e_coeffs()):
        lhs = lhs + e * ((-1) ** m * 2 * (deg_N - 2 * m) ** r)
    rhs = 2 * normalized_derivative(SRat(SExp.q_power(deg_N) * L_eta_shift(C, 0, 2)), r)
    return SRat(lhs), rhs


def render_float(value: SRat, q: float) -> float:
    """Numeric value at s = 0 and the given q."""
    return value.evaluate(q)
