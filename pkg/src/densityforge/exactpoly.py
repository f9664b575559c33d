"""Sparse exact integer polynomials in one variable and in the pair (q, T).

Both types are immutable, hashable and keep no zero coefficients, so ``==`` is
structural equality. Coefficients are Python ints (arbitrary precision).
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ExtraPointMismatch, NonIntegralCoefficient, PreconditionViolated

NEG_INF = -math.inf


def _clean(items: Iterable[tuple[object, int]]) -> dict:
    out: dict = {}
    for k, c in items:
        if c:
            out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


def _monomial(var: str, e: int) -> str:
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


def _format_terms(terms: list[tuple[int, str]]) -> str:
    """Join (coeff, monomial) pairs as ``a*m + b*n - ...``."""
    if not terms:
        return "0"
    pieces = []
    for i, (c, mono) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        if i == 0:
            pieces.append(f"-{body}" if c < 0 else body)
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


class IntPoly1:
    """Polynomial in a single variable with integer coefficients."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Mapping[int, int] | Sequence[int] = (), var: str = "t"):
        items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
        cleaned = _clean((int(e), int(c)) for e, c in items)
        if any(e < 0 for e in cleaned):
            raise ValueError("negative exponent in IntPoly1")
        self.coeffs = cleaned
        self.var = var

    @classmethod
    def monomial(cls, e: int, c: int = 1, var: str = "t") -> "IntPoly1":
        return cls({e: c}, var)

    @property
    def degree(self) -> float | int:
        return max(self.coeffs) if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, e: int) -> int:
        return self.coeffs.get(e, 0)

    def coefficient_list(self) -> list[int]:
        if not self.coeffs:
            return []
        return [self.coeffs.get(e, 0) for e in range(max(self.coeffs) + 1)]

    def _coerce(self, other) -> "IntPoly1":
        if isinstance(other, IntPoly1):
            return other
        if isinstance(other, int):
            return IntPoly1({0: other}, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return IntPoly1(_clean(list(self.coeffs.items()) + list(other.coeffs.items())), self.var)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly1({e: -c for e, c in self.coeffs.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return IntPoly1(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = IntPoly1({0: 1}, self.var)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly1({0: other}, self.var)
        if not isinstance(other, IntPoly1):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __call__(self, x):
        """Horner evaluation; works for ints, Fractions, or anything ring-like."""
        if not self.coeffs:
            return 0
        acc = 0
        for e in range(max(self.coeffs), -1, -1):
            acc = acc * x + self.coeffs.get(e, 0)
        return acc

    def to_text(self, descending: bool | None = None) -> str:
        # t-polynomials (Sub, Kostka-Foulkes) read highest degree first,
        # T-polynomials (densities) lowest first.
        if descending is None:
            descending = self.var != "T"
        exps = sorted(self.coeffs, reverse=descending)
        return _format_terms([(self.coeffs[e], _monomial(self.var, e)) for e in exps])

    def to_pairs(self) -> list[list[int]]:
        return [[e, self.coeffs[e]] for e in sorted(self.coeffs)]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]], var: str = "t") -> "IntPoly1":
        return cls({int(e): int(c) for e, c in pairs}, var)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"IntPoly1({self.to_text()!r}, var={self.var!r})"


class IntPoly2:
    """Polynomial in q and T with integer coefficients, keyed by (e_q, e_T)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], int] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        cleaned = _clean(((int(a), int(b)), int(c)) for (a, b), c in items)
        for eq, eT in cleaned:
            if eq < 0 or eT < 0:
                raise ValueError("IntPoly2 exponents must be nonnegative")
        self.coeffs = cleaned

    @classmethod
    def const(cls, c: int) -> "IntPoly2":
        return cls({(0, 0): c})

    @classmethod
    def q(cls) -> "IntPoly2":
        return cls({(1, 0): 1})

    @classmethod
    def T(cls) -> "IntPoly2":
        return cls({(0, 1): 1})

    @classmethod
    def from_T_coeffs(cls, coeffs: Sequence[IntPoly1]) -> "IntPoly2":
        """Build sum_k coeffs[k](q) * T^k from polynomials in q."""
        return cls({(eq, k): c for k, p in enumerate(coeffs) for eq, c in p.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree_T(self) -> float | int:
        return max(eT for _, eT in self.coeffs) if self.coeffs else NEG_INF

    @property
    def degree_q(self) -> float | int:
        return max(eq for eq, _ in self.coeffs) if self.coeffs else NEG_INF

    def coeff_T(self, k: int) -> IntPoly1:
        """Coefficient of T^k as a polynomial in q."""
        return IntPoly1({eq: c for (eq, eT), c in self.coeffs.items() if eT == k}, "q")

    def _coerce(self, other):
        if isinstance(other, IntPoly2):
            return other
        if isinstance(other, int):
            return IntPoly2.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return IntPoly2(_clean(list(self.coeffs.items()) + list(other.coeffs.items())))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly2({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self.coeffs.items():
            for (a2, b2), c2 in other.coeffs.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return IntPoly2(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = IntPoly2.const(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly2.const(other)
        if not isinstance(other, IntPoly2):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def subst(
        self,
        *,
        q_sign: int = 1,
        q_exp: int = 1,
        T_sign: int = 1,
        T_qpow: int = 0,
        T_exp: int = 1,
    ) -> "IntPoly2":
        """Simultaneous substitution q -> q_sign*q^q_exp, T -> T_sign*q^T_qpow*T^T_exp.

        Every rule used by the density identities is a special case:
        ``T -> -T`` is ``T_sign=-1``, ``T -> q^j T`` is ``T_qpow=j`` and so on.
        """
        if q_sign not in (1, -1) or T_sign not in (1, -1):
            raise PreconditionViolated("substitution signs must be +1 or -1")
        if q_exp < 1 or T_exp < 1 or T_qpow < 0:
            raise PreconditionViolated("substitution needs q_exp, T_exp >= 1 and T_qpow >= 0")
        out: dict[tuple[int, int], int] = {}
        for (eq, eT), c in self.coeffs.items():
            sign = (q_sign ** eq) * (T_sign ** eT)
            key = (eq * q_exp + eT * T_qpow, eT * T_exp)
            out[key] = out.get(key, 0) + sign * c
        return IntPoly2(out)

    def neg_T(self) -> "IntPoly2":
        return self.subst(T_sign=-1)

    def neg_q(self) -> "IntPoly2":
        return self.subst(q_sign=-1)

    def shift_T(self, j: int) -> "IntPoly2":
        """T -> q^j T."""
        return self.subst(T_qpow=j)

    def pow_T(self, e: int) -> "IntPoly2":
        return self.subst(T_exp=e)

    def pow_q(self, e: int) -> "IntPoly2":
        return self.subst(q_exp=e)

    def reverse_T(self, d: int) -> "IntPoly2":
        """T^d * P(1/T)."""
        if self.coeffs and self.degree_T > d:
            raise PreconditionViolated(f"T-degree {self.degree_T} exceeds reversal degree {d}")
        return IntPoly2({(eq, d - eT): c for (eq, eT), c in self.coeffs.items()})

    def eval_q(self, q0: int) -> IntPoly1:
        out: dict[int, int] = {}
        for (eq, eT), c in self.coeffs.items():
            out[eT] = out.get(eT, 0) + c * q0 ** eq
        return IntPoly1(out, "T")

    def to_text(self) -> str:
        """Canonical text form, grouped by ascending T power, e.g. ``1 + (q-1)*T + T^2``."""
        if not self.coeffs:
            return "0"
        terms = []
        for eT in sorted({eT for _, eT in self.coeffs}):
            qpoly = {eq: c for (eq, e), c in self.coeffs.items() if e == eT}
            tmono = _monomial("T", eT)
            if len(qpoly) == 1:
                ((eq, c),) = qpoly.items()
                mono = "*".join(m for m in (_monomial("q", eq), tmono) if m)
                terms.append((c, mono))
            else:
                order = sorted(qpoly, reverse=True)
                sign = -1 if qpoly[order[0]] < 0 else 1
                inner = _format_terms([(sign * qpoly[e], _monomial("q", e)) for e in order])
                inner = inner.replace(" ", "")
                mono = f"({inner})" + (f"*{tmono}" if tmono else "")
                terms.append((sign, mono))
        return _format_terms(terms)

    def to_latex(self) -> str:
        return re.sub(r"\^(\d+)", r"^{\1}", self.to_text().replace("*", " "))

    def to_json(self) -> list[list[int]]:
        """List of [e_q, e_T, coeff], sorted by (e_T, e_q)."""
        return [[eq, eT, self.coeffs[(eq, eT)]] for (eq, eT) in sorted(self.coeffs, key=lambda k: (k[1], k[0]))]

    @classmethod
    def from_json(cls, rows: Iterable[Sequence[int]]) -> "IntPoly2":
        return cls({(int(a), int(b)): int(c) for a, b, c in rows})

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"IntPoly2({self.to_text()!r})"


def interpolate(points: Sequence[tuple[int, int]], degree_bound: int, var: str = "t") -> IntPoly1:
    """Exact Lagrange interpolation through the first ``degree_bound + 1`` points.

    Any further points are checked against the result. Raises
    NonIntegralCoefficient or ExtraPointMismatch when the data is not an
    integer polynomial of the claimed degree.
    """
    if degree_bound < 0:
        raise PreconditionViolated("degree_bound must be >= 0")
    pts = [(int(x), int(y)) for x, y in points]
    if len(pts) < degree_bound + 1:
        raise PreconditionViolated(f"need {degree_bound + 1} points, got {len(pts)}")
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise PreconditionViolated("interpolation nodes must be distinct")
    base = pts[: degree_bound + 1]
    coeffs = [Fraction(0)] * (degree_bound + 1)
    for i, (xi, yi) in enumerate(base):
        # basis polynomial prod_{j != i} (t - xj) / (xi - xj), built coefficientwise
        basis = [Fraction(1)]
        denom = 1
        for j, (xj, _) in enumerate(base):
            if j == i:
                continue
            nxt = [Fraction(0)] * (len(basis) + 1)
            for k, b in enumerate(basis):
                nxt[k + 1] += b
                nxt[k] -= xj * b
            basis = nxt
            denom *= xi - xj
        for k, b in enumerate(basis):
            coeffs[k] += yi * b / denom
    bad = [c for c in coeffs if c.denominator != 1]
    if bad:
        raise NonIntegralCoefficient(f"interpolated coefficients not integral: {coeffs}")
    poly = IntPoly1({k: int(c) for k, c in enumerate(coeffs)}, var)
    for x, y in pts[degree_bound + 1:]:
        if poly(x) != y:
            raise ExtraPointMismatch(f"{poly} gives {poly(x)} at {x}, expected {y}")
    return poly
