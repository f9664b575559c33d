"""Brute-force oracles over finite chain rings.

Everything here works at the level of explicit vectors over a finite field
GF(p^e). A torsion module of Jordan type ``lam`` over GF(q)[[pi]] is the
GF(q)-vector space with coordinates (i, k), 0 <= k < lam[i], standing for the
coefficient of pi^k e_i; pi shifts k up by one and truncates. A submodule is a
pi-stable subspace and is stored by its reduced row echelon basis, which is a
canonical form.

These routines are deliberately independent of the closed formulas in
``subcount`` and ``density``; they exist to check them.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import PreconditionViolated, SizeBound
from .exactpoly import IntPoly1
from .partitions import Partition, conjugate

DEFAULT_MAX_ELEMENTS = 20000

Vector = tuple[int, ...]


# ---------------------------------------------------------------------------
# finite fields


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p^e, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


def _poly_mod_is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2 over GF(p)."""
    deg = len(coeffs) - 1

    def remainder(num: list[int], den: Sequence[int]) -> list[int]:
        num = num[:]
        dd = len(den) - 1
        for i in range(len(num) - 1, dd - 1, -1):
            c = num[i] % p
            if c:
                for j in range(dd + 1):
                    num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
        return [c % p for c in num[:dd]]

    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not any(remainder(list(coeffs), list(low) + [1])):
                return False
    return True


class FiniteField:
    """GF(p^e) with elements encoded as ints 0..q-1 (base-p digits, low degree first).

    The defining polynomial is the monic irreducible of degree e whose
    coefficient sequence (c_0, ..., c_{e-1}) is lexicographically smallest.
    Arithmetic goes through precomputed tables.
    """

    def __init__(self, p: int, e: int = 1):
        if p % 2 == 0 or prime_power(p) != (p, 1):
            raise PreconditionViolated(f"characteristic must be an odd prime, got {p}")
        if e < 1:
            raise PreconditionViolated("extension degree must be >= 1")
        self.p, self.e, self.q = p, e, p ** e
        self.modulus = self._choose_modulus()
        self._build_tables()

    @classmethod
    @lru_cache(maxsize=None)
    def of_order(cls, q: int) -> "FiniteField":
        p, e = prime_power(q)
        return cls(p, e)

    def _choose_modulus(self) -> tuple[int, ...]:
        p, e = self.p, self.e
        if e == 1:
            return (0, 1)
        for low in itertools.product(range(p), repeat=e):
            coeffs = tuple(low) + (1,)
            if _poly_mod_is_irreducible(coeffs, p):
                return coeffs
        raise AssertionError("no irreducible polynomial found")

    def to_vec(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_vec(self, v: Sequence[int]) -> int:
        a = 0
        for c in reversed(v):
            a = a * self.p + (c % self.p)
        return a

    def _mul_raw(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        va, vb = self.to_vec(a), self.to_vec(b)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(va):
            if x:
                for j, y in enumerate(vb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for i in range(len(prod) - 1, e - 1, -1):
            c = prod[i]
            if c:
                for j in range(e + 1):
                    prod[i - e + j] = (prod[i - e + j] - c * self.modulus[j]) % p
        return self.from_vec(prod[:e])

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        self.add = [[self.from_vec([(x + y) % p for x, y in zip(self.to_vec(a), self.to_vec(b))])
                     for b in range(q)] for a in range(q)]
        self.mul = [[self._mul_raw(a, b) for b in range(q)] for a in range(q)]
        self.neg = [self.from_vec([(-x) % p for x in self.to_vec(a)]) for a in range(q)]
        self.sub = [[self.add[a][self.neg[b]] for b in range(q)] for a in range(q)]
        self.inv = [0] * q
        for a in range(1, q):
            self.inv[a] = next(b for b in range(1, q) if self.mul[a][b] == 1)

    def power(self, a: int, n: int) -> int:
        result = 1
        for _ in range(n):
            result = self.mul[result][a]
        return result

    @property
    def conj(self) -> list[int]:
        """Table of x -> x^(p^(e/2)), the involution of GF(q^2)/GF(q)."""
        if self.e % 2:
            raise PreconditionViolated("conjugation needs an even extension degree")
        if not hasattr(self, "_conj"):
            k = self.p ** (self.e // 2)
            self._conj = [self.power(a, k) for a in range(self.q)]
        return self._conj

    def __repr__(self):
        return f"FiniteField(p={self.p}, e={self.e})"


# ---------------------------------------------------------------------------
# linear algebra over a FiniteField


def rref(F: FiniteField, rows: Sequence[Vector]) -> tuple[Vector, ...]:
    """Reduced row echelon form, zero rows dropped; pivots are the first nonzero entries."""
    mat = [list(r) for r in rows]
    if not mat:
        return ()
    ncols = len(mat[0])
    out: list[list[int]] = []
    mul, sub, inv = F.mul, F.sub, F.inv
    for col in range(ncols):
        piv = next((i for i, r in enumerate(mat) if r[col]), None)
        if piv is None:
            continue
        prow = mat.pop(piv)
        s = inv[prow[col]]
        prow = [mul[s][x] for x in prow]
        for r in itertools.chain(mat, out):
            c = r[col]
            if c:
                for j in range(col, ncols):
                    if prow[j]:
                        r[j] = sub[r[j]][mul[c][prow[j]]]
        out.append(prow)
        if not mat:
            break
    return tuple(tuple(r) for r in out)


def pivots(basis: Sequence[Vector]) -> list[int]:
    return [next(i for i, x in enumerate(r) if x) for r in basis]


def reduce_vec(F: FiniteField, v: Sequence[int], basis: Sequence[Vector], piv: Sequence[int] | None = None) -> Vector:
    """Reduce v modulo the span of an RREF basis."""
    if piv is None:
        piv = pivots(basis)
    v = list(v)
    mul, sub = F.mul, F.sub
    for row, c in zip(basis, piv):
        a = v[c]
        if a:
            for j, x in enumerate(row):
                if x:
                    v[j] = sub[v[j]][mul[a][x]]
    return tuple(v)


def left_kernel(F: FiniteField, rows: Sequence[Vector]) -> list[Vector]:
    """Basis of {c : sum_j c_j rows[j] = 0}."""
    m = len(rows)
    if m == 0:
        return []
    width = len(rows[0])
    aug = [tuple(r) + tuple(1 if i == j else 0 for j in range(m)) for i, r in enumerate(rows)]
    red = rref(F, aug)
    return [r[width:] for r in red if not any(r[:width])]


def combine(F: FiniteField, coeffs: Sequence[int], vectors: Sequence[Vector], n: int) -> Vector:
    out = [0] * n
    add, mul = F.add, F.mul
    for c, v in zip(coeffs, vectors):
        if c:
            for j, x in enumerate(v):
                if x:
                    out[j] = add[out[j]][mul[c][x]]
    return tuple(out)


def normalized_vectors(F: FiniteField, k: int) -> Iterator[tuple[int, ...]]:
    """Nonzero vectors of F^k whose first nonzero entry is 1 (one per line)."""
    for lead in range(k):
        for tail in itertools.product(range(F.q), repeat=k - lead - 1):
            yield (0,) * lead + (1,) + tail


# ---------------------------------------------------------------------------
# modules


class ChainModule:
    """Torsion module of Jordan type ``lam`` over GF(q)[[pi]]."""

    def __init__(self, field: FiniteField, lam: Sequence[int]):
        self.field = field
        self.lam = Partition(lam)
        self.n = self.lam.size
        self.offsets = list(itertools.accumulate((0,) + tuple(self.lam)))[:-1]
        self._pi_target = [None] * self.n
        for i, li in enumerate(self.lam):
            for k in range(li - 1):
                self._pi_target[self.offsets[i] + k] = self.offsets[i] + k + 1

    @property
    def residue_order(self) -> int:
        return self.field.q

    @property
    def cardinality(self) -> int:
        return self.field.q ** self.n

    def zero(self) -> Vector:
        return (0,) * self.n

    def pi(self, v: Sequence[int]) -> Vector:
        out = [0] * self.n
        for src, dst in enumerate(self._pi_target):
            if dst is not None:
                out[dst] = v[src]
        return tuple(out)

    def standard_basis(self) -> tuple[Vector, ...]:
        return tuple(tuple(1 if i == j else 0 for j in range(self.n)) for i in range(self.n))

    def add(self, u: Sequence[int], v: Sequence[int]) -> Vector:
        a = self.field.add
        return tuple(a[x][y] for x, y in zip(u, v))

    def scale(self, c: int, v: Sequence[int]) -> Vector:
        m = self.field.mul[c]
        return tuple(m[x] for x in v)

    def component(self, v: Sequence[int], i: int) -> list[int]:
        """Coefficients of the i-th cyclic component as a truncated series in pi."""
        o = self.offsets[i]
        return list(v[o:o + self.lam[i]])

    def whole(self) -> "Submodule":
        return Submodule(self, self.standard_basis())

    def zero_submodule(self) -> "Submodule":
        return Submodule(self, ())

    def span(self, vectors: Sequence[Vector]) -> "Submodule":
        """Smallest submodule containing the given vectors."""
        gens = []
        for v in vectors:
            w = tuple(v)
            while any(w):
                gens.append(w)
                w = self.pi(w)
        return Submodule(self, rref(self.field, gens))

    def check_size(self, max_elements: int) -> None:
        if self.cardinality > max_elements:
            raise SizeBound(f"module of order {self.cardinality} exceeds bound {max_elements}")

    def __repr__(self):
        return f"{type(self).__name__}(q={self.field.q}, lam={tuple(self.lam)})"


class HermChainModule(ChainModule):
    """Hermitian torsion module over GF(q^2)[[pi]] of Jordan type ``lam``.

    The form is diagonal: <e_i, e_j> = delta_ij * pi^(-lam_i). Values in
    pi^(-N) O / O (N = lam_1) are stored after multiplying by pi^N, as length-N
    coefficient vectors in O / pi^N. The form is linear in the first slot and
    conjugate-linear in the second.
    """

    def __init__(self, q: int, lam: Sequence[int]):
        p, e = prime_power(q)
        super().__init__(FiniteField(p, 2 * e), lam)
        self.base_q = q
        self.N = self.lam[0] if self.lam else 0

    def pair(self, x: Sequence[int], y: Sequence[int]) -> Vector:
        F = self.field
        conj, mul, add = F.conj, F.mul, F.add
        out = [0] * self.N
        for i, li in enumerate(self.lam):
            xi = self.component(x, i)
            yi = [conj[c] for c in self.component(y, i)]
            shift = self.N - li
            for a, xa in enumerate(xi):
                if not xa:
                    continue
                for b in range(li - a):
                    yb = yi[b]
                    if yb:
                        out[shift + a + b] = add[out[shift + a + b]][mul[xa][yb]]
        return tuple(out)


@dataclass(frozen=True)
class Submodule:
    """A pi-stable subspace given by its RREF basis."""

    parent: ChainModule = field(compare=False, repr=False)
    basis: tuple[Vector, ...]

    @property
    def length(self) -> int:
        """Length as a module over the chain ring = dimension over its residue field."""
        return len(self.basis)

    @property
    def key(self) -> tuple[Vector, ...]:
        return self.basis

    def contains(self, v: Sequence[int]) -> bool:
        return not any(reduce_vec(self.parent.field, v, self.basis))

    def contains_submodule(self, other: "Submodule") -> bool:
        return all(self.contains(v) for v in other.basis)

    def is_pi_stable(self) -> bool:
        return all(self.contains(self.parent.pi(v)) for v in self.basis)

    def elements(self) -> Iterator[Vector]:
        F = self.parent.field
        n = self.parent.n
        for coeffs in itertools.product(range(F.q), repeat=len(self.basis)):
            yield combine(F, coeffs, self.basis, n)

    def pi_image(self) -> "Submodule":
        return Submodule(self.parent, rref(self.parent.field, [self.parent.pi(v) for v in self.basis]))

    def __add__(self, other: "Submodule") -> "Submodule":
        return Submodule(self.parent, rref(self.parent.field, self.basis + other.basis))


def quotient_type(big: Submodule, small: Submodule) -> Partition:
    """Jordan type of big/small, read off from dim (pi^j big + small) / small."""
    dims = []
    cur = big
    while True:
        d = (cur + small).length - small.length
        dims.append(d)
        if d == 0:
            break
        cur = cur.pi_image()
    layer = [dims[j] - dims[j + 1] for j in range(len(dims) - 1)]
    # layer[j] = number of parts > j, i.e. the conjugate partition
    return conjugate(Partition(x for x in layer if x))


def submodule_type(I: Submodule) -> Partition:
    return quotient_type(I, I.parent.zero_submodule())


def quotient_t(big: Submodule, small: Submodule) -> int:
    """t(big/small) = dim of (big/small) / pi(big/small)."""
    return big.length - (small + big.pi_image()).length


def pi_preimage(M: ChainModule, J: Submodule, ambient: Submodule) -> Submodule:
    """{v in ambient : pi v in J}."""
    F = M.field
    jpiv = pivots(J.basis)
    images = [reduce_vec(F, M.pi(a), J.basis, jpiv) for a in ambient.basis]
    kern = left_kernel(F, images)
    return Submodule(M, rref(F, [combine(F, c, ambient.basis, M.n) for c in kern]))


def enumerate_submodules(
    M: ChainModule,
    within: Submodule | None = None,
    max_length: int | None = None,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> list[Submodule]:
    """Every submodule of M (or of the submodule ``within``), each exactly once.

    Closure search: starting from 0, a found submodule J is extended by one
    generator g with pi g in J (anything else gives a module with J not
    maximal, which is reached from a different J). Results are deduplicated
    by RREF basis and sorted by (length, basis).
    """
    M.check_size(max_elements)
    F = M.field
    ambient = within if within is not None else M.whole()
    top = ambient.length if max_length is None else min(max_length, ambient.length)
    level = {(): M.zero_submodule()}
    found = [M.zero_submodule()]
    for _ in range(top):
        nxt: dict[tuple[Vector, ...], Submodule] = {}
        for J in level.values():
            K = pi_preimage(M, J, ambient)
            jpiv = pivots(J.basis)
            comp = rref(F, [reduce_vec(F, v, J.basis, jpiv) for v in K.basis])
            for coeffs in normalized_vectors(F, len(comp)):
                g = combine(F, coeffs, comp, M.n)
                basis = rref(F, J.basis + (g,))
                if basis not in nxt:
                    nxt[basis] = Submodule(M, basis)
        level = dict(sorted(nxt.items()))
        found.extend(level.values())
    return found


# ---------------------------------------------------------------------------
# Hermitian structure


def perp(I: Submodule) -> Submodule:
    """Orthogonal complement {y : <g, y> = 0 for all g in I}.

    <g, y> = 0 iff <y, g> = 0 by Hermitian symmetry, and y -> <y, g> is
    linear, so this is a kernel computation.
    """
    M = I.parent
    if not isinstance(M, HermChainModule):
        raise PreconditionViolated("perp needs a Hermitian module")
    F = M.field
    if not I.basis:
        return M.whole()
    rows = [sum((M.pair(e, g) for g in I.basis), ()) for e in M.standard_basis()]
    kern = left_kernel(F, rows)
    return Submodule(M, rref(F, kern))


def is_isotropic(I: Submodule) -> bool:
    M = I.parent
    if not isinstance(M, HermChainModule):
        raise PreconditionViolated("isotropy needs a Hermitian module")
    return all(not any(M.pair(g, h)) for g in I.basis for h in I.basis)


# ---------------------------------------------------------------------------
# counting oracles


def _plain_module(q: int, lam: Sequence[int]) -> ChainModule:
    return ChainModule(FiniteField.of_order(q), lam)


@lru_cache(maxsize=256)
def submodule_length_counts(q: int, lam: Partition, max_elements: int = DEFAULT_MAX_ELEMENTS) -> tuple[int, ...]:
    """Entry a is the number of length-a submodules, from one full enumeration."""
    counts = [0] * (lam.size + 1)
    for I in enumerate_submodules(_plain_module(q, lam), max_elements=max_elements):
        counts[I.length] += 1
    return tuple(counts)


def brute_sub_count(q: int, lam: Sequence[int], a: int, max_elements: int = DEFAULT_MAX_ELEMENTS) -> int:
    """Number of length-a submodules, by exhaustive enumeration."""
    lam = Partition(lam)
    if a < 0 or a > lam.size:
        return 0
    return submodule_length_counts(q, lam, max_elements)[a]


def brute_hall(q: int, lam: Sequence[int], mu: Sequence[int], max_elements: int = DEFAULT_MAX_ELEMENTS) -> int:
    """Number of submodules of type mu in the module of type lam."""
    lam, mu = Partition(lam), Partition(mu)
    if mu.size > lam.size:
        return 0
    M = _plain_module(q, lam)
    subs = enumerate_submodules(M, max_length=mu.size, max_elements=max_elements)
    return sum(1 for I in subs if I.length == mu.size and submodule_type(I) == mu)


def m_poly(sign: int, q: int, t: int) -> IntPoly1:
    """prod_{i<t} (1 - (sign*q)^i T) at a numeric q."""
    out = IntPoly1({0: 1}, "T")
    for i in range(t):
        out = out * IntPoly1({0: 1, 1: -((sign * q) ** i)}, "T")
    return out


def brute_den_split(q: int, lam: Sequence[int], max_elements: int = DEFAULT_MAX_ELEMENTS) -> IntPoly1:
    """Chain sum over I1 <= I2 <= Q of T^(l(I1) + l(Q/I2)) * m+(q, t(I2/I1), T)."""
    M = _plain_module(q, lam)
    total: dict[int, int] = {}
    cache: dict[int, IntPoly1] = {}
    for I2 in enumerate_submodules(M, max_elements=max_elements):
        for I1 in enumerate_submodules(M, within=I2, max_elements=max_elements):
            t = quotient_t(I2, I1)
            if t not in cache:
                cache[t] = m_poly(1, q, t)
            shift = I1.length + M.n - I2.length
            for e, c in cache[t].coeffs.items():
                total[e + shift] = total.get(e + shift, 0) + c
    return IntPoly1(total, "T")


def isotropic_submodules(M: HermChainModule, max_elements: int = DEFAULT_MAX_ELEMENTS) -> list[Submodule]:
    return [I for I in enumerate_submodules(M, max_elements=max_elements) if is_isotropic(I)]


def brute_den_inert(q: int, lam: Sequence[int], max_elements: int = DEFAULT_MAX_ELEMENTS) -> IntPoly1:
    """Sum over isotropic I of T^(2 l(I)) * m-(q, t(I^perp / I), T)."""
    M = HermChainModule(q, lam)
    total: dict[int, int] = {}
    cache: dict[int, IntPoly1] = {}
    for I in isotropic_submodules(M, max_elements):
        t = quotient_t(perp(I), I)
        if t not in cache:
            cache[t] = m_poly(-1, q, t)
        for e, c in cache[t].coeffs.items():
            total[e + 2 * I.length] = total.get(e + 2 * I.length, 0) + c
    return IntPoly1(total, "T")


def hom_count(q: int, mu: Sequence[int], nu: Sequence[int]) -> int:
    """|Hom(Q_mu, Q_nu)| = q^(sum_ij min(mu_i, nu_j))."""
    return q ** sum(min(a, b) for a in mu for b in nu)


def injection_count(q: int, mu: Sequence[int], lam: Sequence[int]) -> int:
    """Number of injective homs Q_mu -> Q_lam.

    A hom is injective iff it is injective on the socle of Q_mu. The socle
    generator of the summand of size m must map into pi^(m-1) Q_lam[pi^m],
    a subspace of soc(Q_lam) of dimension #{j : lam_j >= m}; these subspaces
    grow as m shrinks, so taking parts in decreasing order each new socle
    image only has to avoid the span of the earlier ones.
    """
    total = 1
    for i, m in enumerate(sorted(mu, reverse=True)):
        s = sum(1 for l in lam if l >= m)
        killed = q ** sum(min(l, m) for l in lam)  # |Q_lam[pi^m]|
        choices = q ** s - q ** i
        if choices <= 0:
            return 0
        total *= (killed // q ** s) * choices
    return total


def orbit_hall_count(q: int, lam: Sequence[int], mu: Sequence[int]) -> int:
    """Submodules of type mu in Q_lam as |Inj(Q_mu, Q_lam)| / |Aut(Q_mu)|.

    Needs no enumeration, so it reaches residue fields far beyond the
    exhaustive envelope. Checked against ``brute_hall`` in the test suite.
    """
    num, den = injection_count(q, mu, lam), injection_count(q, mu, mu)
    if num % den:
        raise ArithmeticError(f"orbit count not integral for lam={lam}, mu={mu}")
    return num // den


def orbit_sub_count(q: int, lam: Sequence[int], a: int) -> int:
    from .partitions import enumerate_partitions

    if a < 0 or a > sum(lam):
        return 0
    return sum(orbit_hall_count(q, lam, mu) for mu in enumerate_partitions(a, len(lam)))


def direct_sum_sub_count(q: int, A: Sequence[int], B: Sequence[int], c: int) -> int:
    """Length-c submodules of Q_A + Q_B counted as triples (I1 <= A, I2 <= B, f: I1 -> B/I2)."""
    MA, MB = _plain_module(q, A), _plain_module(q, B)
    subs_A = [(I.length, submodule_type(I)) for I in enumerate_submodules(MA)]
    whole_B = MB.whole()
    subs_B = [(I.length, quotient_type(whole_B, I)) for I in enumerate_submodules(MB)]
    total = 0
    for la, ta in subs_A:
        for lb, qb in subs_B:
            if la + lb == c:
                total += hom_count(q, ta, qb)
    return total
