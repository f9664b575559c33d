"""Property suites behind ``densityforge verify``.

Each suite yields ``Check`` records: a name, the number of cases tried and
the first counterexample (None when every case passed). Case generation is
deterministic, so reports are reproducible byte for byte.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from . import analytic as an
from .density import (
    GlobalPlaceData,
    LocalDatum,
    PlaceKind,
    den_eta_local,
    den_global,
    den_inert,
    den_inert_induction,
    den_inert_weak,
    den_split,
    den_split_induction,
    functional_defect,
)
from .finitemod import (
    brute_den_inert,
    brute_den_split,
    brute_hall,
    orbit_hall_count,
)
from .partitions import Partition, dominates, enumerate_partitions, insert_sorted, partitions_up_to
from .springer import kostka_foulkes, kostka_number, sub_via_kf
from .subcount import sub_poly, sub_poly_interp

SUITES = ("appendix", "global", "springer", "analytic")


@dataclass
class Check:
    suite: str
    name: str
    cases: int
    failure: str | None

    @property
    def passed(self) -> bool:
        return self.failure is None


def run_cases(suite: str, name: str, cases: Iterable, test: Callable[..., object]) -> Check:
    """``test(case)`` returns None on success or a description of the mismatch."""
    n = 0
    for case in cases:
        n += 1
        bad = test(case)
        if bad is not None:
            return Check(suite, name, n, f"{case!r}: {bad}")
    return Check(suite, name, n, None)


def _mismatch(got, want) -> str | None:
    return None if got == want else f"got {got}, expected {want}"


# ---------------------------------------------------------------------------
# appendix: closed forms against oracles, recursion, bridges, inductions


def peel_cases(max_size: int, max_m: int = 5) -> Iterator[tuple[int, Partition]]:
    """(m, lam) with |lam| <= max_size and lam_1 <= m <= max_m."""
    for lam in partitions_up_to(max_size):
        for m in range(max(lam[0] if lam else 1, 1), max_m + 1):
            yield m, lam


def appendix_suite(max_size: int = 4, qs: Sequence[int] = (3, 5), inert_q: int = 3,
                   inert_max_size: int = 4) -> list[Check]:
    s = "appendix"
    out = []
    for q in qs:
        out.append(run_cases(
            s, f"split density = chain sum (q={q})", partitions_up_to(max_size),
            lambda lam, q=q: _mismatch(brute_den_split(q, lam), den_split(lam).eval_q(q))))
    out.append(run_cases(
        s, f"inert density = isotropic sum (q={inert_q})", partitions_up_to(min(max_size, inert_max_size)),
        lambda lam: _mismatch(brute_den_inert(inert_q, lam), den_inert(lam).eval_q(inert_q))))
    out.append(run_cases(
        s, "Sub recursion = interpolated counts",
        [(a, lam) for lam in partitions_up_to(max_size) for a in range(lam.size + 1)],
        lambda c: _mismatch(sub_poly_interp(*c), sub_poly(*c))))
    out.append(run_cases(
        s, f"Hall numbers: enumeration = orbit count (q={qs[0]})",
        [(lam, mu) for lam in partitions_up_to(max_size) for d in range(lam.size + 1)
         for mu in enumerate_partitions(d, len(lam))],
        lambda c: _mismatch(brute_hall(qs[0], *c), orbit_hall_count(qs[0], *c))))
    out.append(run_cases(
        s, "sign bridge q->-q, T->-T", partitions_up_to(max(max_size, 6)),
        lambda lam: _mismatch(den_split(lam).subst(q_sign=-1, T_sign=-1), den_inert(lam))))
    peel = list(peel_cases(max_size))
    out.append(run_cases(
        s, "strong split induction", peel,
        lambda c: _mismatch(den_split_induction(*c), den_split(insert_sorted(*c)))))
    out.append(run_cases(
        s, "strong inert induction", peel,
        lambda c: _mismatch(den_inert_induction(*c), den_inert(insert_sorted(*c)))))
    out.append(run_cases(
        s, "weak inert induction", [(m, lam) for m, lam in peel if m >= max(2, (lam[0] if lam else 0) + 1)],
        lambda c: _mismatch(den_inert_weak(*c), den_inert(insert_sorted(*c)))))
    out.append(run_cases(
        s, "local functional equations", partitions_up_to(max(max_size, 6)),
        _local_fe_failure))
    return out


def _local_fe_failure(lam: Partition) -> str | None:
    d = lam.size
    P, Q = den_split(lam), den_inert(lam)
    if P.reverse_T(d) != P:
        return "split polynomial is not palindromic"
    if Q.reverse_T(d) != Q * (-1) ** d:
        return "inert polynomial fails reversal with sign (-1)^|lam|"
    for kind in PlaceKind:
        R = den_eta_local(kind, lam)
        if R.reverse_T(d) != R:
            return f"twisted {kind.value} polynomial is not palindromic"
    return None


# ---------------------------------------------------------------------------
# global functional equation


def random_place_data(rng: random.Random, q: int = 3, max_d: int = 8, max_places: int = 4) -> GlobalPlaceData:
    places = []
    budget = max_d
    for _ in range(rng.randint(0, max_places)):
        deg = rng.randint(1, 3)
        if budget < deg:
            break
        size = rng.randint(1, budget // deg)
        lam = rng.choice(enumerate_partitions(size))
        places.append(LocalDatum(deg, rng.choice(list(PlaceKind)), lam))
        budget -= deg * size
    return GlobalPlaceData(q, tuple(places))


def _global_fe_failure(G: GlobalPlaceData) -> str | None:
    d = G.d
    P = den_global(G)
    if P.reverse_T(d) != P * functional_defect(G):
        return f"untwisted: reversal != defect {functional_defect(G)} * Den"
    R = den_global(G, twisted=True)
    if R.reverse_T(d) != R:
        return "twisted polynomial is not palindromic"
    if P.degree_T != d:
        return f"T-degree {P.degree_T} != d = {d}"
    return None


def global_suite(count: int = 100, seed: int = 0, max_d: int = 8) -> list[Check]:
    rng = random.Random(seed)
    configs = [random_place_data(rng, max_d=max_d) for _ in range(count)]
    return [run_cases("global", f"global functional equation ({count} random configurations, d <= {max_d})",
                      configs, _global_fe_failure)]


# ---------------------------------------------------------------------------
# Springer side


def springer_suite(max_size: int = 5) -> list[Check]:
    s = "springer"
    sub_cases = [(a, lam) for lam in partitions_up_to(max_size) for a in range(lam.size + 1)]
    pairs = [(lam, mu) for n in range(1, max_size + 1)
             for lam in enumerate_partitions(n) for mu in enumerate_partitions(n)]
    return [
        run_cases(s, "Sub via Kostka-Foulkes", sub_cases, lambda c: _mismatch(sub_via_kf(*c), sub_poly(*c))),
        run_cases(s, "K(1) = Kostka number", pairs,
                  lambda c: _mismatch(kostka_foulkes(*c)(1), kostka_number(*c))),
        run_cases(s, "K nonzero iff dominance", pairs,
                  lambda c: _mismatch(not kostka_foulkes(*c).is_zero(), dominates(*c))),
    ]


# ---------------------------------------------------------------------------
# analytic side


def curve_families(q: int = 3, a_values: Sequence[int] = range(-2, 3)) -> list[an.CurveData]:
    """Genus-one curves with trivial L(s, eta), and genus-two data with L_eta = (1, a, q)."""
    out = []
    for a in a_values:
        out.append(an.CurveData(q, 0, (1,), (1, a, q)))
        out.append(an.CurveData(q, 2, (1, a, q), (1, a, 1, q * a, q * q)))
    return out


def place_sets(q: int = 3, max_d: int = 4) -> list[tuple[LocalDatum, ...]]:
    """Empty, every single place, and pairs of degree-one places of different kinds, all with d <= max_d."""
    singles = [LocalDatum(deg, kind, lam)
               for deg in (1, 2) for kind in PlaceKind
               for size in range(1, max_d // deg + 1) for lam in enumerate_partitions(size)]
    pairs = [(x, y) for x, y in itertools.combinations(singles, 2)
             if x.deg == y.deg == 1 and x.kind is PlaceKind.SPLIT and y.kind is PlaceKind.INERT
             and x.length + y.length <= max_d]
    return [()] + [(p,) for p in singles] + pairs


def analytic_cases(q: int = 3, ns: Sequence[int] = (1, 2), max_d: int = 4, d0s: Sequence[int] = (0, 1)):
    for C in curve_families(q):
        for places in place_sets(q, max_d):
            for n in ns:
                for d0 in d0s:
                    yield C, places, n, d0


def analytic_case_failure(case, rs: Sequence[int]) -> str | None:
    C, places, n, d0 = case
    Eb = an.BundleData.with_places(C, n - 1, places)
    if an.lambda_fn(C, Eb) != an.lambda_via_eisenstein(C, Eb, n):
        return "Lambda identity"
    E0 = an.BundleData(1, C.deg_omega - d0, C.deg_omega)
    data = an.CorankOneData(E0, Eb)
    for r in rs:
        k = an.key_degree_rhs(C, Eb, d0, r)
        o = an.off_center_rhs(C, Eb, E0.deg, n, r)
        c = an.corank_one_rhs(C, data, r)
        if k != o:
            return f"key degree {k} != off center {o} at r={r}"
        if r % 2:
            if not (k.is_zero() and c.is_zero()):
                return f"odd r={r} did not vanish: key {k}, corank one {c}"
        else:
            lam = an.corank_one_via_lambda(C, data, r)
            if c != lam:
                return f"corank one {c} != Lambda form {lam} at r={r}"
    return None


def random_L_families(count: int, seed: int = 0) -> list[an.CurveData]:
    """CurveData with random integer L-coefficients obeying the functional equation."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        q = rng.choice((3, 5, 7, 9))
        g_half = rng.randint(0, 3)
        dw = 2 * g_half
        low = [1] + [rng.randint(-6, 6) for _ in range(g_half)]
        coeffs = low + [q ** (j - g_half) * low[dw - j] for j in range(g_half + 1, dw + 1)]
        out.append(an.CurveData(q, dw, tuple(coeffs)))
    return out


def trace_case_failure(case) -> str | None:
    C, deg_N, r = case
    lhs, rhs = an.trace_identity_check(C, deg_N, (-1) ** r, r)
    return _mismatch(lhs, rhs)


def analytic_suite(rs: Sequence[int] = (0, 1, 2, 3, 4, 5), q: int = 3, ns: Sequence[int] = (1, 2),
                   max_d: int = 4, trace_families: int = 50) -> list[Check]:
    s = "analytic"
    fams = random_L_families(trace_families)
    trace_cases = [(C, deg_N, r) for C in fams for deg_N in (0, 1, 2, 5) for r in range(7)]
    return [
        run_cases(s, f"key degree / off center / Lambda / corank one, r in {list(rs)}",
                  analytic_cases(q, ns, max_d), lambda c: analytic_case_failure(c, rs)),
        run_cases(s, f"trace identity on {trace_families} L-families, r <= 6", trace_cases, trace_case_failure),
    ]


def run_suites(names: Iterable[str], max_size: int = 4, qs: Sequence[int] = (3, 5),
               rs: Sequence[int] = (0, 1, 2, 3, 4, 5)) -> list[Check]:
    out: list[Check] = []
    for name in names:
        if name == "appendix":
            out += appendix_suite(max_size, qs, inert_q=3, inert_max_size=min(max_size, 4))
        elif name == "global":
            out += global_suite()
        elif name == "springer":
            out += springer_suite(max_size)
        elif name == "analytic":
            out += analytic_suite(rs, q=qs[0], max_d=min(max_size, 4))
        else:
            raise ValueError(f"unknown suite {name!r}")
    return out
