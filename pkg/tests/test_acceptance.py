"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run under pytest (``pytest tests/test_acceptance.py -s``) or directly as a
script. Every comparison is exact; time limits are checked where a criterion
states one.
"""
import random
import time

import pytest

from densityforge import analytic as an
from densityforge.density import (
    PlaceKind,
    den_eta_local,
    den_global,
    den_inert,
    den_inert_induction,
    den_inert_weak,
    den_local,
    den_split,
    den_split_induction,
    functional_defect,
)
from densityforge.exactpoly import IntPoly2
from densityforge.finitemod import brute_den_inert, brute_den_split
from densityforge.partitions import insert_sorted, partitions_up_to
from densityforge.springer import sub_via_kf
from densityforge.subcount import sub_poly, sub_poly_interp
from densityforge.verify import analytic_cases, peel_cases, random_L_families, random_place_data

T = IntPoly2.T()


def first_failure(cases, check):
    n = 0
    for case in cases:
        n += 1
        bad = check(case)
        if bad:
            return n, f"{case!r}: {bad}"
    return n, None


def criterion_1():
    start = time.time()
    got = [den_eta_local(PlaceKind.INERT, (1,)), den_local(PlaceKind.SPLIT, (1,)), den_local(PlaceKind.INERT, (1,))]
    want = [1 + T, 1 + T, 1 - T]
    elapsed = time.time() - start
    return got == want and elapsed < 1, f"{[g.to_text() for g in got]} in {elapsed:.3f}s"


def criterion_2():
    start = time.time()
    cases = [(q, lam) for q in (3, 5) for lam in partitions_up_to(4)] + [(None, lam) for lam in partitions_up_to(4)]

    def check(case):
        q, lam = case
        if q is None:
            return brute_den_inert(3, lam) != den_inert(lam).eval_q(3) and "inert mismatch at q=3"
        return brute_den_split(q, lam) != den_split(lam).eval_q(q) and "split mismatch"

    n, bad = first_failure(cases, check)
    elapsed = time.time() - start
    return bad is None and elapsed <= 600, f"{n} comparisons in {elapsed:.1f}s" + (f"; {bad}" if bad else "")


def criterion_3():
    start = time.time()
    cases = [(a, lam) for lam in partitions_up_to(5) for a in range(lam.size + 1)]
    n, bad = first_failure(cases, lambda c: sub_poly_interp(*c) != sub_poly(*c) and "differs")
    elapsed = time.time() - start
    return bad is None and elapsed <= 600, f"{n} polynomials in {elapsed:.1f}s" + (f"; {bad}" if bad else "")


def criterion_4():
    peel = list(peel_cases(5, max_m=5))
    weak = [(m, lam) for m, lam in peel if m >= (lam[0] if lam else 0) + 1 and m >= 2]

    def strong(c):
        target = insert_sorted(*c)
        if den_split_induction(*c) != den_split(target):
            return "split"
        return den_inert_induction(*c) != den_inert(target) and "inert"

    n1, bad1 = first_failure(peel, strong)
    n2, bad2 = first_failure(weak, lambda c: den_inert_weak(*c) != den_inert(insert_sorted(*c)) and "weak")
    bad = bad1 or bad2
    return bad is None, f"{n1} strong and {n2} weak cases" + (f"; {bad}" if bad else "")


def criterion_5():
    n, bad = first_failure(partitions_up_to(6),
                           lambda lam: den_split(lam).subst(q_sign=-1, T_sign=-1) != den_inert(lam) and "differs")
    return bad is None, f"{n} partitions" + (f"; {bad}" if bad else "")


def criterion_6():
    def local(lam):
        for kind in PlaceKind:
            R = den_eta_local(kind, lam)
            if R.reverse_T(lam.size) != R:
                return f"twisted {kind.value} not palindromic"
        return None

    def glob(G):
        d = G.d
        P, R = den_global(G), den_global(G, twisted=True)
        if R.reverse_T(d) != R:
            return "twisted global not palindromic"
        return P.reverse_T(d) != P * functional_defect(G) and "untwisted global fails the defect relation"

    rng = random.Random(2024)
    configs = [random_place_data(rng, max_d=8) for _ in range(100)]
    n1, bad1 = first_failure(partitions_up_to(6), local)
    n2, bad2 = first_failure(configs, glob)
    bad = bad1 or bad2
    return bad is None, f"{n1} local types, {n2} global configurations" + (f"; {bad}" if bad else "")


def criterion_7():
    cases = [(a, lam) for lam in partitions_up_to(5) for a in range(lam.size + 1)]
    n, bad = first_failure(cases, lambda c: sub_via_kf(*c) != sub_poly(*c) and "differs")
    return bad is None, f"{n} polynomials" + (f"; {bad}" if bad else "")


def _analytic_failure(case, rs):
    C, places, n, d0 = case
    Eb = an.BundleData.with_places(C, n - 1, places)
    if an.lambda_fn(C, Eb) != an.lambda_via_eisenstein(C, Eb, n):
        return "Lambda identity"
    E0 = an.BundleData(1, C.deg_omega - d0, C.deg_omega)
    data = an.CorankOneData(E0, Eb)
    for r in rs:
        if an.key_degree_rhs(C, Eb, d0, r) != an.off_center_rhs(C, Eb, E0.deg, n, r):
            return f"key degree != off center at r={r}"
        if an.corank_one_rhs(C, data, r) != an.corank_one_via_lambda(C, data, r):
            return f"corank one != Lambda form at r={r}"
    return None


def criterion_8():
    start = time.time()
    n, bad = first_failure(analytic_cases(3, (1, 2), 4), lambda c: _analytic_failure(c, (0, 2, 4)))
    elapsed = time.time() - start
    return bad is None and elapsed <= 300, f"{n} inputs in {elapsed:.1f}s" + (f"; {bad}" if bad else "")


def criterion_9():
    def check(case):
        C, places, n, d0 = case
        Eb = an.BundleData.with_places(C, n - 1, places)
        data = an.CorankOneData(an.BundleData(1, C.deg_omega - d0, C.deg_omega), Eb)
        for r in (1, 3, 5):
            if not an.key_degree_rhs(C, Eb, d0, r).is_zero():
                return f"key degree nonzero at r={r}"
            if not an.corank_one_rhs(C, data, r).is_zero():
                return f"corank one nonzero at r={r}"
        return None

    n, bad = first_failure(analytic_cases(3, (1, 2), 4), check)
    return bad is None, f"{n} inputs" + (f"; {bad}" if bad else "")


def criterion_10():
    fams = random_L_families(60, seed=11)
    cases = [(C, deg_N, r) for C in fams for deg_N in (0, 1, 2, 5) for r in range(7)]

    def check(case):
        C, deg_N, r = case
        lhs, rhs = an.trace_identity_check(C, deg_N, (-1) ** r, r)
        return lhs != rhs and f"{lhs} != {rhs}"

    n, bad = first_failure(cases, check)
    hand = an.SRat(an.SExp({(0, 0): 8, (0, 2): 8}))
    hand_ok = all(an.trace_identity_check(an.CurveData(q, 2, (1, a, q)), 2, 1, 2) == (hand, hand)
                  for q in (3, 5) for a in range(-2, 3))
    ok = bad is None and hand_ok
    return ok, f"{len(fams)} L-families, {n} cases, hand value 8+8q {'matches' if hand_ok else 'FAILS'}" + (
        f"; {bad}" if bad else "")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def report(number: int) -> tuple[bool, str]:
    ok, detail = CRITERIA[number - 1]()
    return ok, f"criterion {number}: {'PASS' if ok else 'FAIL'}  ({detail})"


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number, capsys):
    ok, line = report(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [report(k) for k in range(1, 11)]
    for _, line in results:
        print(line)
    raise SystemExit(0 if all(ok for ok, _ in results) else 1)
