from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from densityforge.analytic import (
    BundleData,
    CorankOneData,
    CurveData,
    L_eta_shift,
    Parity,
    SExp,
    SRat,
    corank_one_rhs,
    corank_one_via_lambda,
    eisenstein_coeff,
    from_density,
    genus_drop_bracket,
    genus_drop_summand,
    key_degree_integrand,
    key_degree_rhs,
    lambda_fn,
    lambda_via_eisenstein,
    normalized_derivative,
    off_center_rhs,
    script_L,
    singular_coeff_via_genus_drop,
    trace_identity_check,
    zeta_shift,
)
from densityforge.density import LocalDatum, PlaceKind
from densityforge.errors import CurveDataError, ParityMismatch, PoleAtCenter
from densityforge.exactpoly import IntPoly2
from densityforge.verify import curve_families, random_L_families

qs, ss = sp.symbols("q s", positive=True)


def to_sympy(f) -> sp.Expr:
    """Independent reading of w = q^(s/2), x = q^(1/2) as a sympy expression in q and s."""
    def conv(e: SExp):
        return sum(sp.Rational(c.numerator, c.denominator) * qs ** (sp.Rational(a, 2) * ss + sp.Rational(b, 2))
                   for (a, b), c in e.terms.items())
    f = SRat.coerce(f)
    return conv(f.num) / conv(f.den)


def sympy_derivative(f, r: int) -> sp.Expr:
    return sp.diff(to_sympy(f), ss, r).subs(ss, 0) / sp.log(qs) ** r


def same_value(got: SRat, want: sp.Expr) -> bool:
    diff = sp.simplify(to_sympy(got) - want)
    if diff == 0:
        return True
    # fall back to high-precision numeric checks at a few q
    return all(abs(sp.N(diff.subs(qs, v), 40)) < sp.Float(10) ** -25 for v in (3, 5, 7, 11))


def xpoly(*coeffs) -> SRat:
    """sum_j coeffs[j] x^(2j), i.e. a polynomial in q."""
    return SRat(SExp({(0, 2 * j): c for j, c in enumerate(coeffs)}))


w = lambda k, c=1: SExp({(k, 0): c})  # noqa: E731
x = SExp.x_power

sexps = st.dictionaries(st.tuples(st.integers(-4, 4), st.integers(-3, 3)), st.integers(-5, 5).filter(bool),
                        min_size=1, max_size=4).map(SExp)


# ---------------------------------------------------------------------------
# calculus


@given(sexps, sexps)
def test_D_is_a_derivation(f, g):
    assert (f * g).D() == f.D() * g + f * g.D()
    assert (f + g).D() == f.D() + g.D()


@given(sexps, sexps)
def test_D_commutes_with_reduction(f, g):
    h = g * SExp({(1, 0): 1, (0, 0): 1})
    R = SRat(f * h, g * h)
    assert R.D() == SRat(f, g).D()


@settings(max_examples=25, deadline=None)
@given(sexps, st.integers(0, 3))
def test_normalized_derivative_matches_sympy_on_sums(f, r):
    assert same_value(normalized_derivative(f, r), sympy_derivative(f, r))


@settings(max_examples=15, deadline=None)
@given(sexps, st.integers(1, 3), st.integers(0, 3))
def test_normalized_derivative_matches_sympy_on_quotients(f, k, r):
    den = 1 - SExp.q_power(-2, -k)
    g = SRat(f, den)
    assert same_value(normalized_derivative(g, r), sympy_derivative(g, r))


@pytest.mark.parametrize("a,r", [(a, r) for a in (-2, 1, 3) for r in range(5)])
def test_q_power_derivative(a, r):
    assert normalized_derivative(SExp.q_power(a), r) == SRat(a ** r)


def test_normalized_derivative_examples():
    f = SExp.q_power(2) * (1 + SExp.q_power(-2, 0, 5) + SExp.q_power(-4, 1))
    assert normalized_derivative(f, 2) == xpoly(4, 4)
    g = SRat(1, 1 - SExp.q_power(-2, -2))
    assert normalized_derivative(g, 0) == SRat(SExp.x_power(4), SExp.x_power(4) - 1)


def test_pole_at_center():
    with pytest.raises(PoleAtCenter):
        normalized_derivative(SRat(1, 1 - SExp.q_power(-2)), 0)
    # the pole cancels after reduction
    u = SExp.q_power(-2)
    assert normalized_derivative(SRat((1 - u) * (1 + u), 1 - u), 1) == SRat(-2)


@given(sexps)
def test_evenness_forces_odd_derivatives_to_vanish(f):
    g = f + f.flip_s()
    assert g.is_even_in_s()
    for r in (1, 3, 5):
        assert normalized_derivative(g, r).is_zero()


def test_from_density_examples():
    q, T = IntPoly2.q(), IntPoly2.T()
    assert from_density(1 + T, 1, -2) == 1 + SExp.q_power(-2, 1)
    assert from_density(1 - T + T * T, 0, -2) == 1 - SExp.q_power(-2) + SExp.q_power(-4)
    assert from_density(q * T, Fraction(1, 2), 0) == x(3)


def test_shift_and_flip():
    f = SExp.q_power(2, 1)
    assert f.flip_s() == SExp.q_power(-2, 1)
    assert f.shift_half() == SExp.q_power(2, 2)


# ---------------------------------------------------------------------------
# curve data and L-factors


def test_curve_validation():
    CurveData(3, 2, (1, 2, 3))
    with pytest.raises(CurveDataError):
        CurveData(3, 2, (1, 2, 4))
    with pytest.raises(CurveDataError):
        CurveData(3, 2, (2, 2, 6))
    with pytest.raises(CurveDataError):
        CurveData(3, 1, (1, 1))
    with pytest.raises(CurveDataError):
        CurveData(4, 0, (1,))
    with pytest.raises(CurveDataError):
        CurveData.from_json({"q": 3, "L_eta": [1]})
    C = CurveData.from_json({"q": 3, "deg_omega": 2, "L_eta": [1, 2, 3], "zeta_num": [1, 1, 1, 3, 9]})
    assert CurveData.from_json(C.to_json()) == C


def test_L_shift_examples():
    assert L_eta_shift(CurveData(3, 0, (1,)), 5, 2) == SExp.const(1)
    C = CurveData(3, 2, (1, 2, 3))
    assert L_eta_shift(C, 0, 2) == 1 + SExp.q_power(-2, 0, 2) + SExp.q_power(-4, 1)
    z = zeta_shift(CurveData(3, 0, (1,)), 2, 2)
    want = SRat(1, (1 - SExp.x_power(-4)) * (1 - SExp.x_power(-2)))
    assert z.at_s0() == want
    assert script_L(C, 1, Parity.SAME) == SRat(L_eta_shift(C, 1, 2))
    assert script_L(C, 1, Parity.SHIFTED) == zeta_shift(C, 1, 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_script_L_same_parity_factors(n):
    # chi0 = eta^n gives factors L(2s+i, eta^i): twisted L exactly at odd i
    C = CurveData(3, 2, (1, 1, 3))
    want = SRat(1)
    for i in range(1, n + 1):
        want = want * (SRat(L_eta_shift(C, i, 2)) if i % 2 else zeta_shift(C, i, 2))
    assert script_L(C, n, Parity.SAME) == want


# ---------------------------------------------------------------------------
# Eisenstein side


def trivial_curve() -> CurveData:
    return CurveData(3, 0, (1,))


def bundle(C, rank, *places) -> BundleData:
    return BundleData.with_places(C, rank, [LocalDatum(deg, kind, lam) for deg, kind, lam in places])


def test_eisenstein_examples():
    C = trivial_curve()
    E = bundle(C, 1, (1, PlaceKind.INERT, (1,)))
    got = eisenstein_coeff(C, E, 1, Parity.SHIFTED)
    want = SRat(SExp.q_power(1, Fraction(-1, 2)) * (1 + SExp.q_power(-2))) / zeta_shift(C, 1, 2)
    assert got == want
    Es = bundle(C, 1, (1, PlaceKind.SPLIT, (1,)))
    want = SRat(SExp.q_power(1, Fraction(-1, 2)) * (1 + SExp.q_power(-2))) / SRat(L_eta_shift(C, 1, 2))
    assert eisenstein_coeff(C, Es, 1, Parity.SAME) == want
    C2 = CurveData(3, 2, (1, 1, 3))
    E0 = bundle(C2, 2)
    assert eisenstein_coeff(C2, E0, 2, Parity.SAME) == SRat(SExp.q_power(-4)) / script_L(C2, 2, Parity.SAME)


def test_lambda_examples():
    C = trivial_curve()
    E = bundle(C, 1, (1, PlaceKind.INERT, (1,)))
    assert lambda_fn(C, E) == SRat(SExp.q_power(-1) * (1 + SExp.q_power(2, 1)))
    assert lambda_fn(C, bundle(C, 1)) == SRat(1)
    assert normalized_derivative(lambda_fn(C, E), 0) == xpoly(1, 1)


def test_key_degree_values():
    C = trivial_curve()
    E = bundle(C, 1, (1, PlaceKind.INERT, (1,)))
    assert key_degree_rhs(C, E, 0, 0) == xpoly(2, 2)
    integrand = key_degree_integrand(C, E, 0)
    for r in (2, 4):
        assert same_value(key_degree_rhs(C, E, 0, r), 2 * sympy_derivative(integrand, r))
    # integrand q^s + q^(1-s): D^2 gives 1 + q
    assert key_degree_rhs(C, E, 0, 2) == xpoly(2, 2)
    for r in (1, 3, 5):
        assert key_degree_rhs(C, E, 0, r).is_zero()


def test_off_center_example():
    C = trivial_curve()
    E = bundle(C, 1, (1, PlaceKind.INERT, (1,)))
    assert off_center_rhs(C, E, 0, 2, 0) == xpoly(2, 2)


def test_corank_one_example():
    C = trivial_curve()
    E0 = BundleData(1, 0, 0)
    data = CorankOneData(E0, bundle(C, 1, (1, PlaceKind.INERT, (1,))))
    assert corank_one_rhs(C, data, 0) == xpoly(2, 2)
    assert corank_one_via_lambda(C, data, 0) == xpoly(2, 2)
    for r in (1, 3, 5):
        assert corank_one_rhs(C, data, r).is_zero()


def test_genus_drop_structure():
    C = CurveData(3, 2, (1, 1, 3))
    E0 = BundleData(1, 1, 2)
    Eb = bundle(C, 1, (1, PlaceKind.SPLIT, (1,)))
    A = genus_drop_summand(C, E0, Eb, 2, Parity.SAME)
    B = genus_drop_bracket(C, E0, Eb, 2, Parity.SAME)
    assert B.is_even_in_s()
    assert B - A == A.flip_s()
    sing = singular_coeff_via_genus_drop(C, E0, Eb, 2)
    # neither raises PoleAtCenter once reduced
    normalized_derivative(sing, 0)
    C0 = trivial_curve()
    normalized_derivative(singular_coeff_via_genus_drop(C0, BundleData(1, 0, 0), bundle(C0, 1), 2), 0)


def _places():
    return [(), ((1, PlaceKind.INERT, (1,)),), ((1, PlaceKind.SPLIT, (2,)),),
            ((1, PlaceKind.SPLIT, (1,)), (1, PlaceKind.INERT, (1, 1))), ((2, PlaceKind.INERT, (1, 1)),)]


@pytest.mark.parametrize("C", curve_families(3, (-2, 0, 2)), ids=repr)
@pytest.mark.parametrize("places", _places())
def test_forms_agree(C, places):
    for n in (1, 2):
        Eb = bundle(C, n - 1, *places)
        assert lambda_fn(C, Eb) == lambda_via_eisenstein(C, Eb, n)
        for d0 in (0, 1):
            E0 = BundleData(1, C.deg_omega - d0, C.deg_omega)
            data = CorankOneData(E0, Eb)
            for r in (0, 2, 4):
                k = key_degree_rhs(C, Eb, d0, r)
                assert k == off_center_rhs(C, Eb, E0.deg, n, r)
                assert corank_one_rhs(C, data, r) == corank_one_via_lambda(C, data, r)
            for r in (1, 3, 5):
                assert key_degree_rhs(C, Eb, d0, r).is_zero()
                assert corank_one_rhs(C, data, r).is_zero()


# ---------------------------------------------------------------------------
# trace identity


def test_trace_examples():
    lhs, rhs = trace_identity_check(trivial_curve(), 0, 1, 0)
    assert lhs == rhs == SRat(2)
    for a in (-2, 0, 1, 3):
        C = CurveData(3, 2, (1, a, 3))
        lhs, rhs = trace_identity_check(C, 2, 1, 2)
        assert lhs == rhs == xpoly(8, 8)
        lhs, rhs = trace_identity_check(C, 2, 1, 0)
        assert lhs == rhs == xpoly(2 * (1 + a), 2)
    with pytest.raises(ParityMismatch):
        trace_identity_check(trivial_curve(), 0, -1, 0)


@pytest.mark.parametrize("C", random_L_families(12, seed=7), ids=repr)
def test_trace_identity_random_families(C):
    for deg_N in (0, 3):
        for r in range(7):
            lhs, rhs = trace_identity_check(C, deg_N, (-1) ** r, r)
            assert lhs == rhs


def test_trace_rhs_against_sympy():
    C = CurveData(5, 2, (1, -3, 5))
    f = SRat(SExp.q_power(3) * L_eta_shift(C, 0, 2))
    for r in (1, 3):
        _, rhs = trace_identity_check(C, 3, -1, r)
        assert same_value(rhs, 2 * sympy_derivative(f, r))
