from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from perred.chebyshev import (
    CALIBRATED_OFFSET,
    calibrate_offset,
    cheb_coeffs,
    cheb_eval,
    cheb_eval_ext,
    cheb_eval_semiconj,
    closed_form_count,
    discrepancy_table,
    formula_term,
    published_offset,
    periodic_count_bruteforce,
    periodic_count_bruteforce_ext,
    periodic_set_by_orders,
    ratio,
    twisted_eval,
    twisted_normalize,
)
from perred.finitefield import QuadExtElem, make_ctx
from perred.numtheory import primes_up_to

from oracles import walk_oracle

X = sympy.Symbol("x")


def sympy_coeffs(d):
    # monic normalization of the classical Chebyshev polynomial: 2*T_d(x/2)
    poly = sympy.Poly(sympy.expand(2 * sympy.chebyshevt(d, X / 2)), X)
    return tuple(int(poly.coeff_monomial(X**i)) for i in range(d + 1))


@pytest.mark.parametrize("d", range(0, 26))
def test_coeffs_vs_sympy(d):
    assert cheb_coeffs(d) == sympy_coeffs(d)


def test_coeff_examples():
    assert cheb_coeffs(2) == (-2, 0, 1)
    assert cheb_coeffs(3) == (0, -3, 0, 1)
    assert cheb_coeffs(4) == (2, 0, -4, 0, 1)


@pytest.mark.parametrize("d", range(1, 61))
def test_parity_and_sign_pattern(d):
    c = cheb_coeffs(d)
    assert c[d] == 1
    for i in range(d + 1):
        if (d - i) % 2:
            assert c[i] == 0
        elif c[i]:
            assert (c[i] > 0) == ((d - i) % 4 == 0)


def test_semiconjugacy_over_rationals():
    for d in range(0, 12):
        for z in (Fraction(2), Fraction(-3, 5), Fraction(7, 2)):
            lhs = sum(c * (z + 1 / z) ** i for i, c in enumerate(cheb_coeffs(d)))
            assert lhs == z**d + z ** (-d)


def test_eval_examples():
    ctx = make_ctx(7)
    assert [cheb_eval(3, x, ctx) for x in range(7)] == [0, 5, 2, 4, 3, 5, 2]
    ctx5 = make_ctx(5)
    assert [cheb_eval(2, x, ctx5) for x in range(5)] == [3, 4, 2, 2, 4]


@pytest.mark.parametrize("p", [3, 5, 7, 13, 31, 101])
def test_eval_routes_agree(p):
    ctx = make_ctx(p)
    for d in range(0, 15):
        c = cheb_coeffs(d)
        for x in range(p):
            horner = sum(ci * pow(x, i, p) for i, ci in enumerate(c)) % p
            assert cheb_eval(d, x, ctx) == horner
            if d and x % 3 == 0:
                assert cheb_eval_semiconj(d, x, ctx) == horner
            ext = cheb_eval_ext(d, QuadExtElem(x, 0), ctx)
            assert tuple(ext) == (horner, 0)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([5, 7, 11, 13, 101]), st.integers(0, 9), st.integers(0, 9), st.integers(0, 100))
def test_composition(p, a, b, x):
    ctx = make_ctx(p)
    assert cheb_eval(a, cheb_eval(b, x, ctx), ctx) == cheb_eval(a * b, x, ctx)


def brute_periodic(p, d, sign=1):
    c = cheb_coeffs(d)
    img = [sign * sum(ci * pow(x, i, p) for i, ci in enumerate(c)) % p for x in range(p)]
    return walk_oracle(img)[0]


def test_bruteforce_examples():
    assert periodic_count_bruteforce(5, 2)[0] == {2, 4}
    assert periodic_count_bruteforce(7, 3)[0] == {0, 2, 3, 4, 5}
    assert periodic_count_bruteforce(7, 4)[0] == {2, 6}


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41])
def test_bruteforce_vs_walk_oracle(p):
    for d in range(2, 10):
        for sign in (1, -1):
            assert periodic_count_bruteforce(p, d, sign)[0] == brute_periodic(p, d, sign)


def test_bruteforce_rejects():
    with pytest.raises(ValueError):
        periodic_count_bruteforce(9, 2)
    with pytest.raises(ValueError):
        periodic_count_bruteforce(2, 2)
    with pytest.raises(ValueError):
        periodic_count_bruteforce(7, 2, sign=2)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 61, 97, 127, 251])
def test_orders_route(p):
    for d in range(2, 13):
        assert periodic_set_by_orders(p, d) == periodic_count_bruteforce(p, d)[0]


def test_orders_route_seed_independent():
    assert periodic_set_by_orders(101, 6, seed=0) == periodic_set_by_orders(101, 6, seed=99)


def test_closed_form_examples():
    assert closed_form_count(5, 2) == 2
    assert closed_form_count(7, 3) == 5
    assert closed_form_count(5, 3, "published") == 3
    assert closed_form_count(5, 2, "published") == 1
    assert formula_term(127, 6) == 4
    with pytest.raises(ValueError):
        closed_form_count(9 * 5, 2)
    with pytest.raises(ValueError):
        closed_form_count(8, 2)
    with pytest.raises(ValueError):
        closed_form_count(7, 3, "other")


def test_published_offset():
    assert [published_offset(d) for d in range(2, 8)] == [-1, 0, -1, 0, -1, 0]


@pytest.mark.parametrize("d", range(2, 13))
def test_calibrated_offset_is_rederived(d):
    assert calibrate_offset(d) == CALIBRATED_OFFSET == 0


def test_closed_form_matches_bruteforce_small():
    for p in primes_up_to(60).tolist()[1:]:
        for d in range(2, 9):
            assert closed_form_count(p, d) == len(brute_periodic(p, d))


def test_discrepancy_table():
    for row in discrepancy_table([3, 5, 7, 11], range(2, 8)):
        assert row.brute == row.calibrated
        assert row.calibrated - row.published == (1 if row.d % 2 == 0 else 0)


def test_ratio():
    assert ratio(127, 6) == Fraction(8, 254)
    assert ratio(7, 3) == Fraction(5, 7)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17])
def test_prime_square_fields(p):
    # F_{p^2} brute force against the closed form at q = p^2
    for d in range(2, 7):
        for sign in (1, -1):
            pts, _ = periodic_count_bruteforce_ext(p, d, sign)
            assert len(pts) == closed_form_count(p * p, d)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 29])
def test_sign_relation(p):
    for d in range(2, 9):
        plus = periodic_count_bruteforce(p, d, 1)[0]
        minus = periodic_count_bruteforce(p, d, -1)[0]
        if d % 2:
            assert minus == plus
        else:
            assert minus == {(-x) % p for x in plus}


def test_twisted_examples():
    ctx = make_ctx(7)
    one = QuadExtElem(1, 0)
    for d in range(1, 8):
        for x in range(7):
            assert twisted_eval(d, one, QuadExtElem(x, 0), ctx) == (cheb_eval(d, x, ctx), 0)
    sign, a = twisted_normalize(3, QuadExtElem(6, 0), ctx)
    assert sign == -1
    assert ctx.mul(a, a) == (6, 0)


def test_twisted_defining_identity():
    # T_{d,zeta}(x + zeta/x) = x^d + zeta^d / x^d
    ctx = make_ctx(11)
    for d in range(1, 7):
        for zeta in (QuadExtElem(3, 0), QuadExtElem(2, 5)):
            for xc in range(1, 121, 7):
                x = ctx.decode(xc)
                y = ctx.add(x, ctx.mul(zeta, ctx.inv(x)))
                xd = ctx.pow(x, d)
                rhs = ctx.add(xd, ctx.mul(ctx.pow(zeta, d), ctx.inv(xd)))
                assert twisted_eval(d, zeta, y, ctx) == rhs


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23, 29, 31])
def test_twisted_normalize_all_roots(p):
    ctx = make_ctx(p)
    for d in range(2, 8):
        roots = [ctx.decode(c) for c in range(1, p * p) if ctx.is_one(ctx.pow(ctx.decode(c), d - 1))]
        for zeta in roots:
            sign, a = twisted_normalize(d, zeta, ctx)
            if d % 2 == 0:
                assert sign == 1
            assert ctx.mul(a, a) == zeta
    with pytest.raises(ValueError):
        twisted_normalize(3, QuadExtElem(2, 0), make_ctx(7))
