from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from perred.classify import CASE_VALUES, ClassificationOutcome, chebyshev_case, perinf_chebyshev, perinf_polynomial
from perred.conjugacy import parse_poly, synthesize


def case_oracle(d, m):
    """Dispatcher written from sympy factorizations."""
    fd, fm = sympy.factorint(d), sympy.factorint(m)
    if len(fd) == 1:
        return 10 if 2 in fd else 9
    if not set(fd) <= set(fm):
        return 5
    if d % 2:
        return 6
    return 7 if fm.get(2, 0) >= 2 else 8


def eq2_value(d):
    fd = sympy.factorint(d)
    if len(fd) > 1:
        return Fraction(0)
    return Fraction(1, 4) if 2 in fd else Fraction(1, 2)


@pytest.mark.parametrize("d", range(2, 201))
def test_rationals_map(d):
    assert perinf_chebyshev(d, 2).value == eq2_value(d)


@pytest.mark.parametrize("d, m, case, value", [
    (3, 2, 9, "1/2"), (6, 2, 5, "0"), (6, 12, 7, "1/4"), (6, 6, 8, "0"), (15, 30, 6, "1/2"),
    (9, 2, 9, "1/2"), (8, 2, 10, "1/4"), (8, 24, 10, "1/4"), (45, 30, 6, "1/2"), (10, 2, 5, "0"),
])
def test_case_examples(d, m, case, value):
    out = perinf_chebyshev(d, m)
    assert (out.case_id, out.value) == (case, Fraction(value))


@settings(max_examples=400, deadline=None)
@given(st.integers(2, 5000), st.integers(1, 3000))
def test_cases_vs_oracle(d, half_m):
    m = 2 * half_m
    assert chebyshev_case(d, m) == case_oracle(d, m)
    assert perinf_chebyshev(d, m).value == CASE_VALUES[case_oracle(d, m)]


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 3000), st.integers(1, 500), st.lists(st.integers(0, 5), min_size=1, max_size=4))
def test_monotone_in_m(d, half_m, powers):
    m = 2 * half_m
    primes = sorted(sympy.factorint(d))
    bigger = m
    for p, e in zip(primes, powers):
        bigger *= p**e
    assert perinf_chebyshev(d, bigger).value >= perinf_chebyshev(d, m).value
    if d % 2 and all(bigger % p == 0 for p in primes):
        assert perinf_chebyshev(d, bigger).value == Fraction(1, 2)


@pytest.mark.parametrize("d, m", [(1, 2), (0, 2), (6, 3), (6, 0), (6, -2)])
def test_rejects(d, m):
    with pytest.raises(ValueError):
        perinf_chebyshev(d, m)


def test_outcome_validation():
    with pytest.raises(ValueError):
        ClassificationOutcome(9, Fraction(1, 4), 3, 2)


@pytest.mark.parametrize("text, case, value, via", [
    ("7", 1, "0", None),
    ("3*x + 1", 2, "1", None),
    ("2*x^3 - 3*x", 9, "1/2", 4),
    ("x^3", 3, "0", None),
    ("x^2 - 2", 10, "1/4", 4),
    ("x^2 + 1", 3, "0", None),
])
def test_polynomial_examples(text, case, value, via):
    out = perinf_polynomial(parse_poly(text))
    assert (out.case_id, out.value, out.via) == (case, Fraction(value), via)


def test_polynomial_composite_degree():
    out = perinf_polynomial(synthesize(6, 1, a=3, b=1))
    assert (out.case_id, out.value, out.via, out.m_K) == (5, 0, 4, 2)


def test_to_dict():
    d = perinf_polynomial(parse_poly("2*x^3 - 3*x")).to_dict()
    assert d["case_id"] == 9 and d["value"] == "1/2" and d["via"] == 4
    assert d["detection"]["a_squared"] == "2"
    assert perinf_chebyshev(6, 12).to_dict() == {"case_id": 7, "value": "1/4", "d": 6, "m_K": 12}
