from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wdescend.core import (MultiPoly, coefficient, format_rational, homogeneous_antiderivative,
                           parse_rational, poly_add, poly_mul, poly_scale, substitute_sum)


def t(n, i):
    return MultiPoly.var(n, i - 1)


def test_add_and_mul_examples():
    assert str(poly_add(t(2, 1), t(2, 2))) == "t1 + t2"
    assert str(poly_mul(t(2, 1) + t(2, 2), t(2, 1) + t(2, 2))) == "t1^2 + 2*t1*t2 + t2^2"
    assert str(poly_scale(t(2, 1) - t(2, 2), Fraction(1, 2))) == "1/2*t1 - 1/2*t2"


def test_coefficient_examples():
    e4 = sum((t(4, i) for i in range(1, 5)), MultiPoly.zero(4))
    assert coefficient(e4, (1, 0, 0, 0)) == 1
    e5 = sum((t(5, i) for i in range(1, 6)), MultiPoly.zero(5))
    assert coefficient(e5 ** 2, (1, 1, 0, 0, 0)) == 2
    assert coefficient(MultiPoly.zero(3), (2, 0, 1)) == 0


def test_antiderivative_examples():
    assert homogeneous_antiderivative(MultiPoly.constant(1, 1), 0, 1) == t(1, 1)
    assert homogeneous_antiderivative(t(1, 1), 0, 2) == (t(1, 1) ** 3).scale(Fraction(1, 6))
    p = t(2, 1) * t(2, 2)
    assert homogeneous_antiderivative(p, 1, 1) == (t(2, 1) * t(2, 2) ** 2).scale(Fraction(1, 2))
    assert homogeneous_antiderivative(p, 1, 0) == p


def test_substitute_examples():
    assert str(substitute_sum(t(3, 3) ** 2, 2, [0, 1])) == "t1^2 + 2*t1*t2 + t2^2"
    c = MultiPoly.constant(3, Fraction(7, 3))
    assert substitute_sum(c, 2, [0, 1]) == c
    assert str(substitute_sum(t(4, 1) * t(4, 2), 1, [2, 3])) == "t1*t3 + t1*t4"


def test_substitute_rejects_self_reference():
    with pytest.raises(ValueError):
        substitute_sum(t(2, 1), 0, [0, 1])


def test_rationals_round_trip():
    for text in ("0", "-3", "2/5", "-7/12"):
        assert format_rational(parse_rational(text)) == text
    assert parse_rational("4/6") == Fraction(2, 3)
    for bad in ("x", "1/0", ""):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_printing_is_graded_lex():
    p = t(3, 3) + t(3, 1) ** 2 + MultiPoly.constant(3, -1) + t(3, 1) * t(3, 2)
    assert str(p) == "t1^2 + t1*t2 + t3 - 1"
    assert str(MultiPoly.zero(2)) == "0"


# property tests -----------------------------------------------------------

NVARS = 3
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)
monomials = st.tuples(*[st.integers(0, 3)] * NVARS)
polys = st.dictionaries(monomials, rationals, max_size=5).map(lambda d: MultiPoly(NVARS, d))


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == MultiPoly.zero(NVARS)


@given(polys, st.integers(0, NVARS - 1), st.integers(0, 3))
def test_antiderivative_inverts_derivative(p, var, m):
    q = p.antiderivative(var, m)
    for _ in range(m):
        q = q.derivative(var)
    assert q == p


@given(polys, polys)
def test_substitution_is_a_ring_map(p, q):
    s = lambda x: x.substitute_sum(2, [0, 1])
    assert s(p * q) == s(p) * s(q)
    assert s(p + q) == s(p) + s(q)


@given(polys)
def test_printing_is_deterministic(p):
    rebuilt = MultiPoly(NVARS, dict(reversed(list(p.items()))))
    assert str(rebuilt) == str(p)
