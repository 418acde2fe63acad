from fractions import Fraction as F
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wdescend import oracle
from wdescend.complexes import SimplicialComplex, build_complex, cone, discrete, mask_of
from wdescend.core import MultiPoly
from wdescend.descend import (compositions, dimension_gate, gendesc_difference,
                              generating_polynomial, kappa_number, kappa_number_all_partitions,
                              verify_cone, verify_genpoly_wallcross, verify_symmetric,
                              verify_wallcross, wallcross_third_term, weighted_descendant)
from wdescend.oracle import UNIT, TargetModel
from wdescend.suites import p1_degree_zero_target, random_dominating_pair, random_ks


def B(*ws):
    return build_complex([F(w) for w in ws])


def e(n):
    return sum((MultiPoly.var(n, i) for i in range(n)), MultiPoly.zero(n))


def test_gate_examples():
    assert dimension_gate(0, [1, 0, 0, 0])
    assert dimension_gate(1, [1])
    assert not dimension_gate(0, [2, 0, 0, 0])


def test_descendant_examples():
    assert weighted_descendant(0, discrete(4), [1, 0, 0, 0]) == 1
    assert weighted_descendant(0, B(1, F(2, 5), F(2, 5), F(2, 5)), [0, 1, 0, 0]) == -1
    assert weighted_descendant(0, B(F(9, 10), F(9, 10), F(9, 10), F(1, 10)), [0, 0, 0, 1]) == -2
    lm = B(1, 1, F(1, 10), F(1, 10), F(1, 10))
    assert weighted_descendant(0, lm, [2, 0, 0, 0, 0]) == 1
    assert weighted_descendant(0, lm, [0, 0, 2, 0, 0]) == 0


def test_trace_lists_each_partition():
    trace = []
    v = weighted_descendant(0, B(1, F(2, 5), F(2, 5), F(2, 5)), [0, 1, 0, 0], trace=trace)
    assert v == sum(t.value for t in trace) == -1
    assert [str(t.partition) for t in trace] == ["{1}{2}{3}{4}", "{1}{2}{3,4}",
                                                "{1}{2,3}{4}", "{1}{2,4}{3}"]
    assert [t.ksigma for t in trace][1] == (0, 1, -1)


def test_third_term_examples():
    post = B(1, 1, F(1, 3), F(1, 3), F(1, 3))
    assert wallcross_third_term(0, post, [0, 0, 1, 1, 0], mask_of([3, 4, 5])) == -1
    # k_sigma = 0 - 2 < 0
    assert wallcross_third_term(0, post, [1, 1, 0, 0, 0], mask_of([3, 4, 5])) == 0
    # a singleton sigma has sign (-1)^(0+1) on an isomorphic complex
    c = B(1, F(2, 5), F(2, 5), F(2, 5))
    assert wallcross_third_term(0, c, [0, 1, 0, 0], mask_of([2])) == \
        -weighted_descendant(0, c, [0, 1, 0, 0])


def test_wallcross_examples():
    pre = B(1, 1, F(2, 5), F(2, 5), F(2, 5))
    post = B(1, 1, F(1, 3), F(1, 3), F(1, 3))
    r = verify_wallcross(0, [0, 0, 1, 1, 0], pre, post)
    assert r.holds and r.lhs == -1 and r.details["post"] == 0 and r.details["third"] == -1
    r = verify_wallcross(0, [0] * 5, pre, post)
    assert r.holds and r.details["third"] == 0
    with pytest.raises(ValueError):
        verify_wallcross(0, [0] * 5, pre, pre)


def test_genpoly_examples():
    for n in range(3, 9):
        assert generating_polynomial(0, discrete(n)) == e(n) ** (n - 3)
    t1, t2 = MultiPoly.var(5, 0), MultiPoly.var(5, 1)
    assert generating_polynomial(0, B(1, 1, F(1, 10), F(1, 10), F(1, 10))) == (t1 + t2) ** 2
    assert str(generating_polynomial(0, B(1, F(2, 5), F(2, 5), F(2, 5)), exponential=True)) \
        == "t1 - t2 - t3 - t4"


def test_genpoly_wallcross_examples():
    pre = B(1, 1, F(2, 5), F(2, 5), F(2, 5))
    post = B(1, 1, F(1, 3), F(1, 3), F(1, 3))
    assert verify_genpoly_wallcross(0, pre, post).holds
    # projective r = 3 example reached from the discrete complex
    c = discrete(4)
    for sigma in ([2, 3], [2, 4], [3, 4]):
        nxt = c.with_face(mask_of(sigma))
        assert verify_genpoly_wallcross(0, c, nxt).holds
        c = nxt
    assert c == B(1, F(2, 5), F(2, 5), F(2, 5))


def test_kappa_examples():
    assert kappa_number(1, [1]) == F(1, 24)
    assert kappa_number(2, [2, 3]) == oracle.wk_point(2, [2, 3]) - oracle.wk_point(2, [4])
    # genus 0 is excluded: weights (eps^n) never sum past 2
    for g in range(1, 4):
        for n in range(1, 5):
            for ks in compositions(3 * g - 3 + n, n):
                assert kappa_number(g, ks) == kappa_number_all_partitions(g, ks)
    with pytest.raises(ValueError):
        kappa_number(0, [0, 0, 0])


def test_cone_examples():
    base = discrete(3)
    for ks in compositions(3 * 2 - 3 + 3, 3):
        r = verify_cone("dilaton", 2, cone(base), list(ks))
        assert r.holds and (r.rhs == 2 * oracle.wk_point(2, ks))
    c = cone(B(1, F(2, 5), F(2, 5), F(2, 5)))
    for ks in compositions(2, 4):
        r = verify_cone("string", 0, c, list(ks))
        assert r.holds and r.lhs == 0
    with pytest.raises(ValueError):
        verify_cone("string", 0, discrete(3), [0, 0])


def test_cone_divisor_in_formal_mode():
    target = p1_degree_zero_target(6)
    for ks in compositions(2, 4):
        assert verify_cone("divisor", 0, cone(discrete(4)), list(ks), ["H", UNIT, UNIT, UNIT],
                           target, "H").holds


def test_symmetric_examples():
    for ks in compositions(3 * 2 - 3 + 3, 3):
        assert verify_symmetric("dilaton", 2, 1, list(ks)).holds
    for ks in compositions(2, 5):
        assert verify_symmetric("string", 0, 1, list(ks)).holds
    # r = 0: corrections are the edges {i, n+1}, i.e. the unweighted string equation
    for ks in compositions(3, 5):
        r = verify_symmetric("string", 0, 0, list(ks))
        lowered = sum(oracle.wk_point(0, ks[:j] + (ks[j] - 1,) + ks[j + 1:]) for j in range(5))
        assert r.holds and r.details["extra_faces"] == 5 and r.lhs == lowered


def test_symmetric_outside_domain_is_refused():
    with pytest.raises(ValueError):
        verify_symmetric("string", 0, 2, [0, 0, 0, 0, 0])


def test_formal_mode_needs_complete_table():
    m = TargetModel(kind="formal", dim=0, classes={UNIT: ("1", 0)})
    with pytest.raises(oracle.OracleIncomplete):
        weighted_descendant(0, discrete(3), [0, 0, 0], target=m)


# property tests -------------------------------------------------------------

@st.composite
def positive_weights(draw, nmin=1, nmax=6):
    n = draw(st.integers(nmin, nmax))
    return [F(draw(st.integers(1, 12)), 12) for _ in range(n)]


@st.composite
def query(draw, gmax=2, nmax=6):
    g = draw(st.integers(0, gmax))
    ws = draw(positive_weights(3 if g == 0 else 1, nmax))
    d = 3 * g - 3 + len(ws)
    cuts = sorted(draw(st.lists(st.integers(0, d), min_size=len(ws) - 1, max_size=len(ws) - 1)))
    ks = [b - a for a, b in zip([0] + cuts, cuts + [d])]
    return g, build_complex(ws), ks


@given(st.integers(0, 2), st.integers(1, 8), st.data())
def test_discrete_complex_is_unweighted(g, n, data):
    if g == 0 and n < 3:
        n = 3
    d = 3 * g - 3 + n
    ks = data.draw(st.sampled_from(sorted(compositions(d, n))))
    assert weighted_descendant(g, discrete(n), list(ks)) == oracle.wk_point(g, ks)


@given(query(), st.randoms())
def test_automorphism_equivariance(q, rnd):
    g, c, ks = q
    perm = list(range(c.n))
    rnd.shuffle(perm)
    image = SimplicialComplex(c.n, {sum(1 << perm[i] for i in range(c.n) if f >> i & 1)
                                    for f in c.faces})
    moved = [None] * c.n
    for i in range(c.n):
        moved[perm[i]] = ks[i]
    assert weighted_descendant(g, image, moved) == weighted_descendant(g, c, ks)


@given(query(gmax=0, nmax=6))
def test_genpoly_coefficients_match(q):
    g, c, ks = q
    poly = generating_polynomial(g, c)
    assert poly.coefficient(tuple(ks)) == weighted_descendant(g, c, ks)


@given(st.integers(0, 2), st.integers(2, 6), st.integers(0, 10 ** 6))
def test_gendesc_matches_endpoint_difference(g, n, seed):
    if g == 0:
        n = max(n, 4)
    rng = random.Random(seed)
    a, b = random_dominating_pair(rng, n, g)
    ks = random_ks(rng, g, n)
    ca, cb = build_complex(a), build_complex(b)
    assert weighted_descendant(g, cb, ks) - weighted_descendant(g, ca, ks) == \
        gendesc_difference(g, ca, cb, ks)


@given(query())
def test_nonzero_terms_pass_the_gate(q):
    g, c, ks = q
    trace = []
    weighted_descendant(g, c, ks, trace=trace)
    for t in trace:
        if t.oracle:
            assert sum(t.ksigma) == 3 * g - 3 + len(t.ksigma)


@given(st.lists(st.integers(1, 11), min_size=2, max_size=4), st.integers(1, 3))
def test_epsilon_and_zero_weights_give_same_complex(top, m):
    """(a, eps^m) and (a, 0^m) in the same fine chamber have the same complex."""
    from wdescend.chambers import chamber_signature
    from wdescend.weights import WeightData
    a = [F(x, 12) for x in top]
    eps = F(1, 1000)
    w_eps = WeightData(tuple(a + [eps] * m), 2, 0)
    w_0 = WeightData(tuple(a + [F(0)] * m), 2, 0)
    if chamber_signature(w_eps) == chamber_signature(w_0):
        assert build_complex(w_eps) == build_complex(w_0)
