from fractions import Fraction as F
import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wdescend import oracle
from wdescend.oracle import (UNIT, OracleIncomplete, TargetError, descendant_key, dump_target,
                             genus0_point, load_target, ring_product, unweighted_lookup,
                             wk_kdv, wk_point)

TRUNCATION = """
# P^1-like truncation ring
[target]
kind=formal
dim=1
[classes]
1 one 0
H H 1 0
[products]
H*H = 0
[descendants]
g=0 ; (0,H) (0,1) (0,1) ; 1
"""


def test_genus0_examples():
    assert genus0_point([0, 0, 0]) == 1
    assert genus0_point([1, 1, 0, 0, 0]) == 2
    assert genus0_point([2, 0, 0, 0, 0]) == 1
    assert genus0_point([1, 0, 0]) == 0


def test_point_values():
    assert wk_point(1, [1]) == F(1, 24)
    assert wk_point(0, [0, 0, 0]) == 1
    assert wk_point(2, [4]) == F(1, 1152)
    assert wk_point(2, [2, 3]) == F(29, 5760)
    assert wk_point(2, [2, 2, 2]) == F(7, 240)
    assert wk_point(3, [7]) == F(1, 82944)
    assert wk_point(3, [6, 2]) == F(77, 414720)
    assert wk_point(1, [2, 1, 0]) == F(1, 12)


def test_gate_and_negative_indices():
    assert wk_point(0, [1, 0, 0, 1]) == 0
    assert wk_point(1, [-1, 2]) == 0
    assert wk_kdv(2, [3]) == 0


def test_two_recursions_agree_up_to_dimension_nine():
    for g in range(4):
        for n in range(1, 10):
            d = 3 * g - 3 + n
            if d < 0 or d > 9 or (g, n) in ((0, 1), (0, 2)):
                continue
            for ks in itertools.combinations_with_replacement(range(d + 1), n):
                if sum(ks) == d:
                    assert wk_point(g, ks) == wk_kdv(g, ks), (g, ks)


def test_cache_state_does_not_matter():
    before = wk_point(3, [3, 3, 3])
    oracle.clear_caches()
    assert wk_kdv(3, [3, 3, 3]) == before
    oracle.clear_caches()
    assert wk_point(3, [3, 3, 3]) == before


def test_load_examples():
    assert load_target("[target]\nkind=point\n").is_point
    m = load_target(TRUNCATION)
    assert m.dim == 1 and m.degree("H") == 1 and m.beta_integral("H") == 0
    with pytest.raises(TargetError):
        load_target(TRUNCATION.replace("H*H = 0", "H*K = 0"))
    with pytest.raises(TargetError):
        load_target(TRUNCATION.replace("H H 1 0", "H H x"))
    assert load_target(dump_target(m)) == m


def test_ring_examples():
    m = load_target(TRUNCATION)
    assert ring_product(m, [UNIT, UNIT]) == {UNIT: 1}
    assert ring_product(m, ["H", "H"]) == {}
    assert ring_product(m, ["H"]) == {"H": 1}


def test_lookup_examples():
    assert unweighted_lookup(oracle.POINT, 0, [(0, UNIT)] * 3) == 1
    m = load_target(TRUNCATION)
    assert unweighted_lookup(m, 0, [(0, "H"), (0, UNIT), (0, UNIT)]) == 1
    assert unweighted_lookup(m, 0, [(-1, "H"), (0, UNIT), (2, UNIT)]) == 0
    with pytest.raises(OracleIncomplete):
        unweighted_lookup(m, 0, [(1, "H"), (0, UNIT), (0, UNIT), (0, UNIT)])
    # failing the gate is a genuine zero, not a missing entry
    assert unweighted_lookup(m, 0, [(0, UNIT)] * 3) == 0


def test_descendant_key_is_order_free():
    assert descendant_key(1, [(2, "H"), (0, UNIT)]) == descendant_key(1, [(0, UNIT), (2, "H")])


def gated(max_dim=8):
    def build(draw):
        g = draw(st.integers(0, 3))
        n = draw(st.integers(3 if g == 0 else 1, 8))
        d = 3 * g - 3 + n
        if d > max_dim:
            n = max(3 if g == 0 else 1, n - (d - max_dim))
            d = 3 * g - 3 + n
        if d > max_dim or d < 0:
            g, n, d = 0, 3, 0
        cuts = sorted(draw(st.lists(st.integers(0, d), min_size=n - 1, max_size=n - 1)))
        ks = [b - a for a, b in zip([0] + cuts, cuts + [d])]
        return g, ks
    return st.composite(lambda draw: build(draw))()


@given(gated(), st.randoms())
def test_symmetry(gk, rnd):
    g, ks = gk
    perm = list(ks)
    rnd.shuffle(perm)
    assert wk_point(g, ks) == wk_point(g, perm)


@given(gated(9))
def test_string_and_dilaton(gk):
    g, ks = gk
    if (g, len(ks)) not in ((0, 3),):
        lowered = sum(wk_point(g, ks[:j] + [ks[j] - 1] + ks[j + 1:]) for j in range(len(ks)))
        assert wk_point(g, [0] + ks) == lowered
    assert wk_point(g, [1] + ks) == (2 * g - 2 + len(ks)) * wk_point(g, ks)


@given(gated())
def test_gate(gk):
    g, ks = gk
    assert wk_point(g, ks + [0]) == 0 or sum(ks) == 3 * g - 3 + len(ks) + 1
    assert wk_point(g + 1, ks) == 0
