import random

import pytest
from hypothesis import given, settings, strategies as st

from omegalab import qform as qf
from omegalab import rootdata as rd
from omegalab.crystal import (
    CrystalElt,
    IotaSeq,
    classify,
    e_geo,
    enumerate_weight,
    eps,
    eps_vector,
    f_geo,
    indicted_search,
    string,
    vacuum,
)
from omegalab.errors import BoundExceeded, NotMinimalForm, Undefined

from conftest import cd, spec

NEG_INF = None


# Oracle: the tensor product rule applied to explicit factors.
# A factor is (color, a) standing for b_color(-a); a list of factors is read
# left to right.  eps(x (x) y) = max(eps(x), eps(y) - <wt x, a_i^vee>),
# f~ acts on x iff phi(x) > eps(y), e~ acts on x iff phi(x) >= eps(y).

def _max(a, b):
    if a is NEG_INF:
        return b
    if b is NEG_INF:
        return a
    return max(a, b)


def _minus(a, k):
    return NEG_INF if a is NEG_INF else a - k


def o_wt_pair(g, factors, i):
    """<wt, a_i^vee> of a block of factors."""
    return sum(-a * g.cartan[i][c] for c, a in factors)


def o_eps(g, factors, i):
    if len(factors) == 1:
        c, a = factors[0]
        return a if c == i else NEG_INF
    x, y = factors[:1], factors[1:]
    return _max(o_eps(g, x, i), _minus(o_eps(g, y, i), o_wt_pair(g, x, i)))


def o_phi(g, factors, i):
    e = o_eps(g, factors, i)
    return _minus(e, -o_wt_pair(g, factors, i))


def _gt(a, b):
    if a is NEG_INF:
        return False
    if b is NEG_INF:
        return True
    return a > b


def o_f(g, factors, i):
    """f~_i: lowers the weight, i.e. raises one a at color i."""
    if len(factors) == 1:
        c, a = factors[0]
        return [(c, a + 1)]
    x, y = factors[:1], factors[1:]
    if _gt(o_phi(g, x, i), o_eps(g, y, i)):
        return o_f(g, x, i) + y
    return x + o_f(g, y, i)


def o_e(g, factors, i):
    if len(factors) == 1:
        c, a = factors[0]
        return [(c, a - 1)]
    x, y = factors[:1], factors[1:]
    phx, epy = o_phi(g, x, i), o_eps(g, y, i)
    if phx is not NEG_INF and (epy is NEG_INF or phx >= epy):
        return o_e(g, x, i) + y
    return x + o_e(g, y, i)


def to_factors(b, periods=2):
    r = len(b.iota.base)
    n = (-(-len(b.entries) // r) + periods) * r
    entries = b.entries + (0,) * (n - len(b.entries))
    return [(b.iota.color(k), entries[k - 1]) for k in range(n, 0, -1)]


def from_factors(g, iota, factors):
    entries = tuple(a for _, a in reversed(factors))
    if any(a < 0 for a in entries):
        return None
    return CrystalElt(g, iota, entries)


def random_element(g, rng, height, iota=None):
    b = vacuum(g, iota)
    for _ in range(height):
        b = e_geo(b, rng.randrange(g.rank))
    return b


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
@pytest.mark.parametrize("base", ["default", "reversed"])
def test_operators_match_tensor_rule(name, base):
    g = cd(name)
    iota = IotaSeq(tuple(range(g.rank)) if base == "default" else tuple(reversed(range(g.rank))))
    for h in range(0, 6):
        for mu in rd.weights_up_to_height(g, h, h):
            for b in enumerate_weight(g, rd.neg(mu), iota):
                fac = to_factors(b)
                for i in range(g.rank):
                    assert eps(b, i) == o_eps(g, fac, i)
                    assert e_geo(b, i) == from_factors(g, iota, o_f(g, fac, i))
                    if eps(b, i) == 0:
                        with pytest.raises(Undefined):
                            f_geo(b, i)
                    else:
                        assert f_geo(b, i) == from_factors(g, iota, o_e(g, fac, i))


def test_eps_examples():
    for name in ("A2", "G2"):
        g = cd(name)
        assert eps_vector(vacuum(g)) == (0,) * g.rank
    a1 = cd("A1")
    for m in range(6):
        (b,) = enumerate_weight(a1, (-m,))
        assert eps(b, 0) == m
        assert b.entries == ((m,) if m else ())


def test_operator_examples():
    a1 = cd("A1")
    b = CrystalElt(a1, IotaSeq((0,)), (3,))
    assert f_geo(b, 0).entries == (2,)
    assert e_geo(b, 0).entries == (4,)
    with pytest.raises(Undefined):
        f_geo(vacuum(a1), 0)
    g = cd("G2")
    for i in range(2):
        b = e_geo(vacuum(g), i)
        assert b.weight == rd.neg(g.simple(i))


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["A2", "B2", "G2", "A3"]), st.integers(0, 10**6), st.integers(0, 6))
def test_crystal_axioms(name, seed, h):
    g = cd(name)
    rng = random.Random(seed)
    b = random_element(g, rng, h)
    for i in range(g.rank):
        up = e_geo(b, i)
        assert up.weight == rd.sub(b.weight, g.simple(i))
        assert eps(up, i) == eps(b, i) + 1
        assert f_geo(up, i) == b
        if eps(b, i) > 0:
            down = f_geo(b, i)
            assert down.weight == rd.add(b.weight, g.simple(i))
            assert e_geo(down, i) == b
            c = b
            for _ in range(eps(b, i)):
                c = f_geo(c, i)
            assert eps(c, i) == 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A2", "B2", "G2"]), st.integers(0, 10**6), st.integers(0, 6))
def test_window_stability(name, seed, h):
    g = cd(name)
    b = random_element(g, random.Random(seed), h)
    for i in range(g.rank):
        assert eps(b, i) == eps(b, i, pad=6)
        assert e_geo(b, i) == e_geo(b, i, pad=6)
        if eps(b, i):
            assert f_geo(b, i) == f_geo(b, i, pad=6)


def test_enumerate_examples():
    g = cd("A2")
    assert len(enumerate_weight(g, (-1, 0))) == 1
    assert len(enumerate_weight(g, (-1, -1))) == 2
    assert len(enumerate_weight(cd("G2"), (-2, -1))) == 3
    with pytest.raises(BoundExceeded):
        enumerate_weight(g, (-5, -5), height_bound=8)
    with pytest.raises(ValueError):
        enumerate_weight(g, (1, 0))


@pytest.mark.parametrize("name", ["B3", "C3"])
def test_count_law_rank_three(name):
    g = cd(name)
    for mu in rd.weights_up_to_height(g, 5):
        assert len(enumerate_weight(g, rd.neg(mu))) == rd.kostant_partitions(g, mu)


def test_string_examples():
    g = cd("A2")
    for i in range(2):
        (b,) = enumerate_weight(g, rd.neg(g.simple(i)))
        assert string(b) == [(i, 1)]
    a1 = cd("A1")
    (b,) = enumerate_weight(a1, (-4,))
    assert string(b) == [(0, 4)]
    assert string(vacuum(a1)) == []
    with pytest.raises(ValueError):
        string(b, "random")


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A2", "B2", "G2"]), st.integers(0, 10**6), st.integers(1, 7),
       st.sampled_from(["min", "max"]))
def test_string_sums_to_weight(name, seed, h, strategy):
    g = cd(name)
    b = random_element(g, random.Random(seed), h)
    total = g.zero()
    for j, m in string(b, strategy):
        assert m >= 1
        total = rd.add(total, rd.scale(m, g.simple(j)))
    assert rd.neg(total) == b.weight


def test_g2_indicted_component():
    g = cd("G2")
    sp = spec("G2", 2)
    recs = [classify(b, sp) for b in enumerate_weight(g, (-2, -1))]
    indicted = [r for r in recs if r["indicted"]]
    assert len(recs) == 3 and len(indicted) == 1
    assert indicted[0]["string"] == [[1, 1], [0, 2]]
    assert indicted[0]["sharp_conditions"] == [True, True]
    assert indicted[0]["weight_filter"]


def test_simple_coroots_are_never_indicted():
    for name in ("A2", "G2"):
        g = cd(name)
        sp = spec(name, 2)
        for i in range(g.rank):
            (b,) = enumerate_weight(g, rd.neg(g.simple(i)))
            r = classify(b, sp)
            assert r["suspicious"] and not r["indicted"]


def test_nontorsion_has_no_indicted():
    for name in ("A2", "B2", "G2"):
        g = cd(name)
        sp = spec(name, None)
        for mu in rd.weights_up_to_height(g, 6, 2):
            for b in enumerate_weight(g, rd.neg(mu)):
                assert not classify(b, sp)["indicted"]


def test_a2_both_components_suspicious():
    g = cd("A2")
    recs = [classify(b, spec("A2", 2)) for b in enumerate_weight(g, (-1, -1))]
    assert len(recs) == 2 and all(r["suspicious"] for r in recs)
    rep = indicted_search(g, spec("A2", 2), 4)
    entry = next(w for w in rep["weights"] if w["weight"] == [-1, -1])
    assert entry["suspicious"] == 2


def test_g2_search_anchor():
    rep = indicted_search(cd("G2"), spec("G2", 2), 3)
    assert rep["indicted_weights"] == [[-2, -1]]
    assert rep["violations"] == []


def test_classify_requires_minimal_form():
    g = cd("G2")
    (b,) = enumerate_weight(g, (-1, 0))
    with pytest.raises(NotMinimalForm):
        classify(b, qf.QFormSpec(g, (2, 6), 7))
    with pytest.raises(NotMinimalForm):
        indicted_search(g, qf.QFormSpec(g, (2, 6), 7), 3)
    # equal modulo N is accepted
    assert classify(b, qf.QFormSpec(g, (8, 24), 7))["suspicious"]


def test_search_bound():
    with pytest.raises(BoundExceeded):
        indicted_search(cd("A2"), spec("A2", 5), 13)


def test_search_is_deterministic():
    a = indicted_search(cd("B2"), spec("B2", 2), 5)
    b = indicted_search(cd("B2"), spec("B2", 2), 5)
    assert a == b
