"""Property tests over random parameters and random corpus members."""

from __future__ import annotations

from math import gcd

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from grouptool import CoprimePair, build, compute_e_series, d_m_group, d_mn_group, direct_product, l_set, standard_corpus
from grouptool.eseries import FROBENIUS, NILPOTENT
from grouptool.subgroups import cyclic_subgroup, join, normal_subgroups, quotient

NAMES = [e.name for e in standard_corpus(48)]
TINY = [e.name for e in standard_corpus(12)]

coprime = st.tuples(st.integers(2, 15), st.integers(2, 15)).filter(lambda p: gcd(*p) == 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 60), st.data())
def test_cyclic_l_sets(k, data):
    m = data.draw(st.sampled_from([d for d in range(1, k + 1) if k % d == 0]))
    G = build(f"C{k}")
    assert len(l_set(G, m)) == m
    assert d_m_group(G, m).members == tuple(sorted(l_set(G, m)))


@settings(max_examples=30, deadline=None)
@given(coprime)
def test_cyclic_coprime_operator_is_trivial(p):
    m, n = p
    assert d_mn_group(build(f"C{m * n}"), CoprimePair(m, n)).order == 1
    assert compute_e_series(build(f"C{m * n}"), CoprimePair(m, n)).classification == NILPOTENT


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 40).map(lambda k: 2 * k + 1).filter(lambda k: k > 1))
def test_odd_dihedral_kernel_is_the_rotations(k):
    G = build(f"D{2 * k}")
    D = d_mn_group(G, CoprimePair(k, 2))
    assert D.order == k
    assert all(int(G.orders[x]) != 2 for x in D.members)
    s = compute_e_series(G, CoprimePair(k, 2))
    assert s.orders == [1, k, 2 * k] and s.classification == FROBENIUS


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(NAMES), st.data())
def test_divisibility(name, data):
    G = build(name)
    m = data.draw(st.sampled_from([d for d in range(1, G.order + 1) if G.order % d == 0]))
    assert len(l_set(G, m)) % m == 0


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(NAMES), st.data())
def test_lagrange_on_joins(name, data):
    G = build(name)
    xs = data.draw(st.lists(st.integers(0, G.order - 1), min_size=1, max_size=3))
    H = join(*(cyclic_subgroup(G, x) for x in xs))
    assert G.order % H.order == 0
    for x in xs:
        assert x in H
        assert H.order % int(G.orders[x]) == 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(NAMES), st.data())
def test_quotient_homomorphism(name, data):
    G = build(name)
    N = data.draw(st.sampled_from(normal_subgroups(G)))
    Q, q = quotient(G, N)
    a, b = data.draw(st.tuples(st.integers(0, G.order - 1), st.integers(0, G.order - 1)))
    assert q.projection[G.mul(a, b)] == Q.mul(q.projection[a], q.projection[b])
    assert Q.order * N.order == G.order
    assert q.preimage(q.image(N.members)) == N


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(TINY), st.sampled_from(TINY), st.integers(1, 12))
def test_d_m_of_products(a, b, m):
    G, H = build(a), build(b)
    assume(G.order * H.order <= 144)
    P = direct_product(G, H)
    want = {g * H.order + h for g in d_m_group(G, m).members for h in d_m_group(H, m).members}
    assert set(d_m_group(P, m).members) == want


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(NAMES), st.data())
def test_series_is_monotone_and_normal(name, data):
    G = build(name)
    pairs = [(m, G.order // m) for m in range(2, G.order) if G.order % m == 0 and gcd(m, G.order // m) == 1]
    assume(pairs)
    m, n = data.draw(st.sampled_from(pairs))
    s = compute_e_series(G, CoprimePair(m, n))
    for x, y in zip(s.terms, s.terms[1:]):
        assert x <= y
    assert s.reached == (s.terms[-1].order == G.order)
