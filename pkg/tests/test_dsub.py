from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grouptool import CoprimePair, build, d_m_group, d_mn_group, l_set, standard_corpus
from grouptool.dsub import d_m_of_element, d_mn_of_element, l_result
from grouptool.errors import InvalidParams, NotAnMElement
from grouptool.subgroups import all_subgroups, normal_subgroups

from oracles import TableGroup, coprime_pairs

SMALL = [e.name for e in standard_corpus(60)]


def a3_members(G):
    return tuple(x for x in G.elements if G.orders[x] in (1, 3))


def test_example_s3():
    S3 = build("S3")
    assert d_m_group(S3, 3).members == a3_members(S3)
    r = d_mn_group(S3, CoprimePair(3, 2))
    assert r.members == a3_members(S3)
    assert r.is_subgroup and r.is_nilpotent


def test_example_s3_squared():
    G = build("S3xS3")
    assert d_m_group(G, 3).order == 9
    assert d_mn_group(G, CoprimePair(3, 2)).order == 1


def test_d_43_of_c12_is_trivial():
    assert d_mn_group(build("C12"), CoprimePair(4, 3)).order == 1


def test_f20():
    G = build("F20")
    assert d_mn_group(G, CoprimePair(5, 4)).order == 5
    assert d_mn_group(G, CoprimePair(4, 5)).order == 1


@pytest.mark.parametrize(
    "name,m,n,L,Dm,Dmn",
    # frozen from the pure-Python oracle
    [
        ("S4", 8, 3, 16, 4, 4),
        ("S4", 3, 8, 9, 1, 1),
        ("A4", 4, 3, 4, 4, 4),
        ("A4", 3, 4, 9, 1, 1),
        ("F21", 7, 3, 7, 7, 7),
        ("F21", 3, 7, 15, 1, 1),
        ("C12", 3, 4, 3, 3, 1),
        ("A5", 20, 3, 40, 1, 1),
        ("A5", 5, 12, 25, 1, 1),
        ("S3xS3", 9, 4, 9, 9, 1),
    ],
)
def test_frozen_orders(name, m, n, L, Dm, Dmn):
    G = build(name)
    assert len(l_set(G, m)) == L
    assert d_m_group(G, m).order == Dm
    assert d_mn_group(G, CoprimePair(m, n)).order == Dmn


@pytest.mark.parametrize("name", SMALL)
def test_operators_match_oracle(name):
    G = build(name)
    o = TableGroup(G.table)
    for m, n in coprime_pairs(G.order) + [(1, G.order), (G.order, 1)]:
        assert l_set(G, m) == o.l_set(m)
        assert set(d_m_group(G, m).members) == o.d_m(m)
        assert set(d_mn_group(G, CoprimePair(m, n)).members) == o.d_mn(m, n)


def test_first_clause_trivial_when_no_n_elements():
    # C9 has no nontrivial 2-elements
    r = d_mn_group(build("C9"), CoprimePair(9, 2))
    assert r.order == 1 and r.is_subgroup


def test_element_sets():
    G = build("S3")
    x = next(x for x in G.elements if G.orders[x] == 3)
    assert d_m_of_element(G, x, 3) == frozenset(a3_members(G))
    u = next(u for u in G.elements if G.orders[u] == 2)
    with pytest.raises(NotAnMElement):
        d_m_of_element(G, u, 3)
    ys = d_mn_of_element(G, x, CoprimePair(3, 2))
    # u = 1 is excluded because o(x) = 3 does not divide 2
    assert ys == frozenset(y for y in G.elements if G.orders[y] == 2)


def test_l_result_flags():
    G = build("S3")
    assert not l_result(G, 2).is_subgroup
    assert l_result(G, 3).is_subgroup


@pytest.mark.parametrize("m,n", [(4, 2), (0, 3), (3, 0)])
def test_bad_pairs(m, n):
    with pytest.raises(InvalidParams):
        CoprimePair(m, n)


def test_pair_helpers():
    p = CoprimePair(12, 5)
    assert p.pi_m == frozenset({2, 3}) and p.pi_n == frozenset({5})
    assert p.swapped() == CoprimePair(5, 12)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_containment_and_closure(name, data):
    G = build(name)
    pairs = coprime_pairs(G.order)
    if not pairs:
        return
    m, n = data.draw(st.sampled_from(pairs))
    L = l_set(G, m)
    Dm = d_m_group(G, m)
    Dmn = d_mn_group(G, CoprimePair(m, n))
    assert set(Dmn.members) <= set(Dm.members) <= L
    assert Dm.is_subgroup and Dmn.is_subgroup
    assert Dmn.is_nilpotent
    assert G.order % Dmn.order == 0


def test_subgroup_restriction_example():
    # D_{m,n} of a normal subgroup of order mn is contained in D_{m,n}(G)
    G = build("S4")
    D = set(d_mn_group(G, CoprimePair(8, 3)).members)
    for H in normal_subgroups(G):
        if H.order == 12:
            h = H.as_group
            Dh = d_mn_group(h, CoprimePair(4, 3))
            assert {H.members[i] for i in Dh.members} <= D
    assert any(H.order == 12 for H in all_subgroups(G))
