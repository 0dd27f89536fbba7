from __future__ import annotations

import numpy as np
import pytest

from grouptool import build, direct_product, enumerate_from_generators, from_cayley_table
from grouptool.catalog import parse_cycle_notation
from grouptool.errors import CapExceeded, GroupAxiomError, InvalidPermutation, NotNormal
from grouptool.series import derived_series, fitting_height, is_nilpotent, is_solvable, upper_central_series
from grouptool.subgroups import (
    Subgroup,
    all_subgroups,
    center,
    centralizer,
    cyclic_subgroup,
    fitting,
    intersection,
    is_normal,
    join,
    normal_closure,
    normal_subgroups,
    normalizer,
    quotient,
    sylow,
    trivial_subgroup,
    whole_group,
)

from oracles import TableGroup, compose, cycles_to_perm, perm_closure


def oracle(G):
    return TableGroup(G.table)


def test_generated_s3_table_matches_permutation_composition():
    G = enumerate_from_generators([(1, 2, 0), (1, 0, 2)], name="S3")
    assert G.order == 6 and G.identity == 0
    perms = []
    for lab in G.labels:
        ps = parse_cycle_notation(lab) if lab != "()" else [(0, 1, 2)]
        p = ps[0] + tuple(range(len(ps[0]), 3))
        perms.append(p)
    assert sorted(perms) == perm_closure([(1, 2, 0), (1, 0, 2)], 3)
    index = {p: i for i, p in enumerate(perms)}
    for a in range(6):
        for b in range(6):
            assert G.mul(a, b) == index[compose(perms[a], perms[b])]


def test_generation_is_deterministic():
    a = enumerate_from_generators([(1, 2, 3, 0), (1, 0, 2, 3)])
    b = enumerate_from_generators([(1, 2, 3, 0), (1, 0, 2, 3)])
    assert np.array_equal(a.table, b.table)
    assert a.labels == b.labels


def test_generation_cap_and_bad_permutation():
    with pytest.raises(CapExceeded):
        enumerate_from_generators([(1, 2, 3, 4, 0), (1, 0, 2, 3, 4)], cap=50)
    with pytest.raises(InvalidPermutation):
        enumerate_from_generators([(0, 0, 1)])


def test_element_orders_match_oracle():
    for name in ("S4", "Q16", "F20", "SL(2,3)", "D18"):
        G = build(name)
        o = oracle(G)
        assert [int(x) for x in G.orders] == [o.order(x) for x in range(G.order)], name
        assert G.exponent == np.lcm.reduce([o.order(x) for x in range(G.order)])


@pytest.mark.parametrize(
    "table,kind",
    [
        ([[0, 1], [1, 1]], "missing-inverse"),
        ([[1, 0], [0, 0]], "no-identity"),
        ([[0, 1, 2], [1, 2, 0]], "bad-shape"),
        # latin square with identity 0 that is not associative
        ([[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]], "not-associative"),
    ],
)
def test_axiom_violations(table, kind):
    with pytest.raises(GroupAxiomError) as exc:
        from_cayley_table(table)
    assert exc.value.kind == kind


def test_direct_product_ids():
    G, H = build("S3"), build("C4")
    P = direct_product(G, H)
    assert P.order == 24
    for g1 in range(6):
        for h1 in range(4):
            for g2 in (0, 3, 5):
                for h2 in (1, 2):
                    assert P.mul(g1 * 4 + h1, g2 * 4 + h2) == G.mul(g1, g2) * 4 + H.mul(h1, h2)


@pytest.mark.parametrize(
    "name,subgroups,normals",
    # counts frozen from the subset-closure / two-generator oracles
    [("S3", 6, 3), ("D8", 10, 6), ("A4", 10, 3), ("S4", 30, 4), ("F20", 14, 4), ("D10", 8, 3), ("C12", 6, 6), ("A5", 59, 2)],
)
def test_subgroup_counts(name, subgroups, normals):
    G = build(name)
    assert len(all_subgroups(G, cap=96)) == subgroups
    assert len(normal_subgroups(G)) == normals


@pytest.mark.parametrize("name", ["S3", "D8", "Q8", "V4", "C6"])
def test_subgroups_agree_with_subset_oracle(name):
    G = build(name)
    mine = {frozenset(H.members) for H in all_subgroups(G)}
    assert mine == set(oracle(G).subgroups_by_subsets())


def test_subgroups_agree_with_two_generator_oracle():
    # every subgroup of these is generated by two elements
    for name in ("S4", "F21", "S3xC3", "D8xC3"):
        G = build(name)
        mine = {frozenset(H.members) for H in all_subgroups(G, cap=96)}
        assert mine == set(oracle(G).subgroups_two_generated()), name


def test_subgroup_basics():
    G = build("S4")
    T, W = trivial_subgroup(G), whole_group(G)
    assert T.is_trivial and W.is_whole and T < W and T <= T
    H = cyclic_subgroup(G, next(x for x in G.elements if G.orders[x] == 4))
    assert H.order == 4
    assert H == Subgroup(G, reversed(H.members))
    assert hash(H) == hash(Subgroup(G, H.members))
    assert intersection(H, W) == H
    J = join(H, cyclic_subgroup(G, next(x for x in G.elements if G.orders[x] == 3)))
    assert J.is_whole
    N = normal_closure(G, H.members)
    assert N.is_whole
    assert normalizer(G, H).order == 8


def test_center_and_centralizer_match_oracle():
    for name in ("D8", "Q8", "S3xC3", "SL(2,3)", "D12"):
        G = build(name)
        o = oracle(G)
        assert set(center(G).members) == o.center()
        x = 1
        c = {g for g in range(G.order) if o.mul(g, x) == o.mul(x, g)}
        assert set(centralizer(G, [x]).members) == c


def test_quotient_is_homomorphism():
    G = build("S4")
    for N in normal_subgroups(G):
        Q, q = quotient(G, N)
        assert Q.order * N.order == G.order
        img = [q.projection[g] for g in range(G.order)]
        for a in range(G.order):
            for b in range(0, G.order, 5):
                assert img[G.mul(a, b)] == Q.mul(img[a], img[b])
        assert q.preimage([Q.identity]) == N


def test_quotient_rejects_non_normal():
    G = build("S3")
    H = cyclic_subgroup(G, next(x for x in G.elements if G.orders[x] == 2))
    assert not is_normal(G, H)
    with pytest.raises(NotNormal):
        quotient(G, H)


def test_nilpotency_matches_lower_central_oracle():
    for name in ("C12", "D8", "D12", "Q16", "S4", "A4", "S3xC3", "D8xC3", "Q8xC3", "F21", "C2", "C1"):
        G = build(name)
        assert is_nilpotent(G) == oracle(G).is_nilpotent(), name


def test_series():
    assert upper_central_series(build("D8")).orders == [1, 2, 8]
    assert derived_series(build("S4")).orders == [24, 12, 4, 1]
    assert is_solvable(build("S4")) and not is_solvable(build("A5"))
    assert fitting(build("S4")).order == 4
    assert fitting_height(build("S4")) == 3
    assert fitting_height(build("C12")) == 1
    assert fitting_height(build("A5")) is None


def test_sylow_order_and_oracle():
    for name in ("S4", "A5", "F20", "SL(2,3)"):
        G = build(name)
        o = oracle(G)
        for p, pk in o.sylow_orders().items():
            P = sylow(G, p)
            assert P.order == pk
            assert o.is_subgroup(P.members)


def test_permutation_group_from_cycles_matches_catalog_order():
    gens = [cycles_to_perm([(1, 2, 3, 4, 5)], 5), cycles_to_perm([(2, 3, 5, 4)], 5)]
    G = enumerate_from_generators(gens)
    assert G.order == 20
    assert not is_nilpotent(G)
