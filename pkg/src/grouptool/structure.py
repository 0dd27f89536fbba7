"""Frobenius and 2-Frobenius detection and the order-of-product laws."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
import sympy

from .dsub import CoprimePair, l_mask
from .errors import NotAPGroup, NotSemidirect, OrderMismatch
from .group import Group
from .subgroups import (
    NORMAL_SUBGROUPS_CAP,
    Subgroup,
    _close_mask,
    cyclic_subgroups,
    is_normal,
    normal_subgroups,
    quotient,
    whole_group,
)

COMPLEMENT_SEARCH_CAP = 20_000


@dataclass(frozen=True, eq=False)
class FrobeniusWitness:
    kernel: Subgroup
    complement: Subgroup | None
    fixed_point_free_checked: bool


@dataclass(frozen=True, eq=False)
class TwoFrobeniusWitness:
    K: Subgroup
    L: Subgroup
    inner: FrobeniusWitness
    outer: FrobeniusWitness


def is_frobenius_with_kernel(G: Group, K: Subgroup, within: Subgroup | None = None) -> bool:
    """Centralizer test: ``K`` normal, ``1 < K < G`` and ``C_G(k) <= K`` for ``k != 1`` in ``K``.

    ``within`` replaces ``G`` by one of its subgroups as the ambient group.
    """
    A = within if within is not None else whole_group(G)
    if not K <= A or not 1 < K.order < A.order:
        return False
    if not is_normal(G, K, within=A if within is not None else None):
        return False
    t = G.table
    outside = np.flatnonzero(A.mask & ~K.mask)
    k = np.array([x for x in K.members if x != G.identity])
    commute = t[np.ix_(outside, k)] == t[np.ix_(k, outside)].T
    return not commute.any()


def acts_fixed_point_freely(G: Group, K: Subgroup, H: Subgroup) -> bool:
    """``C_K(h) = 1`` for every ``h != 1`` in ``H``."""
    t = G.table
    h = np.array([x for x in H.members if x != G.identity])
    k = np.array([x for x in K.members if x != G.identity])
    if len(h) == 0 or len(k) == 0:
        return True
    return not (t[np.ix_(h, k)] == t[np.ix_(k, h)].T).any()


def find_complement(G: Group, K: Subgroup, within: Subgroup | None = None) -> Subgroup | None:
    """A subgroup ``H`` with ``H & K = 1`` and ``|H||K| = |ambient|``.

    Bounded search: cyclic candidates first, then joins of two cyclic
    subgroups; at most ``COMPLEMENT_SEARCH_CAP`` joins are tried.
    """
    A = within if within is not None else whole_group(G)
    target = A.order // K.order
    if target == 1:
        return Subgroup(G, [G.identity])
    orders = G.orders
    cands = [
        C
        for C in cyclic_subgroups(G)
        if C <= A and target % C.order == 0 and C.order > 1 and not (C.mask & K.mask).sum() > 1
    ]
    for C in cands:
        if C.order == target:
            return C
    tried = 0
    for C1, C2 in itertools.combinations(cands, 2):
        tried += 1
        if tried > COMPLEMENT_SEARCH_CAP:
            return None
        mask = _close_mask(G, C1.mask | C2.mask)
        if mask.sum() == target and (mask & K.mask).sum() == 1:
            return Subgroup.from_mask(G, mask)
    del orders
    return None


def _sorted_normals(G: Group, cap: int) -> list[Subgroup]:
    return sorted(normal_subgroups(G, cap=cap), key=Subgroup.sort_key)


def find_frobenius(G: Group, *, cap: int = NORMAL_SUBGROUPS_CAP) -> FrobeniusWitness | None:
    """First normal subgroup, by (order, members), that is a Frobenius kernel."""
    for K in _sorted_normals(G, cap):
        if is_frobenius_with_kernel(G, K):
            H = find_complement(G, K)
            fpf = H is not None and acts_fixed_point_freely(G, K, H)
            return FrobeniusWitness(K, H, fpf)
    return None


def find_two_frobenius(G: Group, *, cap: int = NORMAL_SUBGROUPS_CAP) -> TwoFrobeniusWitness | None:
    """Normal ``K < L`` with ``L`` Frobenius with kernel ``K`` and ``G/K`` Frobenius with kernel ``L/K``."""
    normals = _sorted_normals(G, cap)
    for K in normals:
        if K.is_trivial or K.is_whole:
            continue
        Q, qmap = quotient(G, K)
        for L in normals:
            if not (K < L) or L.is_whole:
                continue
            if not is_frobenius_with_kernel(G, K, within=L):
                continue
            LK = qmap.image_subgroup(L)
            if not is_frobenius_with_kernel(Q, LK):
                continue
            H_in = find_complement(G, K, within=L)
            inner = FrobeniusWitness(K, H_in, H_in is not None and acts_fixed_point_freely(G, K, H_in))
            outer = FrobeniusWitness(qmap.preimage(LK.members), None, False)
            return TwoFrobeniusWitness(K, L, inner, outer)
    return None


@dataclass
class OrderLawReport:
    """Outcome of checking ``o(y) | o(xy)`` and ``o(xy) = o(y)`` over ``x in K, y in H``."""

    divides_holds: bool
    divides_witness: tuple[int, int] | None
    equality_holds: bool
    equality_witness: tuple[int, int] | None
    frobenius: bool
    pairs_checked: int = field(default=0)

    @property
    def violations(self) -> list[str]:
        out = []
        if not self.divides_holds:
            out.append(f"o(y) does not divide o(xy) at {self.divides_witness}")
        if self.frobenius and not self.equality_holds:
            out.append(f"o(xy) != o(y) at {self.equality_witness}")
        return out


def semidirect_order_law_check(G: Group, K: Subgroup, H: Subgroup) -> OrderLawReport:
    if not is_normal(G, K) or (K.mask & H.mask).sum() != 1 or K.order * H.order != G.order:
        raise NotSemidirect("need K normal, K & H = 1 and |K||H| = |G|")
    o = G.orders
    k = K.index
    h = H.index
    prod = G.table[np.ix_(k, h)]
    oy = o[h][None, :]
    oxy = o[prod]
    bad_div = oxy % oy != 0
    h_nontriv = h != G.identity
    bad_eq = (oxy != oy) & h_nontriv[None, :]

    def first(bad: np.ndarray) -> tuple[int, int] | None:
        if not bad.any():
            return None
        i, j = np.argwhere(bad)[0]
        return int(k[i]), int(h[j])

    frob = is_frobenius_with_kernel(G, K) and acts_fixed_point_freely(G, K, H)
    return OrderLawReport(
        not bad_div.any(), first(bad_div), not bad_eq.any(), first(bad_eq), frob, prod.size
    )


def _prime_masks(G: Group) -> np.ndarray:
    """Bitmask of the primes dividing each element's order."""
    primes = sympy.primefactors(G.order)
    masks = np.zeros(G.order, dtype=np.int64)
    for bit, p in enumerate(primes):
        masks |= np.where(G.orders % p == 0, 1 << bit, 0)
    return masks


def fro1_condition(G: Group, pair: CoprimePair) -> bool:
    """``pi(o(xy)) <= pi(o(y))`` for all ``x in L_m`` and ``y in L_n \\ {1}``."""
    if G.order != pair.m * pair.n:
        raise OrderMismatch(f"|G| = {G.order} but mn = {pair.m * pair.n}")
    return fro1_violation(G, pair) is None


def fro1_violation(G: Group, pair: CoprimePair) -> tuple[int, int] | None:
    pm = _prime_masks(G)
    xs = np.flatnonzero(l_mask(G, pair.m))
    ln = l_mask(G, pair.n)
    ln[G.identity] = False
    ys = np.flatnonzero(ln)
    if len(ys) == 0:
        return None
    bad = (pm[G.table[np.ix_(xs, ys)]] & ~pm[ys][None, :]) != 0
    if not bad.any():
        return None
    i, j = np.argwhere(bad)[0]
    return int(xs[i]), int(ys[j])


def fro1_all_pairs_violation(G: Group) -> tuple[int, int] | None:
    """The variant quantified over all nontrivial ``x, y`` of coprime orders."""
    pm = _prime_masks(G)
    nontriv = np.flatnonzero(np.arange(G.order) != G.identity)
    o = G.orders[nontriv]
    coprime = np.gcd(o[:, None], o[None, :]) == 1
    bad = coprime & ((pm[G.table[np.ix_(nontriv, nontriv)]] & ~pm[nontriv][None, :]) != 0)
    if not bad.any():
        return None
    i, j = np.argwhere(bad)[0]
    return int(nontriv[i]), int(nontriv[j])


def cyclic_or_generalized_quaternion(P: Subgroup) -> bool:
    G = P.parent
    if P.order > 1 and len(sympy.primefactors(P.order)) != 1:
        raise NotAPGroup(f"order {P.order} is not a prime power")
    o = G.orders[P.index]
    if (o == P.order).any():
        return True
    t = P.order.bit_length() - 1
    return P.order == 1 << t and t >= 3 and int((o == 2).sum()) == 1
