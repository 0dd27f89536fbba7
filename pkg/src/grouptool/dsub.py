"""The coprime-order operators ``L_m``, ``D_m`` and ``D_{m,n}``.

Everything here is computed straight from the element-order definitions by
enumerating products, never through structural shortcuts, so the theorem
suites in :mod:`grouptool.verify` check the definitions independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import sympy

from .errors import InternalInconsistency, InvalidParams, NotAnMElement
from .group import Group
from .series import is_nilpotent
from .subgroups import Subgroup, is_closed

ElementSet = frozenset


@dataclass(frozen=True, order=True)
class CoprimePair:
    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 1:
            raise InvalidParams("m and n must be positive integers")
        if math.gcd(self.m, self.n) != 1:
            raise InvalidParams("m and n must be coprime")

    @property
    def pi_m(self) -> frozenset[int]:
        return frozenset(sympy.primefactors(self.m))

    @property
    def pi_n(self) -> frozenset[int]:
        return frozenset(sympy.primefactors(self.n))

    def swapped(self) -> CoprimePair:
        return CoprimePair(self.n, self.m)

    def __str__(self) -> str:
        return f"({self.m},{self.n})"


@dataclass(frozen=True)
class DResult:
    params: CoprimePair
    kind: str  # L_m | D_m_elt | D_mn_elt | D_m_group | D_mn_group
    members: tuple[int, ...]
    is_subgroup: bool
    is_nilpotent: bool | None = None

    @property
    def order(self) -> int:
        return len(self.members)

    def as_subgroup(self, G: Group) -> Subgroup:
        if not self.is_subgroup:
            raise ValueError(f"{self.kind} result is not a subgroup")
        return Subgroup(G, self.members)


def _divides(k: int, orders: np.ndarray) -> np.ndarray:
    return k % orders == 0


def l_mask(G: Group, m: int) -> np.ndarray:
    if m < 1:
        raise InvalidParams("m must be >= 1")
    return _divides(m, G.orders)


def l_set(G: Group, m: int) -> ElementSet:
    """Elements ``x`` with ``x^m = 1``."""
    return frozenset(int(x) for x in np.flatnonzero(l_mask(G, m)))


def _require_m_element(G: Group, x: int, m: int) -> None:
    if m % int(G.orders[x]):
        raise NotAnMElement(f"element {x} has order {int(G.orders[x])}, which does not divide {m}")


def d_m_of_element(G: Group, x: int, m: int) -> ElementSet:
    """``{y in L_m : o(xy) | m}`` for an ``m``-element ``x``."""
    _require_m_element(G, x, m)
    ys = np.flatnonzero(l_mask(G, m))
    ok = _divides(m, G.orders[G.table[x, ys]])
    return frozenset(int(y) for y in ys[ok])


def d_mn_of_element(G: Group, x: int, pair: CoprimePair) -> ElementSet:
    """``{u in L_n : o(xu) | n}`` for an ``m``-element ``x``."""
    _require_m_element(G, x, pair.m)
    us = np.flatnonzero(l_mask(G, pair.n))
    ok = _divides(pair.n, G.orders[G.table[x, us]])
    return frozenset(int(u) for u in us[ok])


def d_m_mask(G: Group, m: int) -> np.ndarray:
    lm = np.flatnonzero(l_mask(G, m))
    ok = _divides(m, G.orders[G.table[np.ix_(lm, lm)]]).all(axis=1)
    mask = np.zeros(G.order, dtype=bool)
    mask[lm[ok]] = True
    return mask


def d_mn_mask(G: Group, pair: CoprimePair) -> np.ndarray:
    mask = np.zeros(G.order, dtype=bool)
    ln = l_mask(G, pair.n)
    ln[G.identity] = False
    if pair.n == 1 or not ln.any():
        mask[G.identity] = True
        return mask
    lm = np.flatnonzero(l_mask(G, pair.m))
    us = np.flatnonzero(ln)
    ok = _divides(pair.n, G.orders[G.table[np.ix_(lm, us)]]).all(axis=1)
    mask[lm[ok]] = True
    return mask


def _nilpotent_members(G: Group, members: tuple[int, ...]) -> bool:
    return is_nilpotent(Subgroup(G, members).as_group)


def d_m_group(G: Group, m: int, *, check: bool = True) -> DResult:
    """``D_m(G)``: the ``m``-elements whose product with every ``m``-element is again one.

    With ``check`` the result is verified to be a subgroup, and
    :class:`InternalInconsistency` is raised otherwise.
    """
    members = tuple(int(x) for x in np.flatnonzero(d_m_mask(G, m)))
    closed = is_closed(G, members)
    if check and not closed:
        raise InternalInconsistency(f"D_{m}({G.name}) is not closed under multiplication")
    nil = _nilpotent_members(G, members) if closed else None
    return DResult(CoprimePair(m, 1), "D_m_group", members, closed, nil)


def d_mn_group(G: Group, pair: CoprimePair, *, check: bool = True) -> DResult:
    """``D_{m,n}(G)``: ``m``-elements ``x`` with ``o(xu) | n`` for every ``n``-element ``u != 1``.

    Trivial when ``n = 1`` or ``G`` has no nontrivial ``n``-elements.  With
    ``check`` the set must be a subgroup, and when ``|G| = mn`` it must also be
    nilpotent; a failure raises :class:`InternalInconsistency`.
    """
    members = tuple(int(x) for x in np.flatnonzero(d_mn_mask(G, pair)))
    closed = is_closed(G, members)
    if check and not closed:
        raise InternalInconsistency(f"D_{pair.m},{pair.n}({G.name}) is not closed under multiplication")
    nil = _nilpotent_members(G, members) if closed else None
    if check and G.order == pair.m * pair.n and nil is False:
        raise InternalInconsistency(f"D_{pair.m},{pair.n}({G.name}) is not nilpotent")
    return DResult(pair, "D_mn_group", members, closed, nil)


def l_result(G: Group, m: int) -> DResult:
    members = tuple(sorted(l_set(G, m)))
    return DResult(CoprimePair(m, 1), "L_m", members, is_closed(G, members), None)
