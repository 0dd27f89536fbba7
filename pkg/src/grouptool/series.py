"""Upper central, derived and Fitting series."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .group import Group
from .subgroups import (
    Subgroup,
    _close_mask,
    fitting,
    quotient,
    trivial_subgroup,
    whole_group,
)


@dataclass(frozen=True, eq=False)
class SeriesResult:
    kind: str  # "upper-central" | "derived" | "fitting"
    terms: tuple[Subgroup, ...]
    reached_whole_group: bool

    @property
    def orders(self) -> list[int]:
        return [T.order for T in self.terms]


def upper_central_series(G: Group) -> SeriesResult:
    """``1 = Z_0 < Z_1 < ...`` until the series stops growing."""
    comm = G.commutators
    Z = trivial_subgroup(G)
    terms = [Z]
    while True:
        nxt = Z.mask[comm].all(axis=1)
        if nxt.sum() == Z.order:
            break
        Z = Subgroup.from_mask(G, nxt)
        terms.append(Z)
    return SeriesResult("upper-central", tuple(terms), terms[-1].is_whole)


def is_nilpotent(G: Group) -> bool:
    if G.order == 1 or G.is_abelian:
        return True
    return upper_central_series(G).reached_whole_group


def commutator_subgroup(G: Group, H: Subgroup) -> Subgroup:
    h = H.index
    mask = np.zeros(G.order, dtype=bool)
    mask[G.commutators[np.ix_(h, h)].ravel()] = True
    return Subgroup.from_mask(G, _close_mask(G, mask))


def derived_series(G: Group) -> SeriesResult:
    """Descending ``G = G^(0) > G^(1) > ...``; terms are listed from ``G`` down."""
    H = whole_group(G)
    terms = [H]
    while True:
        D = commutator_subgroup(G, H)
        if D.order == H.order:
            break
        terms.append(D)
        H = D
    return SeriesResult("derived", tuple(terms), terms[-1].is_trivial)


def is_solvable(G: Group) -> bool:
    return derived_series(G).reached_whole_group


def fitting_series(G: Group) -> SeriesResult:
    """``F_0 = 1``, ``F_i/F_{i-1} = F(G/F_{i-1})`` until it stops growing."""
    F = trivial_subgroup(G)
    terms = [F]
    while not F.is_whole:
        Q, qmap = quotient(G, F)
        nxt = qmap.preimage(fitting(Q).members)
        if nxt.order == F.order:
            break
        F = nxt
        terms.append(F)
    return SeriesResult("fitting", tuple(terms), terms[-1].is_whole)


def fitting_height(G: Group) -> int | None:
    """Least ``h >= 1`` with ``F_h = G``, or None when ``G`` is not solvable."""
    series = fitting_series(G)
    if not series.reached_whole_group:
        return None
    return max(1, len(series.terms) - 1)
