"""Subgroups, closures, quotients, Sylow subgroups and the Fitting subgroup."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import sympy

from .errors import CapExceeded, NotNormal
from .group import Group

ALL_SUBGROUPS_CAP = 96
NORMAL_SUBGROUPS_CAP = 512


class Subgroup:
    """A subgroup of ``parent`` given by its sorted member ids."""

    __slots__ = ("parent", "members", "_mask", "__dict__")

    def __init__(self, parent: Group, members: Iterable[int]) -> None:
        self.parent = parent
        self.members: tuple[int, ...] = tuple(sorted(int(m) for m in set(members)))
        self._mask = None

    @classmethod
    def from_mask(cls, parent: Group, mask: np.ndarray) -> Subgroup:
        sub = cls.__new__(cls)
        sub.parent = parent
        sub.members = tuple(int(i) for i in np.flatnonzero(mask))
        sub._mask = mask
        return sub

    @property
    def mask(self) -> np.ndarray:
        if self._mask is None:
            m = np.zeros(self.parent.order, dtype=bool)
            m[list(self.members)] = True
            self._mask = m
        return self._mask

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def index(self) -> np.ndarray:
        return np.fromiter(self.members, dtype=np.int64, count=len(self.members))

    @cached_property
    def key(self) -> bytes:
        return np.packbits(self.mask).tobytes()

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[x])

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __le__(self, other: Subgroup) -> bool:
        return bool(np.all(other.mask[self.index]))

    def __lt__(self, other: Subgroup) -> bool:
        return self.order < other.order and self <= other

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} in {self.parent.name})"

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.order, self.members)

    @cached_property
    def as_group(self) -> Group:
        """The subgroup as a group in its own right (ids re-indexed 0..|H|-1).

        Member ``i`` of the new group is parent element ``members[i]``.
        """
        G = self.parent
        idx = self.index
        pos = np.full(G.order, -1, dtype=np.int64)
        pos[idx] = np.arange(len(idx))
        table = pos[G.table[np.ix_(idx, idx)]]
        return Group(
            table,
            identity=int(pos[G.identity]),
            labels=[G.labels[i] for i in idx],
            name=f"{G.name}[{self.order}]",
            source=f"subgroup of order {self.order} in {G.source}",
        )


def trivial_subgroup(G: Group) -> Subgroup:
    return Subgroup(G, [G.identity])


def whole_group(G: Group) -> Subgroup:
    return Subgroup.from_mask(G, np.ones(G.order, dtype=bool))


def _close_mask(G: Group, mask: np.ndarray) -> np.ndarray:
    """Smallest subgroup containing the elements flagged in ``mask``."""
    mask = mask.copy()
    mask[G.identity] = True
    t = G.table
    gens = np.flatnonzero(mask)
    while True:
        members = np.flatnonzero(mask)
        prod = t[np.ix_(members, gens)].ravel()
        new = ~mask[prod]
        if not new.any():
            return mask
        added = np.unique(prod[new])
        mask[added] = True
        # new elements also act as generators; this keeps the number of rounds small
        gens = np.union1d(gens, added) if len(gens) < 64 else gens


def subgroup_generated(G: Group, S: Iterable[int]) -> Subgroup:
    mask = np.zeros(G.order, dtype=bool)
    mask[list(S)] = True
    return Subgroup.from_mask(G, _close_mask(G, mask))


def join(*subgroups: Subgroup) -> Subgroup:
    G = subgroups[0].parent
    mask = np.zeros(G.order, dtype=bool)
    for H in subgroups:
        mask |= H.mask
    return Subgroup.from_mask(G, _close_mask(G, mask))


def cyclic_subgroup(G: Group, x: int) -> Subgroup:
    members = [G.identity]
    y = x
    while y != G.identity:
        members.append(y)
        y = G.mul(y, x)
    return Subgroup(G, members)


def intersection(H: Subgroup, K: Subgroup) -> Subgroup:
    return Subgroup.from_mask(H.parent, H.mask & K.mask)


def is_closed(G: Group, members: Iterable[int]) -> bool:
    """True iff the (nonempty) set is closed under products and inverses."""
    idx = np.fromiter(members, dtype=np.int64)
    if len(idx) == 0:
        return False
    mask = np.zeros(G.order, dtype=bool)
    mask[idx] = True
    return bool(mask[G.table[np.ix_(idx, idx)]].all() and mask[G.inverse[idx]].all())


def centralizer(G: Group, S: Iterable[int], within: Subgroup | None = None) -> Subgroup:
    s = np.fromiter(S, dtype=np.int64)
    if len(s) == 0:
        raise ValueError("centralizer of an empty set is not defined here")
    t = G.table
    commutes = (t[:, s] == t[s, :].T).all(axis=1)
    if within is not None:
        commutes &= within.mask
    return Subgroup.from_mask(G, commutes)


def center(G: Group) -> Subgroup:
    t = G.table
    return Subgroup.from_mask(G, (t == t.T).all(axis=1))


def conjugates(G: Group, members: np.ndarray, g: int) -> np.ndarray:
    """``g^-1 h g`` for every ``h`` in ``members``."""
    t = G.table
    return t[t[G.inverse[g], members], g]


def is_normal(G: Group, H: Subgroup, within: Subgroup | None = None) -> bool:
    """Whether ``H`` is normal in ``G`` (or in the subgroup ``within``)."""
    if within is None:
        return _union_of_classes(G, H.mask)
    t = G.table
    h = H.index
    for g in within.members:
        if not H.mask[t[t[G.inverse[g], h], g]].all():
            return False
    return True


def _union_of_classes(G: Group, mask: np.ndarray) -> bool:
    for cls in G.conjugacy_classes:
        inside = mask[list(cls)]
        if inside.any() and not inside.all():
            return False
    return True


def normal_closure(G: Group, S: Iterable[int]) -> Subgroup:
    mask = np.zeros(G.order, dtype=bool)
    for x in S:
        mask[list(G.conjugacy_classes[G.class_of[x]])] = True
    return Subgroup.from_mask(G, _close_mask(G, mask))


def normalizer(G: Group, H: Subgroup) -> Subgroup:
    t = G.table
    left = t[G.inverse[:, None], H.index[None, :]]  # g^-1 h
    conj = t[left, np.arange(G.order)[:, None]]  # g^-1 h g
    return Subgroup.from_mask(G, H.mask[conj].all(axis=1))


# --- quotients ---------------------------------------------------------------


@dataclass(eq=False)
class QuotientMap:
    """Projection ``source -> target = source/kernel``."""

    source: Group
    target: Group
    projection: np.ndarray
    kernel: Subgroup
    representatives: np.ndarray = field(repr=False)

    def image(self, S: Iterable[int]) -> frozenset[int]:
        return frozenset(int(self.projection[x]) for x in S)

    def image_subgroup(self, H: Subgroup) -> Subgroup:
        return Subgroup(self.target, np.unique(self.projection[H.index]).tolist())

    def preimage(self, S: Iterable[int]) -> Subgroup:
        tmask = np.zeros(self.target.order, dtype=bool)
        tmask[list(S)] = True
        return Subgroup.from_mask(self.source, tmask[self.projection])


def quotient(G: Group, N: Subgroup) -> tuple[Group, QuotientMap]:
    if not is_normal(G, N):
        raise NotNormal(f"subgroup of order {N.order} is not normal in {G.name}")
    t = G.table
    n_idx = N.index
    coset_id = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for g in range(G.order):
        if coset_id[g] >= 0:
            continue
        coset_id[t[g, n_idx]] = len(reps)
        reps.append(g)
    reps_arr = np.array(reps, dtype=np.int64)
    qtable = coset_id[t[np.ix_(reps_arr, reps_arr)]]
    labels = [G.labels[r] + ("N" if N.order > 1 else "") for r in reps]
    Q = Group(
        qtable,
        identity=int(coset_id[G.identity]),
        labels=labels,
        name=f"{G.name}/{N.order}",
        source=f"{G.source} / normal subgroup of order {N.order}",
    )
    return Q, QuotientMap(G, Q, coset_id, N, reps_arr)


# --- enumeration -------------------------------------------------------------


def cyclic_subgroups(G: Group) -> list[Subgroup]:
    seen: dict[bytes, Subgroup] = {}
    for x in range(G.order):
        C = cyclic_subgroup(G, x)
        seen.setdefault(C.key, C)
    return sorted(seen.values(), key=Subgroup.sort_key)


def _join_closure(G: Group, atoms: list[Subgroup]) -> list[Subgroup]:
    found: dict[bytes, Subgroup] = {}
    triv = trivial_subgroup(G)
    found[triv.key] = triv
    queue = []
    for A in atoms:
        if A.key not in found:
            found[A.key] = A
            queue.append(A)
    while queue:
        H = queue.pop()
        for A in atoms:
            if A <= H:
                continue
            J = Subgroup.from_mask(G, _close_mask(G, H.mask | A.mask))
            if J.key not in found:
                found[J.key] = J
                queue.append(J)
    return sorted(found.values(), key=Subgroup.sort_key)


def all_subgroups(G: Group, cap: int = ALL_SUBGROUPS_CAP) -> list[Subgroup]:
    """Every subgroup, as joins of cyclic subgroups, ordered by (order, members)."""
    if G.order > cap:
        raise CapExceeded("all_subgroups", G.order, cap)
    return _join_closure(G, cyclic_subgroups(G))


def normal_subgroups(G: Group, cap: int = NORMAL_SUBGROUPS_CAP) -> list[Subgroup]:
    """Every normal subgroup, as joins of normal closures of single elements."""
    if G.order > cap:
        raise CapExceeded("normal_subgroups", G.order, cap)
    atoms: dict[bytes, Subgroup] = {}
    for cls in G.conjugacy_classes:
        N = normal_closure(G, [cls[0]])
        atoms.setdefault(N.key, N)
    return _join_closure(G, sorted(atoms.values(), key=Subgroup.sort_key))


# --- Sylow, p-core, Fitting --------------------------------------------------


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def prime_divisors(n: int) -> list[int]:
    return sorted(sympy.primefactors(n))


def sylow(G: Group, p: int) -> Subgroup:
    """A Sylow ``p``-subgroup grown inside successive normalizers.

    Starts from the cyclic subgroup of the smallest-id element of maximal
    ``p``-power order, then repeatedly adjoins the smallest-id ``p``-element
    of ``N_G(P)`` outside ``P``.
    """
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    target = p_part(G.order, p)
    if target == 1:
        return trivial_subgroup(G)
    orders = G.orders
    is_p_elt = p_part_mask(orders, p)
    best = max((int(o) for o in orders[is_p_elt]))
    start = int(np.flatnonzero(is_p_elt & (orders == best))[0])
    P = cyclic_subgroup(G, start)
    while P.order < target:
        N = normalizer(G, P)
        candidates = np.flatnonzero(N.mask & ~P.mask & is_p_elt)
        # a proper p-subgroup is properly contained in its normalizer's p-part
        x = int(candidates[0])
        P = join(P, cyclic_subgroup(G, x))
    return P


def p_part_mask(orders: np.ndarray, p: int) -> np.ndarray:
    o = orders.copy()
    while True:
        div = o % p == 0
        if not div.any():
            break
        o[div] //= p
    return o == 1


def p_core(G: Group, p: int) -> Subgroup:
    """``O_p(G)``: members of a Sylow subgroup whose whole class stays inside it."""
    P = sylow(G, p)
    keep = np.zeros(G.order, dtype=bool)
    for cls in G.conjugacy_classes:
        if P.mask[list(cls)].all():
            keep[list(cls)] = True
    return Subgroup.from_mask(G, keep & P.mask)


def fitting(G: Group) -> Subgroup:
    cores = [p_core(G, p) for p in prime_divisors(G.order)]
    if not cores:
        return trivial_subgroup(G)
    return join(*cores)
