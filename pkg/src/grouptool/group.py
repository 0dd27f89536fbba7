"""Finite groups as indexed element sets with a multiplication table.

Elements are the integers ``0 .. order-1``.  Groups of order up to
``DENSE_TABLE_CAP`` carry a dense Cayley table; larger permutation groups
keep their permutations and multiply by composition on demand.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from functools import cached_property, reduce

import numpy as np

from .errors import CapExceeded, GroupAxiomError, InvalidPermutation

DENSE_TABLE_CAP = 4096
EXHAUSTIVE_ASSOC_CAP = 512
DEFAULT_ENUMERATION_CAP = 100_000
MAX_DEGREE = 64

Perm = tuple[int, ...]


class Group:
    """A finite group on element ids ``0 .. order-1``.

    Instances are immutable once constructed; cached properties only
    memoise values derived from the multiplication rule.
    """

    def __init__(
        self,
        table: np.ndarray | None,
        *,
        identity: int,
        labels: Sequence[str] | None = None,
        name: str = "",
        source: str = "",
        perms: np.ndarray | None = None,
    ) -> None:
        if table is None and perms is None:
            raise ValueError("a group needs a table or permutations")
        self._table = None if table is None else np.ascontiguousarray(table, dtype=np.int32)
        self._perms = perms
        self.order = int(self._table.shape[0] if self._table is not None else perms.shape[0])
        self.identity = int(identity)
        self.labels: tuple[str, ...] = (
            tuple(labels) if labels is not None else tuple(str(i) for i in range(self.order))
        )
        self.name = name or f"G{self.order}"
        self.source = source or self.name
        if self._table is None:
            self._perm_index = {p.tobytes(): i for i, p in enumerate(perms)}

    def __repr__(self) -> str:
        return f"Group({self.name!r}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    @property
    def elements(self) -> range:
        return range(self.order)

    @property
    def table(self) -> np.ndarray:
        """Dense Cayley table; ``table[a, b]`` is the id of ``a*b``."""
        if self._table is None:
            raise CapExceeded("dense multiplication table", self.order, DENSE_TABLE_CAP)
        return self._table

    @property
    def has_table(self) -> bool:
        return self._table is not None

    def mul(self, a: int, b: int) -> int:
        if self._table is not None:
            return int(self._table[a, b])
        pa, pb = self._perms[a], self._perms[b]
        return self._perm_index[pb[pa].tobytes()]

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    @cached_property
    def inverse(self) -> np.ndarray:
        if self._table is not None:
            return np.argmax(self._table == self.identity, axis=1).astype(np.int32)
        inv = np.empty(self.order, dtype=np.int32)
        for i, p in enumerate(self._perms):
            q = np.empty_like(p)
            q[p] = np.arange(len(p), dtype=p.dtype)
            inv[i] = self._perm_index[q.tobytes()]
        return inv

    def power(self, a: int, k: int) -> int:
        result = self.identity
        base = a
        if k < 0:
            base, k = self.inv(a), -k
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    @cached_property
    def orders(self) -> np.ndarray:
        """Element orders, indexed by element id."""
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        if self._table is None:
            for a in range(n):
                x, t = a, 1
                while x != self.identity:
                    x, t = self.mul(x, a), t + 1
                orders[a] = t
            return orders
        idx = np.arange(n)
        cur = idx.copy()
        t = 1
        pending = np.ones(n, dtype=bool)
        while pending.any():
            hit = pending & (cur == self.identity)
            orders[hit] = t
            pending &= ~hit
            cur = self._table[cur, idx]
            t += 1
        return orders

    @cached_property
    def exponent(self) -> int:
        return int(reduce(math.lcm, (int(o) for o in np.unique(self.orders)), 1))

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return bool(np.array_equal(t, t.T))

    @cached_property
    def commutators(self) -> np.ndarray:
        """``commutators[a, b]`` is the id of ``a^-1 b^-1 a b``."""
        t = self.table
        inv = self.inverse
        left = t[inv][:, inv]  # a^-1 b^-1
        ab = t
        return t[left, ab]

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        """Classes in order of their smallest member."""
        t = self.table
        inv = self.inverse
        idx = np.arange(self.order)
        seen = np.zeros(self.order, dtype=bool)
        classes = []
        for x in range(self.order):
            if seen[x]:
                continue
            cls = np.unique(t[t[inv, x], idx])  # g^-1 x g over all g
            seen[cls] = True
            classes.append(tuple(int(c) for c in cls))
        return tuple(classes)

    @cached_property
    def class_of(self) -> np.ndarray:
        out = np.empty(self.order, dtype=np.int32)
        for i, cls in enumerate(self.conjugacy_classes):
            out[list(cls)] = i
        return out

    def label(self, a: int) -> str:
        return self.labels[a]

    def describe(self) -> dict:
        """Structure summary used in reports in place of an isomorphism type."""
        from .series import is_nilpotent

        return {
            "order": self.order,
            "abelian": self.is_abelian,
            "exponent": self.exponent,
            "nilpotent": is_nilpotent(self),
        }


def element_order(G: Group, x: int) -> int:
    return int(G.orders[x])


def exponent(G: Group) -> int:
    return G.exponent


# --- construction -----------------------------------------------------------


def check_group_axioms(table: np.ndarray, *, rng_seed: int = 0) -> int:
    """Validate ``table`` as a group and return the identity id.

    Associativity is exhaustive up to ``EXHAUSTIVE_ASSOC_CAP`` elements and
    sampled (``10 * n**2`` triples) above.
    """
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise GroupAxiomError("bad-shape", f"table shape {table.shape} is not square")
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise GroupAxiomError("bad-shape", f"entries must lie in 0..{n - 1}")
    idx = np.arange(n)
    identity = None
    for e in range(n):
        if np.array_equal(table[e], idx) and np.array_equal(table[:, e], idx):
            identity = e
            break
    if identity is None:
        raise GroupAxiomError("no-identity")

    if n <= EXHAUSTIVE_ASSOC_CAP:
        for a in range(n):
            lhs = table[table[a]]  # (a b) c, rows b, columns c
            rhs = table[a][table]  # a (b c)
            if not np.array_equal(lhs, rhs):
                b, c = np.argwhere(lhs != rhs)[0]
                raise GroupAxiomError("not-associative", f"triple ({a}, {b}, {c})")
    else:
        rng = np.random.default_rng(rng_seed)
        remaining = 10 * n * n
        while remaining:
            k = min(remaining, 1 << 20)
            a, b, c = rng.integers(0, n, size=(3, k))
            bad = table[table[a, b], c] != table[a, table[b, c]]
            if bad.any():
                j = int(np.argmax(bad))
                raise GroupAxiomError("not-associative", f"triple ({a[j]}, {b[j]}, {c[j]})")
            remaining -= k

    has_right_inv = (table == identity).any(axis=1)
    if not has_right_inv.all():
        raise GroupAxiomError("missing-inverse", f"element {int(np.argmin(has_right_inv))}")
    for axis in (0, 1):
        s = np.sort(table, axis=axis)
        expected = idx[:, None] if axis == 0 else idx[None, :]
        if not np.array_equal(s, np.broadcast_to(expected, table.shape)):
            raise GroupAxiomError("not-latin-square")
    return identity


def from_cayley_table(
    table: Sequence[Sequence[int]] | np.ndarray,
    *,
    labels: Sequence[str] | None = None,
    name: str = "",
    source: str = "",
) -> Group:
    arr = np.asarray(table)
    if arr.dtype == object or not np.issubdtype(arr.dtype, np.integer):
        raise GroupAxiomError("bad-shape", "table must be a square integer matrix")
    identity = check_group_axioms(arr)
    return Group(arr, identity=identity, labels=labels, name=name, source=source or "cayley table")


def _check_perm(p: Sequence[int]) -> None:
    if sorted(p) != list(range(len(p))):
        raise InvalidPermutation(f"{list(p)} is not a bijection of 0..{len(p) - 1}")


def cycle_string(p: Sequence[int]) -> str:
    """Disjoint-cycle form with 1-based points, ``()`` for the identity."""
    seen = [False] * len(p)
    parts = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        j = p[start]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        parts.append("(" + " ".join(str(c + 1) for c in cyc) + ")")
    return "".join(parts) or "()"


def enumerate_from_generators(
    gens: Sequence[Sequence[int]],
    *,
    cap: int = DEFAULT_ENUMERATION_CAP,
    name: str = "",
    source: str = "",
) -> Group:
    """Close ``gens`` (0-based image tuples) under composition.

    The product ``a*b`` applies ``a`` first.  Element 0 is the identity and
    ids follow breadth-first order from the generators, so construction is
    deterministic.
    """
    degree = max((len(g) for g in gens), default=1)
    degree = max(degree, 1)
    if degree > MAX_DEGREE:
        raise InvalidPermutation(f"degree {degree} exceeds {MAX_DEGREE}")
    padded = []
    for g in gens:
        _check_perm(g)
        padded.append(np.array(list(g) + list(range(len(g), degree)), dtype=np.int16))

    ident = np.arange(degree, dtype=np.int16)
    elements = [ident]
    index = {ident.tobytes(): 0}
    parent = [(-1, -1)]
    frontier = [0]
    while frontier:
        nxt = []
        for e in frontier:
            pe = elements[e]
            for gi, g in enumerate(padded):
                q = g[pe]
                key = q.tobytes()
                if key not in index:
                    if len(elements) >= cap:
                        raise CapExceeded("generated group", len(elements) + 1, cap)
                    index[key] = len(elements)
                    elements.append(q)
                    parent.append((e, gi))
                    nxt.append(index[key])
        frontier = nxt

    n = len(elements)
    perms = np.stack(elements)
    labels = [cycle_string(p.tolist()) for p in perms]
    src = source or ", ".join(cycle_string(g.tolist()) for g in padded) or "()"
    if n > DENSE_TABLE_CAP:
        return Group(None, identity=0, labels=labels, name=name, source=src, perms=perms)

    # right multiplication by each generator, then fill columns along the BFS tree
    gen_cols = np.empty((len(padded), n), dtype=np.int32)
    for gi, g in enumerate(padded):
        gen_cols[gi] = [index[g[p].tobytes()] for p in perms]
    table = np.empty((n, n), dtype=np.int32)
    table[:, 0] = np.arange(n)
    for b in range(1, n):
        p, gi = parent[b]
        table[:, b] = gen_cols[gi][table[:, p]]
    return Group(table, identity=0, labels=labels, name=name, source=src)


def direct_product(
    G: Group, H: Group, *, cap: int = DEFAULT_ENUMERATION_CAP, name: str = ""
) -> Group:
    """Componentwise product; element ``(g, h)`` has id ``g*|H| + h``."""
    n = G.order * H.order
    if n > min(cap, DENSE_TABLE_CAP):
        raise CapExceeded("direct product", n, min(cap, DENSE_TABLE_CAP))
    nh = H.order
    tg, th = G.table.astype(np.int64), H.table.astype(np.int64)
    table = (tg[:, None, :, None] * nh + th[None, :, None, :]).reshape(n, n)
    labels = [f"({a}, {b})" for a in G.labels for b in H.labels]
    return Group(
        table,
        identity=G.identity * nh + H.identity,
        labels=labels,
        name=name or f"{G.name}x{H.name}",
        source=f"{G.source} x {H.source}",
    )
