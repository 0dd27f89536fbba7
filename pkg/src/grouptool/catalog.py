"""Built-in groups, cycle-notation input and Cayley-table files."""

from __future__ import annotations

import math
import re
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np
import sympy

from .errors import (
    CayleyParseError,
    CycleSyntaxError,
    InvalidParams,
    RepeatedPointError,
    UnknownGroup,
)
from .group import (
    DEFAULT_ENUMERATION_CAP,
    Group,
    cycle_string,
    direct_product,
    enumerate_from_generators,
    from_cayley_table,
)

# --- cycle notation ----------------------------------------------------------


def parse_cycle_notation(text: str) -> list[tuple[int, ...]]:
    """Parse ``"(1 2 3), (1 2)"`` into 0-based image tuples.

    All permutations share the smallest degree covering every moved point.
    """
    pos = 0
    n = len(text)
    gens: list[list[list[int]]] = []

    def skip_ws() -> None:
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    skip_ws()
    if pos == n:
        return []
    while True:
        skip_ws()
        if pos >= n or text[pos] != "(":
            raise CycleSyntaxError("expected '('", pos)
        cycles: list[list[int]] = []
        seen: set[int] = set()
        while pos < n and text[pos] == "(":
            open_pos = pos
            pos += 1
            skip_ws()
            cyc: list[int] = []
            while pos < n and text[pos] != ")":
                m = re.compile(r"\d+").match(text, pos)
                if m is None:
                    raise CycleSyntaxError(f"unexpected {text[pos]!r}", pos)
                point = int(m.group())
                if point < 1:
                    raise CycleSyntaxError("points are numbered from 1", pos)
                if point in seen:
                    raise RepeatedPointError(point, pos)
                seen.add(point)
                cyc.append(point)
                pos = m.end()
                if pos < n and not (text[pos].isspace() or text[pos] == ")"):
                    raise CycleSyntaxError(f"unexpected {text[pos]!r}", pos)
                skip_ws()
            if pos >= n:
                raise CycleSyntaxError("unclosed '('", open_pos)
            pos += 1
            if cyc:
                cycles.append(cyc)
            skip_ws()
        gens.append(cycles)
        if pos == n:
            break
        if text[pos] != ",":
            raise CycleSyntaxError(f"unexpected {text[pos]!r}", pos)
        pos += 1

    degree = max((p for cycles in gens for c in cycles for p in c), default=1)
    perms = []
    for cycles in gens:
        img = list(range(degree))
        for c in cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                img[a - 1] = b - 1
        perms.append(tuple(img))
    return perms


def print_cycle_notation(perms: Sequence[Sequence[int]]) -> str:
    return ", ".join(cycle_string(p) for p in perms)


# --- Cayley CSV ----------------------------------------------------------------


def load_cayley_csv(path: str | Path, *, name: str = "") -> Group:
    """Read a header-less CSV Cayley table (row ``i`` column ``j`` holds ``i*j``)."""
    text = Path(path).read_text(encoding="utf-8")
    lines = text.replace("\r\n", "\n").split("\n")
    while lines and lines[-1].strip() == "":
        lines.pop()
    if not lines:
        raise CayleyParseError("empty table", 0)
    rows = []
    for i, line in enumerate(lines):
        try:
            row = [int(tok) for tok in line.split(",")]
        except ValueError:
            raise CayleyParseError(f"non-integer entry in {line!r}", i) from None
        if rows and len(row) != len(rows[0]):
            raise CayleyParseError(f"expected {len(rows[0])} entries, got {len(row)}", i)
        rows.append(row)
    if len(rows) != len(rows[0]):
        raise CayleyParseError(f"{len(rows)} rows but {len(rows[0])} columns", len(rows) - 1)
    return from_cayley_table(rows, name=name or Path(path).stem, source=f"cayley:{path}")


# --- recipes -------------------------------------------------------------------


def cyclic(n: int) -> Group:
    if n < 1:
        raise InvalidParams("cyclic(n) needs n >= 1")
    i = np.arange(n)
    labels = ["1"] + ["a" if k == 1 else f"a^{k}" for k in range(1, n)]
    return from_cayley_table((i[:, None] + i[None, :]) % n, labels=labels, name=f"C{n}", source=f"cyclic({n})")


def dihedral(order: int) -> Group:
    """Symmetries of a regular ``order/2``-gon; element ``r^i s^j`` has id ``i + n*j``."""
    if order < 2 or order % 2:
        raise InvalidParams(f"dihedral order must be even and >= 2, got {order}")
    n = order // 2
    i = np.arange(n)
    a = np.repeat([0, 1], n)
    r = np.tile(i, 2)
    sign = np.where(a == 1, -1, 1)
    rot = (r[:, None] + sign[:, None] * r[None, :]) % n
    refl = (a[:, None] + a[None, :]) % 2
    table = rot + n * refl
    labels = [_word(("r", k), ("s", j)) for j in range(2) for k in range(n)]
    return from_cayley_table(table, labels=labels, name=f"D{order}", source=f"dihedral({order})")


def generalized_quaternion(order: int) -> Group:
    t = order.bit_length() - 1
    if order != 1 << t or t < 3:
        raise InvalidParams(f"generalized quaternion order must be 2^t with t >= 3, got {order}")
    n = order // 2
    i = np.arange(n)
    j = np.repeat([0, 1], n)
    e = np.tile(i, 2)
    sign = np.where(j == 1, -1, 1)
    both = (j[:, None] == 1) & (j[None, :] == 1)
    expo = (e[:, None] + sign[:, None] * e[None, :] + both * (n // 2)) % n
    table = expo + n * ((j[:, None] + j[None, :]) % 2)
    labels = [_word(("a", k), ("b", jj)) for jj in range(2) for k in range(n)]
    return from_cayley_table(table, labels=labels, name=f"Q{order}", source=f"generalized_quaternion({order})")


def symmetric(k: int) -> Group:
    if not 1 <= k <= 6:
        raise InvalidParams(f"symmetric(k) supports 1 <= k <= 6, got {k}")
    gens = [] if k == 1 else [tuple(list(range(1, k)) + [0]), (1, 0) + tuple(range(2, k))]
    return enumerate_from_generators(gens, name=f"S{k}", source=f"symmetric({k})")


def alternating(k: int) -> Group:
    if not 1 <= k <= 6:
        raise InvalidParams(f"alternating(k) supports 1 <= k <= 6, got {k}")
    if k < 3:
        gens = []
    else:
        three = (1, 2, 0) + tuple(range(3, k))
        if k % 2:
            long = tuple(list(range(1, k)) + [0])
        else:
            long = (0,) + tuple(list(range(2, k)) + [1])
        gens = [three, long]
    return enumerate_from_generators(gens, name=f"A{k}", source=f"alternating({k})")


def klein() -> Group:
    G = direct_product(cyclic(2), cyclic(2), name="V4")
    return G


def frobenius_metacyclic(p: int, q: int) -> Group:
    """Affine maps ``x -> u*x + b`` on ``Z_p`` with ``u`` of multiplicative order ``q``."""
    if not sympy.isprime(p):
        raise InvalidParams(f"{p} is not prime")
    if q < 1 or (p - 1) % q:
        raise InvalidParams(f"q={q} does not divide p-1={p - 1}")
    root = int(sympy.primitive_root(p))
    u0 = pow(root, (p - 1) // q, p)
    units = [pow(u0, k, p) for k in range(q)]
    # element (k, b) is x -> u0^k x + b, id k*p + b; product applies the left factor first
    k = np.repeat(np.arange(q), p)
    b = np.tile(np.arange(p), q)
    uk = np.array(units)[k]
    new_k = (k[:, None] + k[None, :]) % q
    new_b = (uk[None, :] * b[:, None] + b[None, :]) % p
    table = new_k * p + new_b
    labels = [_affine_label(units[kk], bb) for kk in range(q) for bb in range(p)]
    return from_cayley_table(
        table, labels=labels, name=f"F{p * q}", source=f"frobenius_metacyclic({p},{q})"
    )


def _affine_label(u: int, b: int) -> str:
    if u == 1 and b == 0:
        return "x"
    return f"{u}x+{b}" if b else f"{u}x"


def _word(*parts: tuple[str, int]) -> str:
    out = []
    for sym, k in parts:
        if k == 1:
            out.append(sym)
        elif k > 1:
            out.append(f"{sym}^{k}")
    return "".join(out) or "1"


def _vectors(p: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(p) for b in range(p)]


def _linear_perm(mat: tuple[tuple[int, int], tuple[int, int]], points: list[tuple[int, int]], p: int) -> tuple[int, ...]:
    where = {v: i for i, v in enumerate(points)}
    (a, b), (c, d) = mat
    return tuple(where[((a * x + b * y) % p, (c * x + d * y) % p)] for x, y in points)


def special_linear_2_3() -> Group:
    """SL(2,3) acting on the eight nonzero vectors of ``F_3^2``."""
    pts = [v for v in _vectors(3) if v != (0, 0)]
    gens = [_linear_perm(((1, 1), (0, 1)), pts, 3), _linear_perm(((1, 0), (1, 1)), pts, 3)]
    return enumerate_from_generators(gens, name="SL(2,3)", source=print_cycle_notation(gens))


def affine_quaternion_9() -> Group:
    """``F_3^2`` extended by the quaternion subgroup of SL(2,3); Frobenius of order 72."""
    pts = _vectors(3)
    translate = tuple(pts.index(((x + 1) % 3, y)) for x, y in pts)
    i_mat = ((0, 2), (1, 0))
    j_mat = ((1, 1), (1, 2))
    gens = [translate, _linear_perm(i_mat, pts, 3), _linear_perm(j_mat, pts, 3)]
    return enumerate_from_generators(gens, name="3^2:Q8", source=print_cycle_notation(gens))


def affine_line_8() -> Group:
    """``x -> a*x + b`` over ``F_8``; Frobenius of order 56 with kernel ``C2^3``."""

    def times_x(v: int) -> int:
        v <<= 1
        return v ^ 0b1011 if v & 0b1000 else v

    gens = [tuple(v ^ 1 for v in range(8)), tuple(times_x(v) for v in range(8))]
    return enumerate_from_generators(gens, name="2^3:7", source=print_cycle_notation(gens))


SPECIAL: dict[str, tuple[Callable[[], Group], int]] = {
    "V4": (klein, 4),
    "SL(2,3)": (special_linear_2_3, 24),
    "3^2:Q8": (affine_quaternion_9, 72),
    "2^3:7": (affine_line_8, 56),
}

FAMILIES: dict[str, Callable[..., Group]] = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "symmetric": symmetric,
    "alternating": alternating,
    "generalized_quaternion": generalized_quaternion,
    "klein": klein,
    "frobenius_metacyclic": frobenius_metacyclic,
}

_NAME = re.compile(r"^([CDSAQF])(\d+)$")


def _split_product(name: str) -> list[str]:
    return [part for part in re.split(r"x", name) if part]


def expected_order(name: str) -> int:
    parts = _split_product(name)
    if len(parts) > 1:
        return math.prod(expected_order(p) for p in parts)
    if name in SPECIAL:
        return SPECIAL[name][1]
    m = _NAME.match(name)
    if m is None:
        raise UnknownGroup(f"unknown group name {name!r}")
    fam, k = m.group(1), int(m.group(2))
    return {"C": k, "D": k, "Q": k, "F": k, "S": math.factorial(k), "A": max(1, math.factorial(k) // 2)}[fam]


def _metacyclic_params(order: int) -> tuple[int, int]:
    if order < 2:
        raise InvalidParams(f"F{order} is not a Frobenius metacyclic group")
    p = max(sympy.primefactors(order))
    q = order // p
    if q < 2 or (p - 1) % q or order % (p * p) == 0:
        raise InvalidParams(f"F{order}: need order p*q with q | p-1")
    return p, q


def _build_single(name: str) -> Group:
    if name in SPECIAL:
        return SPECIAL[name][0]()
    m = _NAME.match(name)
    if m is None:
        raise UnknownGroup(f"unknown group name {name!r}")
    fam, k = m.group(1), int(m.group(2))
    if fam == "C":
        return cyclic(k)
    if fam == "D":
        return dihedral(k)
    if fam == "Q":
        return generalized_quaternion(k)
    if fam == "S":
        return symmetric(k)
    if fam == "A":
        return alternating(k)
    return frobenius_metacyclic(*_metacyclic_params(k))


@lru_cache(maxsize=None)
def _build_named(name: str, cap: int) -> Group:
    parts = _split_product(name)
    if not parts:
        raise UnknownGroup(f"unknown group name {name!r}")
    G = _build_single(parts[0])
    for part in parts[1:]:
        G = direct_product(G, _build_single(part), cap=cap)
    if len(parts) > 1:
        G.name = name
    return G


def build(name: str, params: Sequence[int] = (), *, cap: int = DEFAULT_ENUMERATION_CAP) -> Group:
    """Construct a catalog group by key (``"S4"``, ``"F20"``, ``"S3xS3"``) or by
    family name with integer parameters (``build("frobenius_metacyclic", [5, 4])``).

    Keyed groups are cached, so repeated builds return the same object.
    """
    if name in FAMILIES:
        try:
            return FAMILIES[name](*params)
        except TypeError as exc:
            raise InvalidParams(f"{name}{tuple(params)}: {exc}") from None
    if params:
        raise InvalidParams(f"{name!r} takes no parameters")
    if expected_order(name) > cap:
        from .errors import CapExceeded

        raise CapExceeded(name, expected_order(name), cap)
    return _build_named(name, cap)


# --- corpus --------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    expected_order: int
    recipe: str = field(default="", compare=False)

    def build(self) -> Group:
        return build(self.name)


PRODUCTS = (
    "S3xC3",
    "S3xC4",
    "S3xC5",
    "A4xC2",
    "A4xC3",
    "Q8xC3",
    "D8xC3",
    "S3xS3",
    "F21xC2",
    "F20xC3",
    "S3xD10",
    "S4xC2",
    "S4xC3",
    "S3xA4",
    "A5xC2",
    "A4xA4",
    "A5xC3",
)


def _builtin_names(max_order: int) -> list[str]:
    names = [f"C{n}" for n in range(1, max_order + 1)]
    names.append("V4")
    names += [f"S{k}" for k in range(3, 7)]
    names += [f"A{k}" for k in range(4, 7)]
    names += [f"D{2 * n}" for n in range(4, max_order // 2 + 1)]
    names += [f"Q{1 << t}" for t in range(3, max(3, max_order.bit_length()) + 1)]
    for p in sympy.primerange(3, max_order + 1):
        for q in sympy.divisors(p - 1):
            if q >= 3:
                names.append(f"F{p * q}")
    names += ["SL(2,3)", "3^2:Q8", "2^3:7"]
    names += list(PRODUCTS)
    return names


def standard_corpus(max_order: int = 200) -> list[CatalogEntry]:
    """Name-unique built-in entries of order at most ``max_order``, sorted by (order, name).

    Isomorphic aliases (D6 = S3, D4 = V4, F(p,2) = D2p, A3 = C3) are left out.
    """
    if max_order < 1:
        raise InvalidParams("max_order must be >= 1")
    entries = {}
    for name in _builtin_names(max_order):
        order = expected_order(name)
        if order <= max_order:
            entries[name] = CatalogEntry(name, order, _recipe(name))
    return sorted(entries.values(), key=lambda e: (e.expected_order, e.name))


def _recipe(name: str) -> str:
    parts = _split_product(name)
    if len(parts) > 1:
        return " x ".join(_recipe(p) for p in parts)
    if name in SPECIAL:
        return name
    m = _NAME.match(name)
    fam, k = m.group(1), int(m.group(2))
    if fam == "F":
        p, q = _metacyclic_params(k)
        return f"frobenius_metacyclic({p},{q})"
    return {
        "C": "cyclic",
        "D": "dihedral",
        "Q": "generalized_quaternion",
        "S": "symmetric",
        "A": "alternating",
    }[fam] + f"({k})"
