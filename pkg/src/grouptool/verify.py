"""Property suites that check the D-operator, Frobenius and E-series theorems
over a corpus of catalog groups.

Each suite has a stable id, a one-line mathematical claim, a scope generator
producing :class:`Instance` values and a check returning a :class:`Verdict`.
Instances whose group exceeds the suite's order cap, or whose hypotheses do
not hold, are skipped with the reason named.  Failures carry a JSON-ready
witness (element and subgroup ids) and can be re-run one at a time with
:func:`replay`.
"""

from __future__ import annotations

import math
import time
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np
import sympy

from .catalog import CatalogEntry, _split_product, build, expected_order
from .dsub import CoprimePair, DResult, d_m_group, d_mn_group, l_mask
from .errors import CapExceeded, HypothesisNotMet, InternalInconsistency, UnknownSuite
from .eseries import ESeriesResult, compute_e_series, coprime_factorizations, stabilization_check
from .group import Group
from .series import derived_series, fitting_height, is_nilpotent, is_solvable
from .structure import (
    acts_fixed_point_freely,
    cyclic_or_generalized_quaternion,
    find_complement,
    find_frobenius,
    find_two_frobenius,
    fro1_all_pairs_violation,
    fro1_violation,
    is_frobenius_with_kernel,
    semidirect_order_law_check,
)
from .subgroups import (
    Subgroup,
    all_subgroups,
    center,
    cyclic_subgroup,
    fitting,
    is_normal,
    join,
    normal_subgroups,
    quotient,
    sylow,
)

PRODUCT_FACTOR_MAX = 12


@dataclass(frozen=True)
class Caps:
    max_order: int = 200
    subgroup_cap: int = 48
    oracle_cap: int = 96

    def limit(self, kind: str) -> int:
        return {"max_order": self.max_order, "subgroup": self.subgroup_cap, "oracle": self.oracle_cap}[kind]


@dataclass(frozen=True)
class Instance:
    group: str
    m: int | None = None
    n: int | None = None
    detail: str = ""

    @property
    def pair(self) -> CoprimePair:
        return CoprimePair(self.m, self.n if self.n is not None else 1)

    def to_dict(self) -> dict:
        params = None if self.m is None else {"m": self.m, "n": self.n}
        return {"group": self.group, "params": params, "detail": self.detail}


@dataclass(frozen=True)
class Verdict:
    status: str  # pass | fail | skip
    witness: dict | None = None
    reason: str | None = None


PASS = Verdict("pass")


def fail(**witness) -> Verdict:
    return Verdict("fail", witness=witness)


def skip(reason: str) -> Verdict:
    return Verdict("skip", reason=reason)


@dataclass(frozen=True)
class Outcome:
    instance: Instance
    verdict: Verdict

    @property
    def status(self) -> str:
        return self.verdict.status

    def to_dict(self) -> dict:
        d = self.instance.to_dict()
        d["status"] = self.verdict.status
        if self.verdict.witness is not None:
            d["witness"] = self.verdict.witness
        if self.verdict.reason is not None:
            d["reason"] = self.verdict.reason
        return d


@dataclass
class SuiteReport:
    suite_id: str
    claim: str
    informational: bool
    outcomes: list[Outcome]
    elapsed: float = field(default=0.0, compare=False)

    @property
    def scope(self) -> list[Instance]:
        return [o.instance for o in self.outcomes]

    def count(self, status: str) -> int:
        return sum(o.status == status for o in self.outcomes)

    @property
    def failures(self) -> list[Outcome]:
        return [o for o in self.outcomes if o.status == "fail"]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        # elapsed is left out so that repeated runs serialize identically
        return {
            "suite_id": self.suite_id,
            "claim": self.claim,
            "informational": self.informational,
            "counts": {s: self.count(s) for s in ("pass", "fail", "skip")},
            "outcomes": [o.to_dict() for o in self.outcomes],
        }


class Context:
    """Per-run memo of groups and derived objects, keyed by object identity."""

    def __init__(self, caps: Caps) -> None:
        self.caps = caps
        self._memo: dict = {}

    def memo(self, key, fn):
        try:
            return self._memo[key]
        except KeyError:
            value = self._memo[key] = fn()
            return value

    def group(self, name: str) -> Group:
        return self.memo(("group", name), lambda: build(name))

    def dm(self, G: Group, m: int) -> DResult:
        return self.memo(("dm", G, m), lambda: d_m_group(G, m, check=False))

    def dmn(self, G: Group, m: int, n: int) -> DResult:
        return self.memo(("dmn", G, m, n), lambda: d_mn_group(G, CoprimePair(m, n), check=False))

    def dmn_subgroup(self, G: Group, m: int, n: int) -> Subgroup:
        res = self.dmn(G, m, n)
        if not res.is_subgroup:
            raise_inconsistent(f"D_{{{m},{n}}} is not closed under multiplication")
        return Subgroup(G, res.members)

    def normals(self, G: Group) -> list[Subgroup]:
        return self.memo(("normals", G), lambda: normal_subgroups(G))

    def subgroups(self, G: Group, cap: int) -> list[Subgroup]:
        return self.memo(("subgroups", G), lambda: all_subgroups(G, cap=cap))

    def quotient(self, G: Group, N: Subgroup):
        return self.memo(("quotient", G, N.key), lambda: quotient(G, N))

    def nilpotent(self, G: Group) -> bool:
        return self.memo(("nilpotent", G), lambda: is_nilpotent(G))

    def eseries(self, G: Group, m: int, n: int) -> ESeriesResult:
        return self.memo(("eseries", G, m, n), lambda: compute_e_series(G, CoprimePair(m, n)))

    def frobenius(self, G: Group):
        return self.memo(("frobenius", G), lambda: find_frobenius(G))

    def two_frobenius(self, G: Group):
        return self.memo(("two-frobenius", G), lambda: find_two_frobenius(G))

    def central_quotient(self, M: Subgroup) -> Group:
        def make() -> Group:
            Mg = M.as_group
            return quotient(Mg, center(Mg))[0]

        return self.memo(("mz", M), make)


def raise_inconsistent(msg: str) -> None:
    raise InternalInconsistency(msg)


Scope = Callable[[Context, Sequence[CatalogEntry]], list[Instance]]
Check = Callable[[Context, Instance], Verdict]


@dataclass(frozen=True)
class Suite:
    suite_id: str
    claim: str
    scope: Scope
    check: Check
    cap: str = "max_order"
    informational: bool = False

    def describe(self) -> dict:
        return {
            "suite_id": self.suite_id,
            "claim": self.claim,
            "cap": self.cap,
            "informational": self.informational,
        }


SUITES: dict[str, Suite] = {}


def suite(suite_id: str, claim: str, scope: Scope, *, cap: str = "max_order", informational: bool = False):
    def register(check: Check) -> Check:
        SUITES[suite_id] = Suite(suite_id, claim, scope, check, cap, informational)
        return check

    return register


# --- scopes ------------------------------------------------------------------


def per_factorization(ctx: Context, corpus: Sequence[CatalogEntry]) -> list[Instance]:
    return [
        Instance(e.name, p.m, p.n)
        for e in corpus
        for p in coprime_factorizations(e.expected_order)
    ]


def per_group(ctx: Context, corpus: Sequence[CatalogEntry]) -> list[Instance]:
    return [Instance(e.name) for e in corpus]


def per_divisor(ctx: Context, corpus: Sequence[CatalogEntry]) -> list[Instance]:
    return [Instance(e.name, int(m)) for e in corpus for m in sympy.divisors(e.expected_order)]


def named(*pairs: tuple[str, int, int]) -> Scope:
    def scope(ctx: Context, corpus: Sequence[CatalogEntry]) -> list[Instance]:
        present = {e.name for e in corpus}
        return [Instance(g, m, n) for g, m, n in pairs if g in present]

    return scope


def product_pairs(ctx: Context, corpus: Sequence[CatalogEntry]) -> list[Instance]:
    """Direct products ``AxB``: two-factor corpus entries plus pairs of small corpus groups."""
    names: dict[str, tuple[str, str]] = {}
    for e in corpus:
        parts = _split_product(e.name)
        if len(parts) == 2:
            names[e.name] = (parts[0], parts[1])
    small = [
        e for e in corpus if 2 <= e.expected_order <= PRODUCT_FACTOR_MAX and len(_split_product(e.name)) == 1
    ]
    for i, a in enumerate(small):
        for b in small[i:]:
            if a.expected_order * b.expected_order <= ctx.caps.max_order:
                names.setdefault(f"{a.name}x{b.name}", (a.name, b.name))
    ordered = sorted(names.items(), key=lambda kv: (expected_order(kv[0]), kv[0]))
    return [
        Instance(name, p.m, p.n, detail=f"{a},{b}")
        for name, (a, b) in ordered
        for p in coprime_factorizations(expected_order(name))
    ]


# --- helpers -----------------------------------------------------------------


def ids(xs: Iterable[int]) -> list[int]:
    return [int(x) for x in xs]


def mask_of(G: Group, members: Iterable[int]) -> np.ndarray:
    mask = np.zeros(G.order, dtype=bool)
    mask[list(members)] = True
    return mask


def first_outside(members: Iterable[int], mask: np.ndarray) -> int | None:
    for x in members:
        if not mask[x]:
            return int(x)
    return None


def require_order_mn(G: Group, inst: Instance) -> None:
    if inst.m is None or inst.n is None or G.order != inst.m * inst.n:
        raise HypothesisNotMet("|G| != mn")


def closure_witness(G: Group, members: Sequence[int]) -> dict | None:
    idx = np.array(members, dtype=np.int64)
    mask = mask_of(G, members)
    prod = G.table[np.ix_(idx, idx)]
    bad = ~mask[prod]
    if not bad.any():
        return None
    i, j = np.argwhere(bad)[0]
    return {"x": int(idx[i]), "y": int(idx[j]), "xy": int(prod[i, j])}


def is_nonabelian_simple(ctx: Context, G: Group) -> bool:
    return not G.is_abelian and len(ctx.normals(G)) == 2


# --- element orders ----------------------------------------------------------


@suite(
    "frobenius-divisibility",
    "for every divisor m of |G|, the number of solutions of x^m = 1 is a multiple of m",
    per_divisor,
)
def _frobenius_divisibility(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    size = int(l_mask(G, inst.m).sum())
    return PASS if size % inst.m == 0 else fail(m=inst.m, size=size)


# --- D-operator laws ---------------------------------------------------------


@suite(
    "lemma-2.3-i",
    "for x in L_m(G) and N normal, the image of D_m(x) lies in D_m(xN) and the image of D_{m,n}(x) in D_{m,n}(xN)",
    per_factorization,
)
def _element_images(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    m, n = inst.m, inst.n
    t, o = G.table, G.orders
    lm = np.flatnonzero(l_mask(G, m))
    ln = np.flatnonzero(l_mask(G, n))
    prod_m = t[np.ix_(lm, lm)]
    prod_n = t[np.ix_(lm, ln)]
    in_dm = m % o[prod_m] == 0
    in_dmn = n % o[prod_n] == 0
    for N in ctx.normals(G):
        Q, qmap = ctx.quotient(G, N)
        p, oq = qmap.projection, Q.orders
        for label, inside, prod, k in (("D_m", in_dm, prod_m, m), ("D_mn", in_dmn, prod_n, n)):
            bad = inside & (k % oq[p[prod]] != 0)
            if bad.any():
                i, j = np.argwhere(bad)[0]
                cols = lm if label == "D_m" else ln
                return fail(operator=label, normal_subgroup=ids(N.members), x=int(lm[i]), y=int(cols[j]))
    return PASS


@suite(
    "lemma-2.3-ii",
    "for N normal in G, D_m(G)N/N lies in D_m(G/N) and D_{m,n}(G)N/N lies in D_{m,n}(G/N)",
    per_factorization,
)
def _quotient_images(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    m, n = inst.m, inst.n
    dm, dmn = ctx.dm(G, m), ctx.dmn(G, m, n)
    for N in ctx.normals(G):
        Q, qmap = ctx.quotient(G, N)
        for label, src, tgt in (
            ("D_m", dm, ctx.dm(Q, m)),
            ("D_mn", dmn, ctx.dmn(Q, m, n)),
        ):
            tmask = mask_of(Q, tgt.members)
            x = next((x for x in src.members if not tmask[qmap.projection[x]]), None)
            if x is not None:
                return fail(operator=label, normal_subgroup=ids(N.members), x=x)
    return PASS


@suite(
    "lemma-2.3-iii",
    "D_m(A x B) = D_m(A) x D_m(B) and D_{m,n}(A x B) is contained in D_{m,n}(A) x D_{m,n}(B)",
    product_pairs,
)
def _products(ctx: Context, inst: Instance) -> Verdict:
    a_name, b_name = inst.detail.split(",")
    A, B, G = ctx.group(a_name), ctx.group(b_name), ctx.group(inst.group)
    m, n = inst.m, inst.n

    def pairs(X: DResult, Y: DResult) -> set[int]:
        return {a * B.order + b for a in X.members for b in Y.members}

    dm_prod = pairs(ctx.dm(A, m), ctx.dm(B, m))
    dm_g = set(ctx.dm(G, m).members)
    if dm_g != dm_prod:
        diff = sorted(dm_g ^ dm_prod)
        return fail(operator="D_m", symmetric_difference=diff[:8])
    dmn_prod = pairs(ctx.dmn(A, m, n), ctx.dmn(B, m, n))
    extra = sorted(set(ctx.dmn(G, m, n).members) - dmn_prod)
    if extra:
        return fail(operator="D_mn", outside_product=extra[:8])
    return PASS


@suite(
    "lemma-2.3-iv",
    "for every subgroup H, D_m(G) & H lies in D_m(H) and D_{m,n}(G) & H lies in D_{m,n}(H)",
    per_factorization,
    cap="subgroup",
)
def _subgroup_restriction(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    m, n = inst.m, inst.n
    dm = mask_of(G, ctx.dm(G, m).members)
    dmn = mask_of(G, ctx.dmn(G, m, n).members)
    for H in ctx.subgroups(G, ctx.caps.subgroup_cap):
        Hg = H.as_group
        idx = H.index
        for label, big, small in (
            ("D_m", dm, ctx.dm(Hg, m)),
            ("D_mn", dmn, ctx.dmn(Hg, m, n)),
        ):
            inside = np.zeros(G.order, dtype=bool)
            inside[idx[list(small.members)]] = True
            bad = big & H.mask & ~inside
            if bad.any():
                return fail(operator=label, subgroup=ids(H.members), x=int(np.flatnonzero(bad)[0]))
    return PASS


def _sampled_automorphisms(G: Group, name: str) -> list[tuple[str, np.ndarray]]:
    """A few cheap automorphisms: coordinate swap on ``AxA`` and power maps on abelian groups."""
    out = []
    parts = _split_product(name)
    if len(parts) == 2 and parts[0] == parts[1]:
        k = math.isqrt(G.order)
        a, b = np.divmod(np.arange(G.order), k)
        out.append(("swap", b * k + a))
    if G.is_abelian and G.order > 2:
        exp = G.exponent
        ks = [k for k in range(2, exp) if math.gcd(k, exp) == 1][:3]
        idx = np.arange(G.order)
        for k in ks:
            pw = np.full(G.order, G.identity, dtype=np.int64)
            for _ in range(k):
                pw = G.table[pw, idx]
            out.append((f"x -> x^{k}", pw))
    return out


@suite(
    "lemma-2.5-i",
    "D_m(G) and D_{m,n}(G) are invariant under conjugation and under the sampled automorphisms",
    per_factorization,
)
def _invariance(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    cls = G.class_of
    autos = _sampled_automorphisms(G, inst.group)
    for label, res in (("D_m", ctx.dm(G, inst.m)), ("D_mn", ctx.dmn(G, inst.m, inst.n))):
        mask = mask_of(G, res.members)
        hit = np.zeros(len(G.conjugacy_classes), dtype=np.int64)
        np.add.at(hit, cls[mask], 1)
        sizes = np.array([len(c) for c in G.conjugacy_classes])
        partial = np.flatnonzero((hit > 0) & (hit < sizes))
        if len(partial):
            return fail(operator=label, conjugacy_class=ids(G.conjugacy_classes[partial[0]]))
        for how, sigma in autos:
            if not np.array_equal(mask[sigma], mask):
                return fail(operator=label, automorphism=how)
    return PASS


@suite(
    "lemma-2.5-ii",
    "D_m(G) and D_{m,n}(G) are closed under multiplication, hence subgroups",
    per_factorization,
)
def _closure(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    for label, res in (("D_m", ctx.dm(G, inst.m)), ("D_mn", ctx.dmn(G, inst.m, inst.n))):
        w = closure_witness(G, res.members)
        if w is not None:
            return fail(operator=label, **w)
    return PASS


@suite(
    "lemma-2.5-iii",
    "D_{m,n}(G) is contained in D_m(G)",
    per_factorization,
)
def _containment(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    x = first_outside(ctx.dmn(G, inst.m, inst.n).members, mask_of(G, ctx.dm(G, inst.m).members))
    return PASS if x is None else fail(x=x)


@suite(
    "remark-2.6",
    "for n > 1, D_{m,n}(G) is a proper subgroup",
    per_factorization,
)
def _proper(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    if inst.n <= 1:
        return skip("n = 1")
    return PASS if ctx.dmn(G, inst.m, inst.n).order < G.order else fail(order=G.order)


@suite(
    "prop-factor-i",
    "for |G| = mn, D_{m,n}(G / D_{m,n}(G)) = 1",
    per_factorization,
)
def _factor_idempotent(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    require_order_mn(G, inst)
    D = ctx.dmn_subgroup(G, inst.m, inst.n)
    if not is_normal(G, D):
        return fail(reason="D_{m,n}(G) is not normal", members=ids(D.members))
    Q, qmap = ctx.quotient(G, D)
    DQ = ctx.dmn(Q, inst.m, inst.n)
    if DQ.order != 1:
        reps = [int(qmap.representatives[x]) for x in DQ.members]
        return fail(kernel=ids(D.members), quotient_members=ids(DQ.members), representatives=reps)
    return PASS


@suite(
    "cor-nil2",
    "for |G| = mn with n > 1, D_{m,n}(G) is a normal nilpotent subgroup",
    per_factorization,
)
def _normal_nilpotent(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    require_order_mn(G, inst)
    if inst.n <= 1:
        return skip("n = 1")
    D = ctx.dmn_subgroup(G, inst.m, inst.n)
    if not is_normal(G, D):
        return fail(reason="not normal", members=ids(D.members))
    if not is_nilpotent(D.as_group):
        return fail(reason="not nilpotent", members=ids(D.members))
    return PASS


@suite(
    "example-2.4",
    "D_3(S3) = D_{3,2}(S3) = A3, |D_3(S3 x S3)| = 9 and D_{3,2}(S3 x S3) = 1",
    named(("S3", 3, 2), ("S3xS3", 3, 2)),
)
def _example_products(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    dm, dmn = ctx.dm(G, 3), ctx.dmn(G, 3, 2)
    if inst.group == "S3":
        a3 = derived_series(G).terms[1]
        ok = dm.members == a3.members and dmn.members == a3.members
    else:
        ok = dm.order == 9 and dmn.order == 1
    return PASS if ok else fail(d_3=ids(dm.members), d_32=ids(dmn.members))


# --- Frobenius structure -----------------------------------------------------


@suite(
    "thm-nil",
    "for |G| = mn, D = D_{m,n}(G) != 1 and x in L_n(G) \\ {1}, D<x> is Frobenius with kernel D",
    per_factorization,
)
def _frobenius_cyclic_extension(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    require_order_mn(G, inst)
    D = ctx.dmn_subgroup(G, inst.m, inst.n)
    if D.is_trivial:
        return skip("D_{m,n}(G) = 1")
    seen = set()
    for x in np.flatnonzero(l_mask(G, inst.n)):
        if x == G.identity:
            continue
        C = cyclic_subgroup(G, int(x))
        if C.key in seen:
            continue
        seen.add(C.key)
        J = join(D, C)
        if not is_frobenius_with_kernel(G, D, within=J):
            return fail(x=int(x), kernel=ids(D.members), subgroup=ids(J.members))
    return PASS


@suite(
    "thm-fro1",
    "for |G| = mn: pi(o(xy)) within pi(o(y)) for all x in L_m, y in L_n \\ {1} iff G is Frobenius with kernel of order m",
    per_factorization,
)
def _fro1(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    require_order_mn(G, inst)
    v = fro1_violation(G, inst.pair)
    w = ctx.frobenius(G)
    rhs = w is not None and w.kernel.order == inst.m
    if (v is None) == rhs:
        return PASS
    return fail(
        condition=v is None,
        frobenius_kernel=None if w is None else ids(w.kernel.members),
        violating_pair=None if v is None else list(v),
    )


@suite(
    "thm-fro1-all-pairs",
    "for |G| = mn: pi(o(xy)) within pi(o(y)) for all nontrivial x, y of coprime orders iff G is Frobenius with complement of order n",
    per_factorization,
    informational=True,
)
def _fro1_all_pairs(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    require_order_mn(G, inst)
    v = fro1_all_pairs_violation(G)
    w = ctx.frobenius(G)
    rhs = w is not None and w.kernel.order == inst.m
    if (v is None) == rhs:
        return PASS
    return fail(
        condition=v is None,
        frobenius_kernel=None if w is None else ids(w.kernel.members),
        violating_pair=None if v is None else list(v),
    )


@suite(
    "lemma-2.7",
    "for G = K x| H with K normal of order m: o(y) | o(xy), with equality for y != 1 when the action is Frobenius",
    per_factorization,
)
def _order_laws(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    require_order_mn(G, inst)
    K = next((N for N in ctx.normals(G) if N.order == inst.m), None)
    if K is None:
        return skip("no normal subgroup of order m")
    H = find_complement(G, K)
    if H is None:
        return skip("no complement found by bounded search")
    rep = semidirect_order_law_check(G, K, H)
    if not rep.divides_holds:
        x, y = rep.divides_witness
        return fail(law="o(y) | o(xy)", x=x, y=y, kernel=ids(K.members), complement=ids(H.members))
    if rep.frobenius and not rep.equality_holds:
        x, y = rep.equality_witness
        return fail(law="o(xy) = o(y)", x=x, y=y, kernel=ids(K.members), complement=ids(H.members))
    return PASS


@suite(
    "prop-factor-ii",
    "for |G| = mn with D_{m,n}(G) != 1, every Sylow p-subgroup with p | n is cyclic or generalized quaternion",
    per_factorization,
)
def _sylow_shape(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    require_order_mn(G, inst)
    if ctx.dmn(G, inst.m, inst.n).order == 1:
        return skip("D_{m,n}(G) = 1")
    for p in sympy.primefactors(inst.n):
        P = sylow(G, p)
        if not cyclic_or_generalized_quaternion(P):
            return fail(p=p, sylow=ids(P.members))
    return PASS


@suite(
    "thm-frob",
    "with U/D = D_{n,m}(G/D), D = D_{m,n}(G), and V/U = D_{m,n}(G/U): D_{m,n}(G/V) = 1, "
    "U != D implies U is Frobenius with kernel D, U != V implies V is 2-Frobenius",
    per_factorization,
)
def _frob_chain(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    require_order_mn(G, inst)
    m, n = inst.m, inst.n
    D = ctx.dmn_subgroup(G, m, n)
    Q1, q1 = ctx.quotient(G, D)
    U = q1.preimage(ctx.dmn(Q1, n, m).members)
    Q2, q2 = ctx.quotient(G, U)
    V = q2.preimage(ctx.dmn(Q2, m, n).members)
    Q3, _ = ctx.quotient(G, V)
    if ctx.dmn(Q3, m, n).order != 1:
        return fail(part="a", V=ids(V.members))
    if U != D:
        w = ctx.frobenius(U.as_group)
        kernel = None if w is None else ids(U.index[list(w.kernel.members)])
        if kernel != ids(D.members):
            return fail(part="b: U Frobenius with kernel D", D=ids(D.members), U=ids(U.members), kernel=kernel)
    if U != V and ctx.two_frobenius(V.as_group) is None:
        return fail(part="b: V 2-Frobenius", D=ids(D.members), U=ids(U.members), V=ids(V.members))
    return PASS


# --- E-series ----------------------------------------------------------------


@suite(
    "thm-3.5-length2-iff-nilpotent",
    "for |G| = mn with m, n > 1, the E-series has length 2 iff G is nilpotent",
    per_factorization,
)
def _length_two(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    require_order_mn(G, inst)
    s = ctx.eseries(G, inst.m, inst.n)
    nil = ctx.nilpotent(G)
    return PASS if (s.length == 2) == nil else fail(length=s.length, nilpotent=nil, orders=s.orders)


def _length_claim(ctx: Context, G: Group, length: int) -> Verdict:
    if length > 4:
        return fail(length=length, claim="length at most 4")
    if length == 3 and ctx.frobenius(G) is None:
        return fail(length=3, claim="Frobenius")
    if length == 4 and ctx.two_frobenius(G) is None:
        return fail(length=4, claim="2-Frobenius")
    return PASS


@suite(
    "thm-r",
    "an E-series reaching G has length at most 4; length 3 gives a Frobenius group, length 4 a 2-Frobenius group",
    per_factorization,
)
def _classification(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    require_order_mn(G, inst)
    s = ctx.eseries(G, inst.m, inst.n)
    if not s.reached:
        return skip("series does not reach G")
    v = _length_claim(ctx, G, s.length)
    if v.status == "fail":
        return fail(**v.witness, orders=s.orders, branches=list(s.branches))
    return v


@suite(
    "thm-r-admits",
    "with the length of G taken as the least length over all coprime factorizations of |G|, "
    "length 3 gives a Frobenius group and length 4 a 2-Frobenius group",
    per_group,
    informational=True,
)
def _classification_min(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    lengths = {}
    for p in coprime_factorizations(G.order):
        s = ctx.eseries(G, p.m, p.n)
        if s.reached:
            lengths[str(p)] = s.length
    if not lengths:
        return skip("no coprime factorization gives a series reaching G")
    best = min(lengths.values())
    v = _length_claim(ctx, G, best)
    return v if v.status == "pass" else fail(**v.witness, lengths=lengths)


@suite(
    "thm-can",
    "for |G| = mn, m, n > 1, G not nilpotent and steps 2 to 4 given by the D-operators, E_3 = E_4",
    per_factorization,
)
def _stabilization(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    s = ctx.eseries(G, inst.m, inst.n)
    if stabilization_check(G, inst.pair, series=s):
        return PASS
    return fail(E3=ids(s.term(3).members), E4=ids(s.term(4).members), orders=s.orders)


@suite(
    "remark-3.2",
    "applying D_{m,n} twice without alternating yields no growth when D_{m,n}(G) != 1",
    per_factorization,
)
def _alternation(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    require_order_mn(G, inst)
    if ctx.nilpotent(G):
        return skip("G is nilpotent")
    D = ctx.dmn_subgroup(G, inst.m, inst.n)
    if D.is_trivial:
        return skip("D_{m,n}(G) = 1")
    Q, qmap = ctx.quotient(G, D)
    if ctx.nilpotent(Q):
        return skip("G / D_{m,n}(G) is nilpotent")
    E2 = qmap.preimage(ctx.dmn(Q, inst.m, inst.n).members)
    return PASS if E2 == D else fail(E1=ids(D.members), E2=ids(E2.members))


@suite(
    "remark-3.6",
    "a group whose E-series reaches G is solvable",
    per_factorization,
)
def _solvable(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    s = ctx.eseries(G, inst.m, inst.n)
    if not s.reached:
        return skip("series does not reach G")
    return PASS if is_solvable(G) else fail(orders=s.orders)


@suite(
    "remark-3.7",
    "for a non-abelian simple group every term of the E-series is trivial",
    per_factorization,
)
def _simple(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    if not is_nonabelian_simple(ctx, G):
        return skip("G is not non-abelian simple")
    s = ctx.eseries(G, inst.m, inst.n)
    return PASS if all(T.is_trivial for T in s.terms) else fail(orders=s.orders)


@suite(
    "cor-fitting-height",
    "a group whose E-series reaches G has Fitting height at most 4",
    per_factorization,
)
def _fitting_height(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    s = ctx.eseries(G, inst.m, inst.n)
    if not s.reached:
        return skip("series does not reach G")
    h = fitting_height(G)
    return PASS if h is not None and h <= 4 else fail(fitting_height=h, orders=s.orders)


@suite(
    "example-3.3",
    "for S3 and (m, n) = (3, 2) the E-series is 1 < A3 < S3, of length 3, classified Frobenius",
    named(("S3", 3, 2)),
)
def _example_s3(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    s = ctx.eseries(G, 3, 2)
    a3 = derived_series(G).terms[1]
    ok = (
        s.orders == [1, 3, 6]
        and s.terms[1].members == a3.members
        and s.length == 3
        and s.classification == "frobenius"
    )
    return PASS if ok else fail(orders=s.orders, length=s.length, classification=s.classification)


@suite(
    "example-3.4",
    "for S4 and (m, n) = (8, 3) the E-series is 1 < V4 < A4 < S4, of length 4, classified 2-Frobenius",
    named(("S4", 8, 3)),
)
def _example_s4(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    s = ctx.eseries(G, 8, 3)
    d = derived_series(G).terms  # S4 > A4 > V4
    ok = (
        s.orders == [1, 4, 12, 24]
        and s.terms[1].members == d[2].members
        and s.terms[2].members == d[1].members
        and s.length == 4
        and s.classification == "two-frobenius"
    )
    return PASS if ok else fail(orders=s.orders, length=s.length, classification=s.classification)


# --- nilpotency criteria -----------------------------------------------------


def _central_quotient_witness(ctx: Context, G: Group, m: int, n: int, subgroups: Iterable[Subgroup]):
    """The first subgroup ``M`` with ``D_{m,n}(M/Z(M)) != 1``, or None."""
    for M in subgroups:
        if ctx.dmn(ctx.central_quotient(M), m, n).order != 1:
            return M
    return None


@suite(
    "thm-min1",
    "for |G| = mn with n > 1: if D_{m,n}(M/Z(M)) = 1 for every subgroup M, then G is nilpotent",
    per_factorization,
    cap="subgroup",
)
def _min1(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    require_order_mn(G, inst)
    if inst.n <= 1:
        return skip("n = 1")
    subs = ctx.subgroups(G, ctx.caps.subgroup_cap)
    M = _central_quotient_witness(ctx, G, inst.m, inst.n, subs)
    if M is not None:
        return skip(f"D_{{m,n}}(M/Z(M)) != 1 for a subgroup M of order {M.order}")
    return PASS if ctx.nilpotent(G) else fail(nilpotent=False, subgroups_checked=len(subs))


@suite(
    "cor-nilpotency-criterion",
    "for |G| = mn: D_{m,n}(M/Z(M)) = 1 for every subgroup M iff G is nilpotent",
    per_factorization,
    cap="subgroup",
)
def _min_iff(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    require_order_mn(G, inst)
    M = _central_quotient_witness(ctx, G, inst.m, inst.n, ctx.subgroups(G, ctx.caps.subgroup_cap))
    nil = ctx.nilpotent(G)
    if (M is None) == nil:
        return PASS
    return fail(nilpotent=nil, subgroup=None if M is None else ids(M.members))


@suite(
    "thm-min2",
    "for |G| = mn, n > 1, D_{m,n}(G) != 1 and D_{m,n}(M/Z(M)) = 1 for every proper non-nilpotent M: "
    "G is Frobenius with kernel D_{m,n}(G)",
    per_factorization,
    cap="subgroup",
)
def _min2(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    require_order_mn(G, inst)
    if inst.n <= 1:
        return skip("n = 1")
    D = ctx.dmn_subgroup(G, inst.m, inst.n)
    if D.is_trivial:
        return skip("D_{m,n}(G) = 1")
    proper = [
        M for M in ctx.subgroups(G, ctx.caps.subgroup_cap)
        if not M.is_whole and not ctx.nilpotent(M.as_group)
    ]
    M = _central_quotient_witness(ctx, G, inst.m, inst.n, proper)
    if M is not None:
        return skip(f"D_{{m,n}}(M/Z(M)) != 1 for a proper non-nilpotent M of order {M.order}")
    return PASS if is_frobenius_with_kernel(G, D) else fail(kernel=ids(D.members))


@suite(
    "lemma-2.16",
    "for nilpotent G of order mn, D_{m,n}(G) = 1",
    per_factorization,
)
def _nilpotent_trivial(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    require_order_mn(G, inst)
    if not ctx.nilpotent(G):
        return skip("G is not nilpotent")
    D = ctx.dmn(G, inst.m, inst.n)
    return PASS if D.order == 1 else fail(members=ids(D.members))


# --- oracles -----------------------------------------------------------------


def coprime_product_violation(G: Group) -> tuple[int, int] | None:
    """A pair of coprime orders with ``o(xy) != o(x)o(y)``, or None."""
    o = G.orders
    coprime = np.gcd(o[:, None], o[None, :]) == 1
    bad = coprime & (o[G.table] != o[:, None] * o[None, :])
    if not bad.any():
        return None
    x, y = np.argwhere(bad)[0]
    return int(x), int(y)


@suite(
    "baumslag-wiegold-oracle",
    "G is nilpotent iff o(xy) = o(x)o(y) whenever gcd(o(x), o(y)) = 1",
    per_group,
)
def _bw(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    v = coprime_product_violation(G)
    nil = ctx.nilpotent(G)
    if (v is None) == nil:
        return PASS
    return fail(nilpotent=nil, pair=None if v is None else list(v))


@suite(
    "sylow-oracle",
    "the normalizer-growth Sylow p-subgroup has the full p-part order and occurs in the subgroup lattice",
    per_group,
    cap="oracle",
)
def _sylow(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    keys = {H.key for H in ctx.subgroups(G, ctx.caps.oracle_cap)}
    for p in sympy.primefactors(G.order):
        P = sylow(G, p)
        target = p ** sympy.multiplicity(p, G.order)
        if P.order != target or P.key not in keys:
            return fail(p=p, order=P.order, expected=target)
    return PASS


@suite(
    "fitting-oracle",
    "F(G) is normal and nilpotent and contains every normal nilpotent subgroup",
    per_group,
    cap="oracle",
)
def _fitting(ctx: Context, inst: Instance) -> Verdict:
    G = ctx.group(inst.group)
    F = fitting(G)
    if not is_normal(G, F) or not is_nilpotent(F.as_group):
        return fail(fitting=ids(F.members))
    for H in ctx.subgroups(G, ctx.caps.oracle_cap):
        if is_normal(G, H) and not H <= F and is_nilpotent(H.as_group):
            return fail(fitting=ids(F.members), outside=ids(H.members))
    return PASS


# --- running -----------------------------------------------------------------


def list_suites() -> list[Suite]:
    return list(SUITES.values())


def get_suite(suite_id: str) -> Suite:
    try:
        return SUITES[suite_id]
    except KeyError:
        raise UnknownSuite(f"unknown suite {suite_id!r}") from None


def evaluate(suite: Suite, inst: Instance, ctx: Context) -> Verdict:
    limit = ctx.caps.limit(suite.cap)
    order = expected_order(inst.group)
    if order > limit:
        return skip(f"cap-exceeded: |G| = {order} > {limit}")
    try:
        return suite.check(ctx, inst)
    except HypothesisNotMet as exc:
        return skip(str(exc))
    except CapExceeded as exc:
        return skip(f"cap-exceeded: {exc}")
    except Exception as exc:  # noqa: BLE001 - reported, never swallowed
        return fail(error=f"{type(exc).__name__}: {exc}")


def run_suite(
    suite_id: str,
    corpus: Sequence[CatalogEntry],
    caps: Caps = Caps(),
    ctx: Context | None = None,
) -> SuiteReport:
    s = get_suite(suite_id)
    ctx = ctx if ctx is not None else Context(caps)
    start = time.perf_counter()
    outcomes = [Outcome(inst, evaluate(s, inst, ctx)) for inst in s.scope(ctx, corpus)]
    return SuiteReport(s.suite_id, s.claim, s.informational, outcomes, time.perf_counter() - start)


def run_all(corpus: Sequence[CatalogEntry], caps: Caps = Caps()) -> list[SuiteReport]:
    ctx = Context(caps)
    return [run_suite(sid, corpus, caps, ctx) for sid in SUITES]


def replay(suite_id: str, inst: Instance, caps: Caps = Caps()) -> Outcome:
    """Re-evaluate a single instance in a fresh context."""
    return Outcome(inst, evaluate(get_suite(suite_id), inst, Context(caps)))


def overall_ok(reports: Iterable[SuiteReport]) -> bool:
    return all(r.passed for r in reports if not r.informational)
