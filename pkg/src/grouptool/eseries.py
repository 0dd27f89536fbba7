"""The alternating E-series and the length-based classification."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dsub import CoprimePair, d_mn_group
from .errors import HypothesisNotMet
from .group import Group
from .series import is_nilpotent
from .subgroups import Subgroup, quotient, trivial_subgroup, whole_group

NILPOTENT = "nilpotent"
FROBENIUS = "frobenius"
TWO_FROBENIUS = "two-frobenius"
NOT_E_NILPOTENT = "not-e-nilpotent"
UNCLASSIFIED = "unclassified"

_BY_LENGTH = {2: NILPOTENT, 3: FROBENIUS, 4: TWO_FROBENIUS}


@dataclass(frozen=True, eq=False)
class ESeriesResult:
    params: CoprimePair
    terms: tuple[Subgroup, ...]
    branches: tuple[str, ...]  # branches[i] produced terms[i + 1]
    reached: bool
    length: int | None
    stabilized_at: int | None

    @property
    def orders(self) -> list[int]:
        return [T.order for T in self.terms]

    @property
    def classification(self) -> str:
        if not self.reached:
            return NOT_E_NILPOTENT
        return _BY_LENGTH.get(self.length, UNCLASSIFIED)

    def term(self, k: int) -> Subgroup:
        """``E_k``, also past the last computed index once the series is constant."""
        if k < len(self.terms):
            return self.terms[k]
        if self.stabilized_at is None:
            raise IndexError(f"E_{k} was not computed")
        return self.terms[-1]

    def branch(self, k: int) -> str:
        """How ``E_k`` was obtained from ``E_{k-1}``: ``nilpotent`` or ``D_{a,b}``."""
        if k - 1 < len(self.branches):
            return self.branches[k - 1]
        if self.stabilized_at is None:
            raise IndexError(f"step {k} was not computed")
        return "nilpotent" if self.reached else self._operator(k)

    def _operator(self, k: int) -> str:
        a, b = (self.params.m, self.params.n) if k % 2 else (self.params.n, self.params.m)
        return f"D_{{{a},{b}}}"


def _step(G: Group, E: Subgroup, pair: CoprimePair) -> tuple[Subgroup, str]:
    Q, qmap = quotient(G, E)
    if is_nilpotent(Q):
        return whole_group(G), "nilpotent"
    D = d_mn_group(Q, pair)
    return qmap.preimage(D.members), f"D_{{{pair.m},{pair.n}}}"


def compute_e_series(G: Group, pair: CoprimePair, max_steps: int = 8) -> ESeriesResult:
    """Odd steps apply ``D_{m,n}`` and even steps ``D_{n,m}`` to ``G/E_{k-1}``.

    A nilpotent quotient makes the step jump to ``G``.  The run stops when
    ``G`` is reached, when two consecutive steps add nothing (both operators
    are then trivial on the same quotient, so the series is constant), or
    after ``max_steps`` steps.
    """
    terms = [trivial_subgroup(G)]
    branches: list[str] = []
    stabilized_at = None
    for k in range(1, max_steps + 1):
        op = pair if k % 2 else pair.swapped()
        nxt, how = _step(G, terms[-1], op)
        terms.append(nxt)
        branches.append(how)
        if nxt.is_whole:
            stabilized_at = k
            break
        if k >= 2 and terms[k] == terms[k - 1] == terms[k - 2]:
            stabilized_at = k - 2
            break
    reached = terms[-1].is_whole
    length = next(i for i, T in enumerate(terms) if T.is_whole) + 1 if reached else None
    return ESeriesResult(pair, tuple(terms), tuple(branches), reached, length, stabilized_at)


def classify(G: Group, pair: CoprimePair) -> str:
    return compute_e_series(G, pair).classification


def stabilization_check(G: Group, pair: CoprimePair, series: ESeriesResult | None = None) -> bool:
    """Whether ``E_3 = E_4`` for a group of order ``mn`` whose steps 2 to 4 use the operators.

    Raises :class:`HypothesisNotMet` when the order or parameters are off,
    when ``G`` is nilpotent, or when one of steps 2 to 4 jumps to ``G`` via a
    nilpotent quotient (unless ``E_3 = G`` already, which settles it).
    """
    if G.order != pair.m * pair.n:
        raise HypothesisNotMet("|G| != mn")
    if pair.m == 1 or pair.n == 1:
        raise HypothesisNotMet("m = 1 or n = 1")
    if is_nilpotent(G):
        raise HypothesisNotMet("G is nilpotent")
    s = series if series is not None else compute_e_series(G, pair)
    if s.term(3).is_whole:
        return True
    for k in (2, 3, 4):
        if s.branch(k) == "nilpotent":
            raise HypothesisNotMet(f"step {k} uses a nilpotent quotient")
    return s.term(3) == s.term(4)


def coprime_factorizations(order: int) -> list[CoprimePair]:
    """Every ``(m, n)`` with ``mn = order``, ``gcd(m, n) = 1`` and ``m, n > 1``."""
    out = []
    for m in range(2, order):
        n, r = divmod(order, m)
        if r == 0 and n > 1 and math.gcd(m, n) == 1:
            out.append(CoprimePair(m, n))
    return out
