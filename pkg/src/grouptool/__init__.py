"""Finite-group toolkit for the coprime-order subgroups D_m(G) and D_{m,n}(G),
Frobenius structure and the alternating E-series."""

from __future__ import annotations

from .catalog import build, standard_corpus
from .dsub import CoprimePair, d_m_group, d_mn_group, l_set
from .eseries import classify, compute_e_series, coprime_factorizations
from .group import Group, direct_product, enumerate_from_generators, from_cayley_table
from .subgroups import Subgroup

__version__ = "0.1.0"

__all__ = [
    "CoprimePair",
    "Group",
    "Subgroup",
    "build",
    "classify",
    "compute_e_series",
    "coprime_factorizations",
    "d_m_group",
    "d_mn_group",
    "direct_product",
    "enumerate_from_generators",
    "from_cayley_table",
    "l_set",
    "standard_corpus",
]
