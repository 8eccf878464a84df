"""Centralisers, centraliser dimension and first-order checks on finite groups."""

from __future__ import annotations

from .catalog import default_catalog, resolve_group
from .centralisers import (
    CentraliserLattice,
    DimProfile,
    amalgam_over_centre_cdim,
    cdim,
    cdim_bruteforce_oracle,
    centraliser,
    centre,
    free_product_cdim,
    lattice,
    profile,
    witness_chain,
    z_indicator,
)
from .checker import CheckReport, Implementation, admits, check, check_axiom, commuting_graph, evaluate, truth_domain
from .formulas import cd_axiom, csa_axiom, ct_axiom, cycle_graph, graph_formula_open, graph_sentence, named_axiom, path_graph, us_axiom
from .groups import ElementSet, GroupTable, build_from_permutations, build_from_table, direct_product
from .syntax import parse, render

eval = evaluate  # noqa: A001

__all__ = [
    "CentraliserLattice",
    "CheckReport",
    "DimProfile",
    "ElementSet",
    "GroupTable",
    "Implementation",
    "admits",
    "amalgam_over_centre_cdim",
    "build_from_permutations",
    "build_from_table",
    "cd_axiom",
    "cdim",
    "cdim_bruteforce_oracle",
    "centraliser",
    "centre",
    "check",
    "check_axiom",
    "commuting_graph",
    "csa_axiom",
    "ct_axiom",
    "cycle_graph",
    "default_catalog",
    "direct_product",
    "evaluate",
    "free_product_cdim",
    "graph_formula_open",
    "graph_sentence",
    "lattice",
    "named_axiom",
    "parse",
    "path_graph",
    "profile",
    "render",
    "resolve_group",
    "truth_domain",
    "us_axiom",
    "witness_chain",
    "z_indicator",
]
