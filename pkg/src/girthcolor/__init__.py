"""Small graphs of given girth and chromatic number: search, construction, verification."""

from __future__ import annotations

from .bounds import AnchorSet, BoundsTable, build_bounds_table, lemma1_bound, lemma3_bound, moore_bound
from .coloring import (
    ChromaticResult,
    ColorBudget,
    Coloring,
    Decision,
    PaletteConstraint,
    Verdict,
    chromatic_number,
    decide_k_colorable,
    is_vertex_critical,
    random_colourable,
)
from .constructions import (
    BudgetExhausted,
    DroogendijkParts,
    SNotIndependent,
    droogendijk_condition_holds,
    droogendijk_construct,
    droogendijk_parts,
    explore_edge_perturbations,
    mycielski,
    search_qualifying_sets,
)
from .enumeration import GenerationConstraints, certify_all_colorable, generate
from .formats import FormatError, decode_graph6, emit_adjacency_list, encode_graph6, parse_adjacency_list
from .graph import ACYCLIC, Girth, Graph, GraphBuilder, GraphError, girth
from .lcf import LcfScheme, basic_search, even_girth_search, get_orbits, parse_lcf_table, realize

__version__ = "0.1.0"

__all__ = [
    "ACYCLIC",
    "AnchorSet",
    "BoundsTable",
    "BudgetExhausted",
    "ChromaticResult",
    "ColorBudget",
    "Coloring",
    "Decision",
    "DroogendijkParts",
    "FormatError",
    "GenerationConstraints",
    "Girth",
    "Graph",
    "GraphBuilder",
    "GraphError",
    "LcfScheme",
    "PaletteConstraint",
    "SNotIndependent",
    "Verdict",
    "basic_search",
    "build_bounds_table",
    "certify_all_colorable",
    "chromatic_number",
    "decide_k_colorable",
    "decode_graph6",
    "droogendijk_condition_holds",
    "droogendijk_construct",
    "droogendijk_parts",
    "emit_adjacency_list",
    "encode_graph6",
    "even_girth_search",
    "explore_edge_perturbations",
    "generate",
    "get_orbits",
    "girth",
    "is_vertex_critical",
    "lemma1_bound",
    "lemma3_bound",
    "moore_bound",
    "mycielski",
    "parse_adjacency_list",
    "parse_lcf_table",
    "random_colourable",
    "realize",
    "search_qualifying_sets",
]
