"""Maximal biclique enumeration in bipartite graphs."""
from .branch import Branch, TerminalKind, Tier
from .enumerator import EnumConfig, EnumStats, IeMode, collect, enumerate_bicliques, verify_result
from .graph import (
    BipartiteGraph,
    Side,
    SizeConstraints,
    VertexRef,
    gen_crown,
    gen_random_2biplex,
    gen_random_bipartite,
    load_konect,
    normalize_sides,
)
from .oracle import compare, oracle_enumerate
from .results import Biclique

__all__ = [
    "Biclique",
    "BipartiteGraph",
    "Branch",
    "EnumConfig",
    "EnumStats",
    "IeMode",
    "Side",
    "SizeConstraints",
    "TerminalKind",
    "Tier",
    "VertexRef",
    "collect",
    "compare",
    "enumerate_bicliques",
    "gen_crown",
    "gen_random_2biplex",
    "gen_random_bipartite",
    "load_konect",
    "normalize_sides",
    "oracle_enumerate",
    "verify_result",
]
