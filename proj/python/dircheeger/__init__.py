"""Directed Cheeger inequalities: exact evaluators, reweighted spectral gaps, rounding and mixing."""

from ._core import (
    DiGraph,
    Error,
    Hypergraph,
    __version__,
    asymmetric_ratio,
    brute_force,
    cheeger_h,
    chung_laplacian,
    cut,
    expansion,
    families,
    fastest_mixing,
    gap,
    generate,
    hyper_cut,
    hyper_gap,
    hypergraph_conductance,
    load,
    mixing_time_inf,
    mixing_time_tv,
    random_walk,
    selftest,
    stationary,
)

__all__ = [
    "DiGraph",
    "Error",
    "Hypergraph",
    "__version__",
    "asymmetric_ratio",
    "brute_force",
    "cheeger_h",
    "chung_laplacian",
    "cut",
    "expansion",
    "families",
    "fastest_mixing",
    "gap",
    "generate",
    "hyper_cut",
    "hyper_gap",
    "hypergraph_conductance",
    "load",
    "mixing_time_inf",
    "mixing_time_tv",
    "random_walk",
    "selftest",
    "stationary",
]
