"""Körner entropy of width-2 posets and the refined linear-extension bound."""

__version__ = "0.1.0"

from .bounds import BoundReport, check_bounds, classify_special_case, edge_removal_experiment, epsilon
from .entropy import KMDecomposition, entropy_bruteforce, km_decompose, km_for_poset
from .errors import *  # noqa: F401,F403
from .exact import ExactReal, log2
from .fileformat import parse_poset, read_poset, serialize_poset
from .intervals import (
    EpochStructure,
    IntervalRep,
    analyze,
    breakpoints_and_epochs,
    build_Q,
    canonical_intervals,
    phantom_edges,
)
from .kernels import BACKEND
from .linext import count_linext
from .poset import ChainPair, Poset, chain_cover_2, incomparability_graph, kappa2, poset_from_covers, width
from .supi import greedy_sort

__all__ = [
    "BACKEND",
    "BoundReport",
    "ChainPair",
    "EpochStructure",
    "ExactReal",
    "IntervalRep",
    "KMDecomposition",
    "Poset",
    "analyze",
    "breakpoints_and_epochs",
    "build_Q",
    "canonical_intervals",
    "chain_cover_2",
    "check_bounds",
    "classify_special_case",
    "count_linext",
    "edge_removal_experiment",
    "entropy_bruteforce",
    "epsilon",
    "greedy_sort",
    "incomparability_graph",
    "kappa2",
    "km_decompose",
    "km_for_poset",
    "log2",
    "parse_poset",
    "phantom_edges",
    "poset_from_covers",
    "read_poset",
    "serialize_poset",
    "width",
]
