"""Parametric Petri nets: firing, subclasses, Karp-Miller trees and coverability."""

from .model import (
    OMEGA,
    PPN,
    Marking,
    Subclass,
    Weight,
    check_valuation,
    classify,
    dominates,
    enabled,
    fire,
    instantiate,
    omega_net,
    render_count,
    replay_sequence,
)
from .karp_miller import KMNode, KMTree, coverable, km_analyze
from .coverability import (
    NetAnswer,
    SearchOutcome,
    bounded_reach,
    cover_instance,
    enumerate_valuations,
    existential_coverable,
    search_markings,
    universal_coverable,
)

__all__ = [
    "OMEGA",
    "PPN",
    "Marking",
    "Subclass",
    "Weight",
    "check_valuation",
    "classify",
    "dominates",
    "enabled",
    "fire",
    "instantiate",
    "omega_net",
    "render_count",
    "replay_sequence",
    "KMNode",
    "KMTree",
    "coverable",
    "km_analyze",
    "NetAnswer",
    "SearchOutcome",
    "bounded_reach",
    "cover_instance",
    "enumerate_valuations",
    "existential_coverable",
    "search_markings",
    "universal_coverable",
]
