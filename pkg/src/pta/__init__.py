"""Parametric timed automata: concrete runs, zone graphs, synthesis and L/U analyses."""

from .model import PTA, Edge, ParameterInterval, check_valuation, instantiate
from .concrete import ConcreteState, Run, WordsAndTrace, replay, words_and_trace
from .symbolic import PZG, SymbolicState, ZoneGraphExplorer, initial_symbolic, succ
from .synthesis import IPCheckResult, SynthesisResult, ef_synthesis, ip_check
from .reach import ReachAnalysis, concrete_reach, ec_check, normalize_zone, reach_analysis
from .lu import LUClassification, LUKind, classify_lu, extremal_instance, lu_ef_analysis, lu_ef_emptiness

__all__ = [
    "PTA",
    "Edge",
    "ParameterInterval",
    "check_valuation",
    "instantiate",
    "ConcreteState",
    "Run",
    "WordsAndTrace",
    "replay",
    "words_and_trace",
    "PZG",
    "SymbolicState",
    "ZoneGraphExplorer",
    "initial_symbolic",
    "succ",
    "IPCheckResult",
    "SynthesisResult",
    "ef_synthesis",
    "ip_check",
    "ReachAnalysis",
    "concrete_reach",
    "ec_check",
    "normalize_zone",
    "reach_analysis",
    "LUClassification",
    "LUKind",
    "classify_lu",
    "extremal_instance",
    "lu_ef_analysis",
    "lu_ef_emptiness",
]
