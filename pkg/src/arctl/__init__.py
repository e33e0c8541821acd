"""Mixed transition systems and synthesis of action-variable valuations."""

from .model import (
    EG,
    EU,
    EX,
    MTS,
    EGInfinite,
    Formula,
    Not,
    Or,
    Prop,
    Top,
    conj,
    eventually,
    formula_problems,
    formula_variables,
)
from .valuations import ParamValuation, ValuationSet, ValuationUniverse, minimal_valuations, universe_for
from .semantics import Path, enumerate_paths, eval_fixed, satisfying_states
from .synthesis import PreStrategy, StateValFun, par_pre, synthesize

__all__ = [
    "EG",
    "EU",
    "EX",
    "MTS",
    "EGInfinite",
    "Formula",
    "Not",
    "Or",
    "Prop",
    "Top",
    "conj",
    "eventually",
    "formula_problems",
    "formula_variables",
    "ParamValuation",
    "ValuationSet",
    "ValuationUniverse",
    "minimal_valuations",
    "universe_for",
    "Path",
    "enumerate_paths",
    "eval_fixed",
    "satisfying_states",
    "PreStrategy",
    "StateValFun",
    "par_pre",
    "synthesize",
]
