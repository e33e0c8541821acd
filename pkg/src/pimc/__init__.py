"""Markov chains with interval and parametric interval transitions."""

from .model import IMC, MC, PIMC, ParamInterval, instantiate, point_imc
from .satisfaction import CorrespondenceWitness, SatisfactionResult, satisfies
from .consistency import ConsistencyResult, consistency_levels, is_consistent, n_consistent
from .synthesis import lc_constraint, parameter_box, synthesize_consistency

__all__ = [
    "IMC",
    "MC",
    "PIMC",
    "ParamInterval",
    "instantiate",
    "point_imc",
    "CorrespondenceWitness",
    "SatisfactionResult",
    "satisfies",
    "ConsistencyResult",
    "consistency_levels",
    "is_consistent",
    "n_consistent",
    "lc_constraint",
    "parameter_box",
    "synthesize_consistency",
]
