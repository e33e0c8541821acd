"""Exact rational linear constraints shared by every engine."""

from .linear import (
    AtomicConstraint,
    LinearTerm,
    Relation,
    Valuation,
    Var,
    VarKind,
    clocks,
    parameters,
    to_fraction,
)
from .convex import Bound, ConvexConstraint, IntegerPoint
from .sets import ConstraintSet, nonnegative, set_contains, subtract

__all__ = [
    "AtomicConstraint",
    "Bound",
    "ConstraintSet",
    "ConvexConstraint",
    "IntegerPoint",
    "LinearTerm",
    "Relation",
    "Valuation",
    "Var",
    "VarKind",
    "clocks",
    "nonnegative",
    "parameters",
    "set_contains",
    "subtract",
    "to_fraction",
]
