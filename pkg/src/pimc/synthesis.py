"""Synthesis of the parameter valuations making a PIMC consistent."""

from itertools import chain, combinations
from typing import Dict, FrozenSet, Iterable, List
import logging

from ..constraints import AtomicConstraint, ConstraintSet, ConvexConstraint, LinearTerm, Relation
from .model import PIMC, endpoint_term

logger = logging.getLogger(__name__)


def parameter_box(pimc: PIMC) -> ConvexConstraint:
    """0 <= p <= 1 for every parameter."""
    atoms = []
    for name in pimc.parameters:
        p = LinearTerm.var(name)
        atoms.append(AtomicConstraint(p, Relation.GE))
        atoms.append(AtomicConstraint.compare(p, Relation.LE, LinearTerm.const(1)))
    return ConvexConstraint(pimc.context, tuple(atoms))


def lc_constraint(pimc: PIMC, state: str, keep: Iterable[str]) -> ConvexConstraint:
    """
    Local consistency of `state` when only `keep` successors get probability.

    The sum of upper bounds over `keep` is at least 1, the sum of lower
    bounds at most 1, and every kept interval is well formed. Parameters are
    bounded to [0, 1].

    Examples:
        >>> lc_constraint(param_intervals, "s1", {"s1", "s3"}).satisfies({"q": "0.7", "p": 0})
        True
        >>> lc_constraint(param_intervals, "s1", {"s1", "s3"}).satisfies({"q": "0.8", "p": 0})
        False
    """
    keep = set(keep)
    kept = [t for t in pimc.successors(state) if t in keep]
    ups = LinearTerm()
    lows = LinearTerm()
    atoms: List[AtomicConstraint] = []
    for target in kept:
        interval = pimc.interval(state, target)
        low, up = endpoint_term(interval.low), endpoint_term(interval.up)
        ups = ups + up
        lows = lows + low
        atoms.append(AtomicConstraint.compare(low, Relation.LE, up))
    atoms.append(AtomicConstraint.compare(ups, Relation.GE, LinearTerm.const(1)))
    atoms.append(AtomicConstraint.compare(lows, Relation.LE, LinearTerm.const(1)))
    return ConvexConstraint(pimc.context, tuple(atoms)) & parameter_box(pimc)


def zero_lower(pimc: PIMC, state: str, target: str) -> ConvexConstraint:
    """Lower endpoint of the transition equal to 0."""
    low = endpoint_term(pimc.interval(state, target).low)
    return ConvexConstraint(pimc.context, (AtomicConstraint(low, Relation.EQ),))


def avoidable(pimc: PIMC, state: str) -> List[str]:
    """Successors whose lower endpoint is 0 or a parameter."""
    result = []
    for target in pimc.successors(state):
        low = pimc.interval(state, target).low
        if isinstance(low, str) or low == 0:
            result.append(target)
    return result


def _cons_for_avoid_set(pimc: PIMC, avoid: FrozenSet[str]) -> ConvexConstraint:
    """Cons_{|S|} of the initial state for one avoid set, as a single conjunction."""
    base: Dict[str, ConvexConstraint] = {}
    for state in pimc.states:
        successors = pimc.successors(state)
        local = lc_constraint(pimc, state, [t for t in successors if t not in avoid])
        for target in successors:
            if target in avoid:
                local = local & zero_lower(pimc, state, target)
        base[state] = local.simplified()

    level = dict(base)
    for _ in range(len(pimc.states)):
        following: Dict[str, ConvexConstraint] = {}
        for state in pimc.states:
            constraint = base[state]
            for target in pimc.successors(state):
                if target not in avoid:
                    constraint = constraint & level[target]
            following[state] = constraint.simplified()
        level = following
    return level[pimc.initial]


def synthesize_consistency(pimc: PIMC) -> ConstraintSet:
    """
    Parameter valuations in [0, 1] for which the PIMC is consistent.

    The result is the union, over every set X of states drawn from the
    successors that may be avoided, of the valuations for which the initial
    state stays consistent when transitions into X get probability 0.

    Examples:
        >>> cons = synthesize_consistency(param_intervals)
        >>> cons.satisfies({"q": 1, "p": 0})
        True
    """
    candidates = sorted(set(chain.from_iterable(avoidable(pimc, s) for s in pimc.states)))
    disjuncts: List[ConvexConstraint] = []
    subsets = chain.from_iterable(combinations(candidates, k) for k in range(len(candidates) + 1))
    box = parameter_box(pimc)
    explored = 0
    for subset in subsets:
        explored += 1
        constraint = (_cons_for_avoid_set(pimc, frozenset(subset)) & box).remove_redundant()
        if constraint.is_satisfiable():
            logger.debug(f"Avoid set {list(subset)}: {constraint}")
            disjuncts.append(constraint)
    result = ConstraintSet(pimc.context, tuple(disjuncts))
    logger.info(f"Consistency synthesis: {len(result)} disjuncts over {explored} avoid sets")
    return result
