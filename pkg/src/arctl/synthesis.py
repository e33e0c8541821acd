"""Synthesis of the action valuations under which states satisfy a formula."""

from enum import Enum
from typing import Callable, Dict, Optional
import logging

from ..core.errors import UnboundVariableError
from .model import EG, EU, EX, MTS, Alpha, EGInfinite, Formula, Not, Or, Prop, Top, formula_variables
from .valuations import ValuationSet, ValuationUniverse, universe_for

logger = logging.getLogger(__name__)

StateValFun = Dict[str, ValuationSet]


class PreStrategy(str, Enum):
    """How parametric pre-images are computed; both give the same sets."""
    PER_ACTION = "per-action"
    EXPLICIT = "explicit"


def _enabling(universe: ValuationUniverse, alpha: Alpha, action: str) -> ValuationSet:
    """Valuations under which `alpha` allows `action`."""
    if isinstance(alpha, str):
        if alpha not in universe.variables:
            raise UnboundVariableError(f"Action variable {alpha!r} is not declared")
        return universe.containing(alpha, action)
    return universe.full() if action in alpha else universe.empty()


def par_pre(
    mts: MTS,
    f: StateValFun,
    alpha: Alpha,
    universe: ValuationUniverse,
    strategy: PreStrategy = PreStrategy.PER_ACTION,
) -> StateValFun:
    """
    Parametric pre-image: v belongs to the result at s iff some transition
    s -a-> s' has a allowed by v(alpha) and v in f(s').
    """
    result = {s: universe.empty() for s in mts.states}
    if strategy is PreStrategy.PER_ACTION:
        for source, action, target in mts.transitions:
            result[source] = result[source] | (_enabling(universe, alpha, action) & f[target])
        return result

    if isinstance(alpha, str) and alpha not in universe.variables:
        raise UnboundVariableError(f"Action variable {alpha!r} is not declared")
    for state in mts.states:
        bits = 0
        for index in range(universe.size):
            valuation = universe.valuation(index)
            allowed = valuation[alpha] if isinstance(alpha, str) else alpha
            if any(a in allowed and f[t].bits >> index & 1 for a, t in mts.outgoing(state)):
                bits |= 1 << index
        result[state] = ValuationSet(universe, bits)
    return result


def _same(f: StateValFun, g: StateValFun) -> bool:
    return all(f[s].bits == g[s].bits for s in f)


def _fixed_point(start: StateValFun, step: Callable[[StateValFun], StateValFun], label: str) -> StateValFun:
    current = start
    rounds = 0
    while True:
        rounds += 1
        following = step(current)
        if _same(current, following):
            logger.debug(f"{label} stable after {rounds} rounds")
            return current
        current = following


def synthesize(
    mts: MTS,
    formula: Formula,
    universe: Optional[ValuationUniverse] = None,
    strategy: PreStrategy = PreStrategy.PER_ACTION,
) -> StateValFun:
    """
    Map every state to the valuations under which it satisfies `formula`.

    Args:
        mts: Mixed transition system
        formula: Formula over the declared action variables
        universe: Valuation universe; built from the declared variables by default
        strategy: Pre-image computation

    Returns:
        Total map state -> ValuationSet

    Examples:
        >>> f = synthesize(robot, parse_formula("E[Y] G (E[Z] F safe)"))
        >>> all("forw" in v["Z"] for v in f["s0"])
        True
    """
    universe = universe or universe_for(mts.variables, mts.actions)
    unbound = sorted(formula_variables(formula) - set(universe.variables))
    if unbound:
        raise UnboundVariableError(f"Action variables not declared: {', '.join(unbound)}")
    full = {s: universe.full() for s in mts.states}
    empty = {s: universe.empty() for s in mts.states}

    def pre(f: StateValFun, alpha: Alpha) -> StateValFun:
        return par_pre(mts, f, alpha, universe, strategy)

    def walk(node: Formula) -> StateValFun:
        if isinstance(node, Top):
            return dict(full)
        if isinstance(node, Prop):
            return {s: (universe.full() if node.name in mts.label(s) else universe.empty()) for s in mts.states}
        if isinstance(node, Not):
            inner = walk(node.operand)
            return {s: inner[s].complement() for s in mts.states}
        if isinstance(node, Or):
            left, right = walk(node.left), walk(node.right)
            return {s: left[s] | right[s] for s in mts.states}
        if isinstance(node, EX):
            return pre(walk(node.operand), node.alpha)
        if isinstance(node, EGInfinite):
            inner = walk(node.operand)

            def keep(f: StateValFun) -> StateValFun:
                image = pre(f, node.alpha)
                return {s: inner[s] & image[s] for s in mts.states}

            return _fixed_point(inner, keep, str(node))
        if isinstance(node, EG):
            inner = walk(node.operand)
            moving = pre(full, node.alpha)
            deadlocked = {s: moving[s].complement() for s in mts.states}

            def step(f: StateValFun) -> StateValFun:
                image = pre(f, node.alpha)
                return {s: inner[s] & (image[s] | deadlocked[s]) for s in mts.states}

            return _fixed_point(inner, step, str(node))
        if isinstance(node, EU):
            left, right = walk(node.left), walk(node.right)

            def grow(f: StateValFun) -> StateValFun:
                image = pre(f, node.alpha)
                return {s: right[s] | (left[s] & image[s]) for s in mts.states}

            return _fixed_point(dict(empty), grow, str(node))
        raise TypeError(f"Unknown formula node {node!r}")

    result = walk(formula)
    logger.info(
        f"Synthesized {formula}: {len(result[mts.initial])} of {universe.size} valuations at {mts.initial}"
    )
    return result
