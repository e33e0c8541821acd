"""Parameter synthesis for reachability and integer-point checking."""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional
import logging

from ..constraints import ConstraintSet, ConvexConstraint
from ..core.models import Limits, Verdict
from .model import PTA
from .symbolic import SymbolicState, ZoneGraphExplorer, check_locations

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SynthesisResult:
    """Parameter valuations reaching the targets; `complete` when exploration finished."""
    constraints: ConstraintSet
    complete: bool
    states_explored: int


@dataclass(frozen=True)
class IPCheckResult:
    answer: Verdict
    complete: bool
    states_explored: int
    witness: Optional[SymbolicState] = None


def ef_synthesis(pta: PTA, targets: Iterable[str], limits: Limits) -> SynthesisResult:
    """
    Compute the parameter valuations for which some run reaches a target location.

    Every stored symbolic state at a target contributes its zone with the
    clocks eliminated. The union is intersected with the parameter domain.

    Args:
        pta: Parametric timed automaton
        targets: Target locations
        limits: max_states and max_depth budgets

    Returns:
        SynthesisResult over the parameters; exact when `complete` is True,
        an under-approximation otherwise

    Raises:
        UnknownStateError: If a target is not a location of the model

    Examples:
        >>> result = ef_synthesis(coffee, ["done"], Limits())
        >>> result.complete
        True
        >>> result.constraints.satisfies({"p1": 0, "p2": 2, "p3": 3})
        True
    """
    goal = check_locations(pta, targets)
    parameter_domain = pta.parameter_domain(pta.parameters)
    found: List[ConvexConstraint] = []

    def collect(index: int, state: SymbolicState) -> bool:
        if state.location in goal:
            projected = state.zone.project_to_parameters() & parameter_domain
            if projected.is_satisfiable():
                logger.debug(f"Target {state.location} reached in state {index}: {projected}")
                found.append(projected)
        return False

    explorer = ZoneGraphExplorer(pta, limits, domain=pta.parameter_domain(), on_state=collect)
    graph = explorer.explore()
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(f"Explored graph:\n{graph}")
    result = ConstraintSet(pta.parameters, tuple(found))
    logger.info(
        f"EF synthesis for {sorted(goal)}: {len(result)} disjuncts from {len(graph.states)} states"
        f" (complete: {graph.complete})"
    )
    return SynthesisResult(result, graph.complete, len(graph.states))


def ip_check(pta: PTA, limits: Limits, search_bound: Optional[int] = None) -> IPCheckResult:
    """
    Check that every reachable zone contains an integer point.

    Returns no with the offending state as soon as a zone provably has no
    integer point, yes when the whole graph was explored and every zone has
    one, unknown otherwise.
    """
    bound = limits.search_bound if search_bound is None else search_bound
    answers: Dict[int, Verdict] = {}
    witness: List[SymbolicState] = []

    def check(index: int, state: SymbolicState) -> bool:
        point = state.zone.has_integer_point(bound)
        answers[index] = point.answer
        if point.answer is Verdict.NO:
            logger.info(f"State {index} at {state.location} has no integer point: {state}")
            witness.append(state)
            return True
        return False

    explorer = ZoneGraphExplorer(pta, limits, domain=pta.parameter_domain(), subsumption=False, on_state=check)
    graph = explorer.explore()
    if witness:
        # a zone without integer points settles the answer
        return IPCheckResult(Verdict.NO, True, len(graph.states), witness[0])
    if graph.complete and all(a is Verdict.YES for a in answers.values()):
        return IPCheckResult(Verdict.YES, True, len(graph.states))
    logger.warning(f"Integer-point check inconclusive after {len(graph.states)} states")
    return IPCheckResult(Verdict.UNKNOWN, graph.complete, len(graph.states))
