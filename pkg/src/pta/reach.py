"""Reachability and infinite-run checks on instantiated timed automata."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Optional
import logging

from ..constraints import AtomicConstraint, Bound, ConvexConstraint, LinearTerm, Relation
from ..core.errors import IncompleteExplorationError
from ..core.models import Limits, Verdict
from .model import PTA
from .symbolic import PZG, SymbolicState, ZoneGraphExplorer, check_locations

logger = logging.getLogger(__name__)


def _bound_atoms(term: LinearTerm, bound: Bound, k: Fraction) -> List[AtomicConstraint]:
    """Atoms for `bound` on `term`, with constants beyond +-k widened away."""
    atoms = []
    if bound.upper is not None:
        if bound.upper < -k:
            atoms.append(AtomicConstraint.compare(term, Relation.LT, LinearTerm.const(-k)))
        elif bound.upper <= k:
            relation = Relation.LT if bound.upper_strict else Relation.LE
            atoms.append(AtomicConstraint.compare(term, relation, LinearTerm.const(bound.upper)))
    if bound.lower is not None:
        if bound.lower > k:
            atoms.append(AtomicConstraint.compare(term, Relation.GT, LinearTerm.const(k)))
        elif bound.lower >= -k:
            relation = Relation.GT if bound.lower_strict else Relation.GE
            atoms.append(AtomicConstraint.compare(term, relation, LinearTerm.const(bound.lower)))
    return atoms


def normalize_zone(zone: ConvexConstraint, k: Fraction) -> ConvexConstraint:
    """
    Maximal-constant normalization of a clock zone.

    The zone is rebuilt from the tightest bound of every clock and every clock
    difference; bounds above k are dropped and bounds below -k are relaxed.
    Zone constants of a model with rational constants lie on the lattice of
    the lcm of their denominators, so finitely many normalized zones exist.
    """
    if not zone.is_satisfiable():
        return zone
    names = zone.names
    atoms: List[AtomicConstraint] = []
    for name in names:
        atoms.extend(_bound_atoms(LinearTerm.var(name), zone.bounds(name), k))
    for left, right in combinations(names, 2):
        term = LinearTerm.var(left) - LinearTerm.var(right)
        atoms.extend(_bound_atoms(term, zone.term_bounds(term), k))
    return ConvexConstraint(zone.context, tuple(atoms)).simplified()


def _require_instantiated(ta: PTA):
    if ta.parameters:
        raise ValueError("Concrete analyses need an automaton without parameters")


def concrete_graph(ta: PTA, limits: Limits, targets: Iterable[str] = (), subsumption: bool = True) -> PZG:
    """Normalized zone graph of a timed automaton, stopping at the first target if any."""
    _require_instantiated(ta)
    goal = frozenset(targets)
    k = ta.max_constant()

    def reached(index: int, state: SymbolicState) -> bool:
        return state.location in goal

    explorer = ZoneGraphExplorer(
        ta, limits, subsumption=subsumption,
        normalize=lambda zone: normalize_zone(zone, k),
        on_state=reached if goal else None,
    )
    return explorer.explore()


@dataclass(frozen=True)
class ReachAnalysis:
    reachable: bool
    complete: bool
    states_explored: int

    @property
    def verdict(self) -> Verdict:
        if self.reachable:
            return Verdict.YES
        return Verdict.NO if self.complete else Verdict.UNKNOWN


def reach_analysis(ta: PTA, targets: Iterable[str], limits: Optional[Limits] = None) -> ReachAnalysis:
    goal = check_locations(ta, targets)
    graph = concrete_graph(ta, limits or Limits(), goal)
    reachable = any(s.location in goal for s in graph.states)
    complete = reachable or graph.complete
    logger.info(f"Reachability of {sorted(goal)}: {reachable} after {len(graph.states)} states")
    return ReachAnalysis(reachable, complete, len(graph.states))


def concrete_reach(ta: PTA, targets: Iterable[str], limits: Optional[Limits] = None) -> bool:
    """
    True iff a run of the timed automaton reaches one of the target locations.

    Raises:
        IncompleteExplorationError: If the limits cut the exploration short
            before a target was found

    Examples:
        >>> concrete_reach(instantiate(coffee, {"p1": 1, "p2": 2, "p3": 3}), ["done"])
        True
    """
    analysis = reach_analysis(ta, targets, limits)
    if not analysis.complete:
        raise IncompleteExplorationError(
            f"Reachability undecided after {analysis.states_explored} states; raise maxStates"
        )
    return analysis.reachable


def ec_check(ta: PTA, limits: Optional[Limits] = None) -> Verdict:
    """
    Semi-test for runs with infinitely many discrete transitions.

    Answers yes when the normalized zone graph has a cycle, or when a path
    reaches a zone containing an earlier zone of the same location on it;
    unknown otherwise. Zeno behaviour is not analyzed.
    """
    graph = concrete_graph(ta, limits or Limits(), subsumption=False)
    successors = {i: graph.successors(i) for i in range(len(graph.states))}
    if not graph.states:
        return Verdict.UNKNOWN

    on_stack = [False] * len(graph.states)
    visited = [False] * len(graph.states)
    path: List[int] = [0]
    iterators = [iter(successors[0])]
    visited[0] = on_stack[0] = True
    while iterators:
        child = next(iterators[-1], None)
        if child is None:
            on_stack[path.pop()] = False
            iterators.pop()
            continue
        if on_stack[child]:
            logger.info(f"Cycle through state {child} at {graph.states[child].location}")
            return Verdict.YES
        state = graph.states[child]
        for earlier in path:
            previous = graph.states[earlier]
            if previous.location == state.location and state.zone.includes(previous.zone):
                logger.info(f"State {child} covers earlier state {earlier} at {state.location}")
                return Verdict.YES
        if not visited[child]:
            visited[child] = on_stack[child] = True
            path.append(child)
            iterators.append(iter(successors[child]))
    return Verdict.UNKNOWN
