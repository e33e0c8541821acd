"""Symbolic states and breadth-first construction of the parametric zone graph."""

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Deque, Dict, Iterable, List, Optional, Set, Tuple
import logging

from ..constraints import AtomicConstraint, ConvexConstraint, LinearTerm, Relation
from ..core.errors import EmptyInitialStateError, UnknownStateError
from ..core.models import Limits
from .model import PTA, Edge

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SymbolicState:
    """A location with a zone over clocks and parameters."""
    location: str
    zone: ConvexConstraint

    def __str__(self) -> str:
        return f"({self.location}, {self.zone.remove_redundant()})"


def initial_symbolic(pta: PTA) -> SymbolicState:
    """
    All clocks equal to zero, let time elapse, then intersect the initial invariant.

    Raises:
        EmptyInitialStateError: If the resulting zone is unsatisfiable
    """
    zeros = tuple(AtomicConstraint(LinearTerm.var(c), Relation.EQ) for c in pta.clock_names)
    start = ConvexConstraint(pta.context, zeros)
    zone = (start.time_elapse(pta.clock_names) & pta.invariant(pta.initial)).simplified()
    if not zone.is_satisfiable():
        raise EmptyInitialStateError(f"The initial state of {pta.initial} has an empty zone")
    return SymbolicState(pta.initial, zone)


def succ(pta: PTA, state: SymbolicState, edge: Edge) -> Optional[SymbolicState]:
    """Guard, reset, target invariant, elapse, target invariant again; None when empty."""
    if edge.source != state.location:
        raise ValueError(f"Edge {edge} does not leave {state.location}")
    target_invariant = pta.invariant(edge.target)
    fired = (state.zone & edge.guard).reset(edge.resets) & target_invariant
    if not fired.is_satisfiable():
        return None
    zone = (fired.time_elapse(pta.clock_names) & target_invariant).simplified()
    if not zone.is_satisfiable():
        return None
    return SymbolicState(edge.target, zone)


def check_locations(pta: PTA, locations: Iterable[str]) -> frozenset:
    names = frozenset(locations)
    unknown = sorted(names - set(pta.locations))
    if unknown:
        raise UnknownStateError(f"Unknown locations: {', '.join(unknown)}")
    return names


@dataclass
class PZG:
    """
    Explored part of the parametric zone graph.

    A transition whose successor was covered by a stored state points to
    that covering state; its index is in `covered`.
    """
    states: List[SymbolicState] = field(default_factory=list)
    transitions: List[Tuple[int, Edge, int]] = field(default_factory=list)
    covered: Set[int] = field(default_factory=set)
    depth_bounded: bool = False
    state_bounded: bool = False
    stopped: bool = False

    @property
    def complete(self) -> bool:
        return not (self.depth_bounded or self.state_bounded or self.stopped)

    def successors(self, index: int) -> List[int]:
        return [t for s, _, t in self.transitions if s == index]

    def __str__(self) -> str:
        lines = [f"{i}: {state}" for i, state in enumerate(self.states)]
        for n, (source, edge, target) in enumerate(self.transitions):
            mark = " *" if n in self.covered else ""
            lines.append(f"{source} -{edge.action}-> {target}{mark}")
        if self.covered:
            lines.append("* the target state covers the successor zone, which may be strictly smaller")
        return "\n".join(lines)


class ZoneGraphExplorer:
    """
    Breadth-first exploration of a PTA's symbolic states.

    Edges are expanded in declaration order. A new state is merged into a
    stored state of the same location whose zone covers it inside `domain`
    (subsumption) or, with `subsumption=False`, whose zone is equal to it.
    States with no point inside the domain are discarded.

    Usage:
        explorer = ZoneGraphExplorer(pta, limits, domain=pta.parameter_domain())
        graph = explorer.explore()
    """

    def __init__(
        self,
        pta: PTA,
        limits: Limits,
        domain: Optional[ConvexConstraint] = None,
        subsumption: bool = True,
        normalize: Optional[Callable[[ConvexConstraint], ConvexConstraint]] = None,
        on_state: Optional[Callable[[int, SymbolicState], bool]] = None,
    ):
        self.pta = pta
        self.limits = limits
        self.domain = domain if domain is not None else ConvexConstraint.true(pta.context)
        self.subsumption = subsumption
        self.normalize = normalize
        self.on_state = on_state
        self.graph = PZG()
        self._by_location: Dict[str, List[int]] = {}

    def _covering(self, candidate: SymbolicState) -> Optional[int]:
        restricted = candidate.zone & self.domain
        for index in self._by_location.get(candidate.location, []):
            stored = self.graph.states[index].zone
            if not stored.includes(restricted):
                continue
            if self.subsumption or restricted.includes(stored & self.domain):
                return index
        return None

    def _normalized(self, state: SymbolicState) -> SymbolicState:
        if self.normalize is None:
            return state
        return SymbolicState(state.location, self.normalize(state.zone))

    def _store(self, state: SymbolicState) -> Tuple[int, bool]:
        """Index of the state in the graph and whether it was newly added."""
        existing = self._covering(state)
        if existing is not None:
            return existing, False
        index = len(self.graph.states)
        self.graph.states.append(state)
        self._by_location.setdefault(state.location, []).append(index)
        logger.debug(f"State {index}: {state}")
        if self.on_state is not None and self.on_state(index, state):
            self.graph.stopped = True
        return index, True

    def explore(self) -> PZG:
        initial = self._normalized(initial_symbolic(self.pta))
        graph = self.graph
        if not (initial.zone & self.domain).is_satisfiable():
            logger.info("Initial zone has no point inside the parameter domain")
            return graph
        self._store(initial)
        frontier: Deque[Tuple[int, int]] = deque([(0, 0)])
        while frontier and not graph.stopped:
            index, depth = frontier.popleft()
            state = graph.states[index]
            for _, edge in self.pta.edges_from(state.location):
                successor = succ(self.pta, state, edge)
                if successor is None or not (successor.zone & self.domain).is_satisfiable():
                    continue
                successor = self._normalized(successor)
                if depth >= self.limits.max_depth:
                    graph.depth_bounded = True
                    break
                if len(graph.states) >= self.limits.max_states and self._covering(successor) is None:
                    graph.state_bounded = True
                    break
                target, added = self._store(successor)
                if not added:
                    graph.covered.add(len(graph.transitions))
                graph.transitions.append((index, edge, target))
                if added:
                    frontier.append((target, depth + 1))
                if graph.stopped:
                    break
            if graph.state_bounded:
                break

        level = logging.INFO if graph.complete or graph.stopped else logging.WARNING
        logger.log(
            level,
            f"Explored {len(graph.states)} symbolic states, {len(graph.transitions)} transitions"
            f" (depth bounded: {graph.depth_bounded}, state bounded: {graph.state_bounded})",
        )
        return graph
