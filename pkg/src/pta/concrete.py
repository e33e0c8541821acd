"""Concrete semantics of instantiated automata: scripted runs, words and traces."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union
import logging

from ..constraints import to_fraction
from ..core.errors import StepRejectedError
from .model import PTA, Edge

logger = logging.getLogger(__name__)

EdgeRef = Union[Edge, int, str]


@dataclass(frozen=True)
class ConcreteState:
    """A location with one non-negative rational value per clock."""
    location: str
    clock_values: Tuple[Tuple[str, Fraction], ...]

    @classmethod
    def of(cls, location: str, values: Dict[str, Fraction]) -> "ConcreteState":
        return cls(location, tuple(sorted(values.items())))

    def values(self) -> Dict[str, Fraction]:
        return dict(self.clock_values)

    def __str__(self) -> str:
        clocks = ", ".join(f"{n}={v}" for n, v in self.clock_values)
        return f"({self.location}, {clocks})"


@dataclass(frozen=True)
class Run:
    """states[i] --delays[i], edges[i]--> states[i + 1]."""
    states: Tuple[ConcreteState, ...]
    delays: Tuple[Fraction, ...]
    edges: Tuple[Edge, ...]
    accepting: bool

    @property
    def total_time(self) -> Fraction:
        return sum(self.delays, Fraction(0))

    @property
    def final(self) -> ConcreteState:
        return self.states[-1]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class WordsAndTrace:
    word: Tuple[str, ...]
    trace: Tuple[str, ...]
    locations: Tuple[str, ...]
    accepting: bool


def _resolve_edge(ta: PTA, location: str, ref: EdgeRef, values: Dict[str, Fraction], step: int) -> Edge:
    """Pick the edge a script step names; actions select the first enabled match."""
    if isinstance(ref, Edge):
        return ref
    if isinstance(ref, int):
        if not 0 <= ref < len(ta.edges):
            raise StepRejectedError(step, f"no edge with index {ref}")
        return ta.edges[ref]
    candidates = [e for _, e in ta.edges_from(location) if e.action == ref]
    if not candidates:
        raise StepRejectedError(step, f"no edge labelled {ref!r} leaves {location}")
    for edge in candidates:
        if edge.guard.satisfies(values):
            return edge
    return candidates[0]


def replay(ta: PTA, script: Sequence[Tuple[object, EdgeRef]]) -> Run:
    """
    Replay a script of (delay, edge) steps on a timed automaton.

    Each step lets time pass by the delay, then fires the edge. Edges may be
    given as Edge objects, as indices into `ta.edges`, or as action names.

    Args:
        ta: Automaton without parameters
        script: Sequence of (delay, edge) pairs

    Returns:
        The run, flagged accepting when its last location is accepting

    Raises:
        StepRejectedError: On the first step that violates an invariant or guard
    """
    if ta.parameters:
        raise ValueError("Runs can only be replayed on an instantiated automaton")
    values = {c: Fraction(0) for c in ta.clock_names}
    location = ta.initial
    if not ta.invariant(location).satisfies(values):
        raise StepRejectedError(0, f"initial clock values violate the invariant of {location}")

    states: List[ConcreteState] = [ConcreteState.of(location, values)]
    delays: List[Fraction] = []
    edges: List[Edge] = []
    for step, (delay, ref) in enumerate(script, start=1):
        delay = to_fraction(delay)
        if delay < 0:
            raise StepRejectedError(step, f"negative delay {delay}")
        elapsed = {c: v + delay for c, v in values.items()}
        # invariants are convex, so both ends of the delay suffice
        if not ta.invariant(location).satisfies(elapsed):
            raise StepRejectedError(
                step, f"waiting {delay} in {location} violates invariant {ta.invariant(location)}"
            )
        edge = _resolve_edge(ta, location, ref, elapsed, step)
        if edge.source != location:
            raise StepRejectedError(step, f"edge {edge} does not leave {location}")
        if not edge.guard.satisfies(elapsed):
            raise StepRejectedError(step, f"guard {edge.guard} of {edge.action} does not hold")
        values = {c: (Fraction(0) if c in edge.resets else v) for c, v in elapsed.items()}
        location = edge.target
        if not ta.invariant(location).satisfies(values):
            raise StepRejectedError(
                step, f"entering {location} violates invariant {ta.invariant(location)}"
            )
        delays.append(delay)
        edges.append(edge)
        states.append(ConcreteState.of(location, values))
        logger.debug(f"Step {step}: {edge.action} after {delay} -> {states[-1]}")

    return Run(tuple(states), tuple(delays), tuple(edges), location in ta.accepting)


def words_and_trace(run: Run) -> WordsAndTrace:
    """Untimed word, interleaved trace l0 a0 l1 a1 ... and acceptance of a run."""
    word = tuple(e.action for e in run.edges)
    locations = tuple(s.location for s in run.states)
    trace: List[str] = [locations[0]]
    for action, location in zip(word, locations[1:]):
        trace.extend((action, location))
    return WordsAndTrace(word, tuple(trace), locations, run.accepting)
