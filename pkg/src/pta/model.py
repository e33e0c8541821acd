"""Parametric timed automata and their instantiation."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple
import logging

from ..constraints import AtomicConstraint, ConvexConstraint, LinearTerm, Relation, Var, VarKind, to_fraction
from ..core.errors import InvalidValuationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Edge:
    """`source --action, guard, resets--> target`."""
    source: str
    guard: ConvexConstraint
    action: str
    resets: FrozenSet[str]
    target: str

    def __str__(self) -> str:
        resets = ", ".join(sorted(self.resets))
        return f"{self.source} -{self.action}-> {self.target} [{self.guard}] reset {{{resets}}}"


@dataclass(frozen=True)
class ParameterInterval:
    """Ranging interval of a bounded parameter; `upper` None means unbounded above."""
    lower: Fraction
    upper: Optional[Fraction]
    lower_open: bool = False
    upper_open: bool = False

    def atoms(self, name: str) -> Tuple[AtomicConstraint, ...]:
        p = LinearTerm.var(name)
        low = Relation.GT if self.lower_open else Relation.GE
        atoms = [AtomicConstraint.compare(p, low, LinearTerm.const(self.lower))]
        if self.upper is not None:
            high = Relation.LT if self.upper_open else Relation.LE
            atoms.append(AtomicConstraint.compare(p, high, LinearTerm.const(self.upper)))
        return tuple(atoms)

    def contains(self, value: Fraction) -> bool:
        return all(atom.holds({"_v": value}) for atom in self.atoms("_v"))

    def __str__(self) -> str:
        left = "(" if self.lower_open else "["
        right = ")" if self.upper_open else "]"
        high = "inf" if self.upper is None else str(self.upper)
        return f"{left}{self.lower}, {high}{right}"


def clock_of(atom: AtomicConstraint, clock_names: FrozenSet[str]) -> Optional[Tuple[str, Fraction]]:
    """The single clock of a parametric-guard atom with its +-1 coefficient, else None."""
    found = [(n, c) for n, c in atom.term.coefficients if n in clock_names]
    if len(found) != 1 or abs(found[0][1]) != 1:
        return None
    return found[0]


@dataclass(frozen=True)
class PTA:
    """A parametric timed automaton; all constraints share the context clocks + parameters."""
    actions: FrozenSet[str]
    locations: Tuple[str, ...]
    initial: str
    accepting: FrozenSet[str]
    clocks: Tuple[Var, ...]
    parameters: Tuple[Var, ...]
    invariants: Mapping[str, ConvexConstraint] = field(default_factory=dict)
    edges: Tuple[Edge, ...] = ()
    intervals: Mapping[str, ParameterInterval] = field(default_factory=dict)

    @property
    def context(self) -> Tuple[Var, ...]:
        return self.clocks + self.parameters

    @property
    def clock_names(self) -> Tuple[str, ...]:
        return tuple(c.name for c in self.clocks)

    @property
    def parameter_names(self) -> Tuple[str, ...]:
        return tuple(p.name for p in self.parameters)

    def invariant(self, location: str) -> ConvexConstraint:
        return self.invariants.get(location) or ConvexConstraint.true(self.context)

    def edges_from(self, location: str) -> List[Tuple[int, Edge]]:
        return [(i, e) for i, e in enumerate(self.edges) if e.source == location]

    def constraints(self) -> List[Tuple[str, ConvexConstraint]]:
        """Every invariant and guard, labelled for diagnostics."""
        labelled = [(f"invariant of {loc}", self.invariant(loc)) for loc in self.locations]
        labelled += [(f"guard of edge {i} ({e.source} -> {e.target})", e.guard) for i, e in enumerate(self.edges)]
        return labelled

    def problems(self) -> List[str]:
        """Every violated structural invariant, empty when the model is valid."""
        problems: List[str] = []
        locations = set(self.locations)
        clock_names = frozenset(self.clock_names)
        if len(locations) != len(self.locations):
            problems.append("Duplicate location names")
        if clock_names & set(self.parameter_names):
            problems.append("A name is declared both as clock and parameter")
        if self.initial not in locations:
            problems.append(f"Initial location {self.initial!r} is not declared")
        for loc in sorted(self.accepting - locations):
            problems.append(f"Accepting location {loc!r} is not declared")
        for loc in sorted(set(self.invariants) - locations):
            problems.append(f"Invariant given for undeclared location {loc!r}")
        for i, edge in enumerate(self.edges):
            for end in (edge.source, edge.target):
                if end not in locations:
                    problems.append(f"Edge {i} uses undeclared location {end!r}")
            for clock in sorted(edge.resets - clock_names):
                problems.append(f"Edge {i} resets {clock!r}, which is not a clock")
            if edge.action not in self.actions:
                problems.append(f"Edge {i} uses undeclared action {edge.action!r}")
        for label, constraint in self.constraints():
            if constraint.context != self.context:
                problems.append(f"The {label} is not over the clocks and parameters of the model")
                continue
            for atom in constraint.atoms:
                if clock_of(atom, clock_names) is None:
                    problems.append(
                        f"The {label} has atom '{atom}' that is not of the form x ~ linear term over parameters"
                    )
        for name, interval in self.intervals.items():
            if name not in self.parameter_names:
                problems.append(f"Bounds given for unknown parameter {name!r}")
            if interval.lower < 0:
                problems.append(f"Lower bound of {name} must be non-negative")
            if interval.upper is not None and interval.upper < interval.lower:
                problems.append(f"Bounds of {name} form an empty interval")
        return problems

    def parameter_domain(self, context: Optional[Tuple[Var, ...]] = None) -> ConvexConstraint:
        """p >= 0 for every parameter, conjoined with declared bounds."""
        context = self.context if context is None else context
        atoms = [AtomicConstraint(LinearTerm.var(p), Relation.GE) for p in self.parameter_names]
        for name in self.parameter_names:
            if name in self.intervals:
                atoms.extend(self.intervals[name].atoms(name))
        return ConvexConstraint(context, tuple(atoms))

    def max_constant(self) -> Fraction:
        """Largest absolute constant of any guard or invariant atom."""
        largest = Fraction(0)
        for _, constraint in self.constraints():
            for atom in constraint.atoms:
                largest = max(largest, abs(atom.term.constant))
        return largest

    def map_constraints(self, transform, parameters: Tuple[Var, ...]) -> "PTA":
        """Copy with every guard and invariant rewritten by `transform`."""
        invariants = {loc: transform(inv) for loc, inv in self.invariants.items()}
        edges = tuple(
            Edge(e.source, transform(e.guard), e.action, e.resets, e.target) for e in self.edges
        )
        kept = {n: i for n, i in self.intervals.items() if n in {p.name for p in parameters}}
        return PTA(
            self.actions, self.locations, self.initial, self.accepting, self.clocks,
            parameters, invariants, edges, kept,
        )


def check_valuation(pta: PTA, valuation: Mapping[str, object]) -> Dict[str, Fraction]:
    """Validate a total, non-negative parameter valuation and make it exact."""
    missing = [p for p in pta.parameter_names if p not in valuation]
    if missing:
        raise InvalidValuationError(f"No value for parameters: {', '.join(missing)}")
    unknown = sorted(set(valuation) - set(pta.parameter_names))
    if unknown:
        raise InvalidValuationError(f"Unknown parameters: {', '.join(unknown)}")
    exact = {}
    for name in pta.parameter_names:
        try:
            value = to_fraction(valuation[name])
        except (TypeError, ValueError) as e:
            raise InvalidValuationError(f"Invalid value for {name}: {e}")
        if value < 0:
            raise InvalidValuationError(f"Parameter {name} must be non-negative, got {value}")
        interval = pta.intervals.get(name)
        if interval is not None and not interval.contains(value):
            raise InvalidValuationError(f"Parameter {name}={value} lies outside its bounds {interval}")
        exact[name] = value
    return exact


def instantiate(pta: PTA, valuation: Mapping[str, object]) -> PTA:
    """
    Replace every parameter by its value.

    Args:
        pta: Parametric model
        valuation: Total map parameter -> non-negative rational

    Returns:
        A PTA with no parameters (a timed automaton)

    Examples:
        >>> ta = instantiate(coffee, {"p1": 1, "p2": 5, "p3": 8})
        >>> ta.parameters
        ()
    """
    exact = check_valuation(pta, valuation)
    logger.debug(f"Instantiating PTA with {exact}")
    return pta.map_constraints(lambda c: c.substitute(exact), ())


def is_parameterless(pta: PTA) -> bool:
    return not pta.parameters and all(
        not (c.names_of_kind(VarKind.PARAMETER)) for _, c in pta.constraints()
    )
