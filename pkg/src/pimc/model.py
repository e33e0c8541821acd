"""Markov chains, interval Markov chains and parametric interval Markov chains."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Mapping, Tuple, Union
import logging

from ..constraints import LinearTerm, Var, parameters, to_fraction
from ..core.errors import InvalidValuationError, UnknownStateError

logger = logging.getLogger(__name__)

Endpoint = Union[Fraction, str]


def endpoint_term(endpoint: Endpoint) -> LinearTerm:
    if isinstance(endpoint, str):
        return LinearTerm.var(endpoint)
    return LinearTerm.const(endpoint)


def render_endpoint(endpoint: Endpoint) -> str:
    return endpoint if isinstance(endpoint, str) else str(endpoint)


@dataclass(frozen=True)
class MC:
    """A Markov chain; `matrix` keeps only positive entries, in declaration order."""
    states: Tuple[str, ...]
    initial: str
    matrix: Mapping[Tuple[str, str], Fraction]
    props: FrozenSet[str] = frozenset()
    labels: Mapping[str, FrozenSet[str]] = field(default_factory=dict)

    def label(self, state: str) -> FrozenSet[str]:
        return self.labels.get(state, frozenset())

    def successors(self, state: str) -> List[Tuple[str, Fraction]]:
        return [(t, p) for (s, t), p in self.matrix.items() if s == state and p > 0]

    def problems(self) -> List[str]:
        problems: List[str] = []
        known = set(self.states)
        if self.initial not in known:
            problems.append(f"Initial state {self.initial!r} is not declared")
        for (s, t), p in self.matrix.items():
            if s not in known or t not in known:
                problems.append(f"Transition {s} -> {t} uses an undeclared state")
            if not 0 <= p <= 1:
                problems.append(f"Probability {p} of {s} -> {t} is outside [0, 1]")
        for state in self.states:
            total = sum((p for _, p in self.successors(state)), Fraction(0))
            if total != 1:
                problems.append(f"Outgoing probabilities of {state} sum to {total}, not 1")
        for state, props in self.labels.items():
            for prop in sorted(props - self.props):
                problems.append(f"State {state} is labelled with undeclared proposition {prop!r}")
        return problems


@dataclass(frozen=True)
class ParamInterval:
    """Closed interval whose endpoints are rationals or parameter names."""
    low: Endpoint
    up: Endpoint

    @property
    def parameters(self) -> FrozenSet[str]:
        return frozenset(e for e in (self.low, self.up) if isinstance(e, str))

    @property
    def is_numeric(self) -> bool:
        return not self.parameters

    def substitute(self, values: Mapping[str, Fraction]) -> "ParamInterval":
        low = values[self.low] if isinstance(self.low, str) else self.low
        up = values[self.up] if isinstance(self.up, str) else self.up
        return ParamInterval(low, up)

    def contains(self, value: Fraction) -> bool:
        if not self.is_numeric:
            raise ValueError(f"Interval {self} still has parameters")
        return self.low <= value <= self.up

    def __str__(self) -> str:
        return f"[{render_endpoint(self.low)}, {render_endpoint(self.up)}]"


@dataclass(frozen=True)
class PIMC:
    """
    A parametric interval Markov chain.

    `phi` maps each declared transition to its interval; undeclared pairs
    stand for the interval [0, 0]. Successor order is declaration order.
    """
    states: Tuple[str, ...]
    initial: str
    phi: Mapping[Tuple[str, str], ParamInterval]
    props: FrozenSet[str] = frozenset()
    labels: Mapping[str, FrozenSet[str]] = field(default_factory=dict)
    parameters: Tuple[str, ...] = ()

    @property
    def context(self) -> Tuple[Var, ...]:
        return parameters(*self.parameters)

    def label(self, state: str) -> FrozenSet[str]:
        return self.labels.get(state, frozenset())

    def successors(self, state: str) -> List[str]:
        return [t for (s, t) in self.phi if s == state]

    def interval(self, source: str, target: str) -> ParamInterval:
        return self.phi.get((source, target), ParamInterval(Fraction(0), Fraction(0)))

    def check_state(self, state: str):
        if state not in self.states:
            raise UnknownStateError(f"Unknown state {state!r}")

    def problems(self) -> List[str]:
        problems: List[str] = []
        known = set(self.states)
        declared = set(self.parameters)
        if len(known) != len(self.states):
            problems.append("Duplicate state names")
        if self.initial not in known:
            problems.append(f"Initial state {self.initial!r} is not declared")
        for (s, t), interval in self.phi.items():
            if s not in known or t not in known:
                problems.append(f"Transition {s} -> {t} uses an undeclared state")
            for name in sorted(interval.parameters - declared):
                problems.append(f"Transition {s} -> {t} uses undeclared parameter {name!r}")
            for endpoint in (interval.low, interval.up):
                if not isinstance(endpoint, str) and not 0 <= endpoint <= 1:
                    problems.append(f"Endpoint {endpoint} of {s} -> {t} is outside [0, 1]")
        for state, props in self.labels.items():
            for prop in sorted(props - self.props):
                problems.append(f"State {state} is labelled with undeclared proposition {prop!r}")
        return problems


class IMC(PIMC):
    """An interval Markov chain: a PIMC without parameters."""

    def problems(self) -> List[str]:
        problems = super().problems()
        if self.parameters or any(not i.is_numeric for i in self.phi.values()):
            problems.append("An interval Markov chain cannot have parameters")
        return problems


def instantiate(pimc: PIMC, valuation: Mapping[str, object]) -> IMC:
    """
    Replace every parameter endpoint by its value.

    Args:
        pimc: Parametric model
        valuation: Total map parameter -> rational in [0, 1]

    Returns:
        The IMC instance

    Raises:
        InvalidValuationError: On a missing, unknown or out-of-range value
    """
    missing = [p for p in pimc.parameters if p not in valuation]
    if missing:
        raise InvalidValuationError(f"No value for parameters: {', '.join(missing)}")
    unknown = sorted(set(valuation) - set(pimc.parameters))
    if unknown:
        raise InvalidValuationError(f"Unknown parameters: {', '.join(unknown)}")
    exact: Dict[str, Fraction] = {}
    for name in pimc.parameters:
        try:
            value = to_fraction(valuation[name])
        except (TypeError, ValueError) as e:
            raise InvalidValuationError(f"Invalid value for {name}: {e}")
        if not 0 <= value <= 1:
            raise InvalidValuationError(f"Parameter {name} must lie in [0, 1], got {value}")
        exact[name] = value
    phi = {pair: interval.substitute(exact) for pair, interval in pimc.phi.items()}
    return IMC(pimc.states, pimc.initial, phi, pimc.props, pimc.labels, ())


def point_imc(mc: MC) -> IMC:
    """The IMC whose intervals are the single probabilities of `mc`."""
    phi = {pair: ParamInterval(p, p) for pair, p in mc.matrix.items() if p > 0}
    return IMC(mc.states, mc.initial, phi, mc.props, mc.labels, ())
