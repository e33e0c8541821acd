"""Parametric Petri nets: weights, markings, firing and subclasses."""

from dataclasses import dataclass, field
from fractions import Fraction
from math import inf
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple, Union
import logging

from ..core.errors import InvalidValuationError, StepRejectedError, UnknownStateError

logger = logging.getLogger(__name__)

# Token count standing for "arbitrarily many"; absorbs addition and subtraction
OMEGA = inf

# A natural number, OMEGA, or the name of a parameter
Weight = Union[int, float, str]
Marking = Tuple[Union[int, float], ...]


def render_count(count: Union[int, float]) -> str:
    return "ω" if count == OMEGA else str(count)


@dataclass(frozen=True)
class PPN:
    """
    A Petri net whose arc weights and initial tokens may be parameters.

    `pre` and `post` map (place, transition) to a weight; absent entries are 0.
    Markings are tuples aligned with `places`.
    """
    places: Tuple[str, ...]
    transitions: Tuple[str, ...]
    parameters: Tuple[str, ...] = ()
    pre: Mapping[Tuple[str, str], Weight] = field(default_factory=dict)
    post: Mapping[Tuple[str, str], Weight] = field(default_factory=dict)
    initial: Mapping[str, Weight] = field(default_factory=dict)

    def pre_weight(self, place: str, transition: str) -> Weight:
        return self.pre.get((place, transition), 0)

    def post_weight(self, place: str, transition: str) -> Weight:
        return self.post.get((place, transition), 0)

    def _params_of(self, weights) -> FrozenSet[str]:
        return frozenset(w for w in weights if isinstance(w, str))

    @property
    def pre_parameters(self) -> FrozenSet[str]:
        return self._params_of(self.pre.values())

    @property
    def post_parameters(self) -> FrozenSet[str]:
        return self._params_of(self.post.values())

    @property
    def initial_parameters(self) -> FrozenSet[str]:
        return self._params_of(self.initial.values())

    @property
    def is_numeric(self) -> bool:
        return not (self.pre_parameters or self.post_parameters or self.initial_parameters)

    def index(self, place: str) -> int:
        try:
            return self.places.index(place)
        except ValueError:
            raise UnknownStateError(f"Unknown place {place!r}")

    def marking(self, tokens: Mapping[str, Union[int, float]]) -> Marking:
        """Marking with the given tokens and zero elsewhere."""
        counts = [0] * len(self.places)
        for place, count in tokens.items():
            counts[self.index(place)] = count
        return tuple(counts)

    def initial_marking(self) -> Marking:
        if self.initial_parameters:
            raise ValueError("The initial marking is parametric; instantiate the net first")
        return tuple(self.initial.get(p, 0) for p in self.places)

    def render(self, marking: Marking) -> str:
        tokens = [f"{p}: {render_count(c)}" for p, c in zip(self.places, marking) if c]
        return "{" + ", ".join(tokens) + "}"

    def problems(self) -> List[str]:
        problems: List[str] = []
        places, transitions = set(self.places), set(self.transitions)
        declared = set(self.parameters)
        if len(places) != len(self.places):
            problems.append("Duplicate place names")
        if len(transitions) != len(self.transitions):
            problems.append("Duplicate transition names")
        for name in sorted(places & transitions):
            problems.append(f"{name!r} is both a place and a transition")
        for label, weights in (("pre", self.pre), ("post", self.post)):
            for (place, transition), weight in weights.items():
                if place not in places:
                    problems.append(f"The {label} arc of {transition} uses undeclared place {place!r}")
                if transition not in transitions:
                    problems.append(f"The {label} arc {place} uses undeclared transition {transition!r}")
                problems.extend(_weight_problems(weight, declared, f"{label} weight of {place} in {transition}"))
        for place, weight in self.initial.items():
            if place not in places:
                problems.append(f"Initial tokens given for undeclared place {place!r}")
            problems.extend(_weight_problems(weight, declared, f"initial tokens of {place}"))
        return problems


def _weight_problems(weight: Weight, declared, label: str) -> List[str]:
    if isinstance(weight, str):
        return [] if weight in declared else [f"The {label} uses undeclared parameter {weight!r}"]
    if weight != OMEGA and (weight < 0 or weight != int(weight)):
        return [f"The {label} must be a natural number, got {weight}"]
    return []


# ============================================================================
# SUBCLASSES
# ============================================================================

@dataclass(frozen=True)
class Subclass:
    """Where parameters occur; initial-marking parameters count as output side."""
    is_pre_t: bool
    is_post_t: bool
    is_distinct_t: bool
    is_p: bool
    is_plain: bool

    def names(self) -> List[str]:
        flags = [
            ("preT", self.is_pre_t), ("postT", self.is_post_t),
            ("distinctT", self.is_distinct_t), ("P", self.is_p), ("plain", self.is_plain),
        ]
        return [name for name, flag in flags if flag]


def classify(net: PPN) -> Subclass:
    """
    Subclass flags of a net.

    Examples:
        >>> classify(loan).names()
        []
    """
    pre = net.pre_parameters
    post = net.post_parameters | net.initial_parameters
    return Subclass(
        is_pre_t=not post,
        is_post_t=not pre,
        is_distinct_t=not (pre & post),
        is_p=not pre and not net.post_parameters,
        is_plain=net.is_numeric,
    )


# ============================================================================
# INSTANCES AND FIRING
# ============================================================================

def check_valuation(net: PPN, valuation: Mapping[str, object]) -> Dict[str, int]:
    """Validate a total valuation of the parameters by natural numbers."""
    missing = [p for p in net.parameters if p not in valuation]
    if missing:
        raise InvalidValuationError(f"No value for parameters: {', '.join(missing)}")
    unknown = sorted(set(valuation) - set(net.parameters))
    if unknown:
        raise InvalidValuationError(f"Unknown parameters: {', '.join(unknown)}")
    exact: Dict[str, int] = {}
    for name in net.parameters:
        value = valuation[name]
        if isinstance(value, str):
            try:
                value = Fraction(value)
            except ValueError:
                raise InvalidValuationError(f"Invalid value for {name}: {value!r}")
        if isinstance(value, bool) or isinstance(value, float) or value != int(value) or value < 0:
            raise InvalidValuationError(f"Parameter {name} must be a natural number, got {value}")
        exact[name] = int(value)
    return exact


def _substitute(weights: Mapping, replace) -> Dict:
    return {key: replace(w) if isinstance(w, str) else w for key, w in weights.items()}


def instantiate(net: PPN, valuation: Mapping[str, object]) -> PPN:
    """
    The plain net with every parameter replaced by its value.

    Raises:
        InvalidValuationError: On a missing, unknown, negative or non-integer value
    """
    values = check_valuation(net, valuation)
    replace = values.__getitem__
    return PPN(
        net.places, net.transitions, (),
        _substitute(net.pre, replace), _substitute(net.post, replace), _substitute(net.initial, replace),
    )


def omega_net(net: PPN) -> PPN:
    """Output-side parameters (post weights and initial tokens) replaced by OMEGA."""
    if net.pre_parameters:
        raise ValueError("Input weights cannot be read as OMEGA")
    replace = lambda _: OMEGA  # noqa: E731
    return PPN(
        net.places, net.transitions, (),
        dict(net.pre), _substitute(net.post, replace), _substitute(net.initial, replace),
    )


def enabled(net: PPN, marking: Marking, transition: str) -> bool:
    return all(marking[i] >= net.pre_weight(p, transition) for i, p in enumerate(net.places))


def fire(net: PPN, marking: Marking, transition: str) -> Optional[Marking]:
    """
    Marking after firing `transition`, None when it is not enabled.

    Examples:
        >>> net = PPN(("p0", "p1"), ("t",), pre={("p0", "t"): 1}, post={("p1", "t"): 1})
        >>> fire(net, (1, 0), "t")
        (0, 1)
    """
    if not net.is_numeric:
        raise ValueError("Only nets without parameters can fire")
    if transition not in net.transitions:
        raise UnknownStateError(f"Unknown transition {transition!r}")
    if not enabled(net, marking, transition):
        return None
    return tuple(
        count - net.pre_weight(p, transition) + net.post_weight(p, transition)
        for p, count in zip(net.places, marking)
    )


def replay_sequence(net: PPN, sequence: Sequence[str], marking: Optional[Marking] = None) -> List[Marking]:
    """
    Fire a whole sequence and return every marking visited, start included.

    Raises:
        StepRejectedError: On the first transition that is not enabled
    """
    current = net.initial_marking() if marking is None else marking
    visited = [current]
    for step, transition in enumerate(sequence, start=1):
        following = fire(net, current, transition)
        if following is None:
            raise StepRejectedError(step, f"{transition} is not enabled in {net.render(current)}")
        current = following
        visited.append(current)
    return visited


def dominates(marking: Marking, target: Marking) -> bool:
    return all(have >= need for have, need in zip(marking, target))
