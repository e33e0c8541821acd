"""Parameter valuations of action variables and bitmask-backed valuation sets."""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple
import logging

from ..core.errors import TooManyValuationsError

logger = logging.getLogger(__name__)

DEFAULT_MAX_ACTIONS = 8
DEFAULT_MAX_VARIABLES = 3


@dataclass(frozen=True, order=True)
class ParamValuation:
    """Assignment of a non-empty action set to every variable, sorted by variable."""
    assignment: Tuple[Tuple[str, Tuple[str, ...]], ...]

    @classmethod
    def of(cls, mapping: Mapping[str, object]) -> "ParamValuation":
        items = []
        for name, actions in mapping.items():
            actions = tuple(sorted(actions))
            if not actions:
                raise ValueError(f"Variable {name} must be assigned a non-empty action set")
            items.append((name, actions))
        return cls(tuple(sorted(items)))

    def __getitem__(self, name: str) -> FrozenSet[str]:
        for variable, actions in self.assignment:
            if variable == name:
                return frozenset(actions)
        raise KeyError(name)

    def as_dict(self) -> Dict[str, FrozenSet[str]]:
        return {n: frozenset(a) for n, a in self.assignment}

    @property
    def variables(self) -> FrozenSet[str]:
        return frozenset(n for n, _ in self.assignment)

    def included_in(self, other: "ParamValuation") -> bool:
        """Pointwise inclusion of action sets."""
        mine = self.as_dict()
        return all(mine[n] <= other[n] for n in mine)

    def __str__(self) -> str:
        parts = [f"{n}={{{', '.join(a)}}}" for n, a in self.assignment]
        return "(" + ", ".join(parts) + ")"


def _repunit(block: int, count: int) -> int:
    """Bit pattern repeating a `block`-bit field `count` times, lowest bit of each field set."""
    if count == 0:
        return 0
    return ((1 << (block * count)) - 1) // ((1 << block) - 1)


class ValuationUniverse:
    """
    All valuations of `variables` over non-empty subsets of `actions`.

    A valuation is numbered in mixed radix: variable i contributes digit
    d_i in [0, 2^|A| - 2], where d_i + 1 is the bitmask of its action set
    (bit j set iff actions[j] is in the set).

    Usage:
        universe = ValuationUniverse(["Y", "Z"], ["left", "right", "forw", "back"])
        everything = universe.full()
    """

    def __init__(
        self,
        variables: Sequence[str],
        actions: Sequence[str],
        max_actions: int = DEFAULT_MAX_ACTIONS,
        max_variables: int = DEFAULT_MAX_VARIABLES,
    ):
        if len(actions) > max_actions or len(variables) > max_variables:
            raise TooManyValuationsError(
                f"{len(variables)} variables over {len(actions)} actions exceeds the caps"
                f" of {max_variables} variables and {max_actions} actions"
            )
        if not actions:
            raise ValueError("The action alphabet must not be empty")
        self.variables: Tuple[str, ...] = tuple(sorted(variables))
        self.actions: Tuple[str, ...] = tuple(actions)
        self.radix = (1 << len(self.actions)) - 1
        self.size = self.radix ** len(self.variables)
        self._all = (1 << self.size) - 1
        self._membership: Dict[Tuple[str, str], int] = {}
        logger.debug(f"Valuation universe of size {self.size}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ValuationUniverse)
            and self.variables == other.variables
            and self.actions == other.actions
        )

    def __hash__(self) -> int:
        return hash((self.variables, self.actions))

    def full(self) -> "ValuationSet":
        return ValuationSet(self, self._all)

    def empty(self) -> "ValuationSet":
        return ValuationSet(self, 0)

    def index(self, valuation: ParamValuation) -> int:
        index = 0
        for position, name in enumerate(self.variables):
            mask = 0
            for action in valuation[name]:
                mask |= 1 << self.actions.index(action)
            index += (mask - 1) * self.radix ** position
        return index

    def valuation(self, index: int) -> ParamValuation:
        mapping = {}
        for name in self.variables:
            index, digit = divmod(index, self.radix)
            mask = digit + 1
            mapping[name] = [a for j, a in enumerate(self.actions) if mask >> j & 1]
        return ParamValuation.of(mapping)

    def containing(self, variable: str, action: str) -> "ValuationSet":
        """Valuations whose `variable` is assigned a set containing `action`."""
        key = (variable, action)
        if key not in self._membership:
            position = self.variables.index(variable)
            bit = self.actions.index(action)
            block = self.radix ** position
            # one period: radix blocks of `block` bits, block d set iff bit is in mask d + 1
            period = 0
            for digit in range(self.radix):
                if (digit + 1) >> bit & 1:
                    period |= ((1 << block) - 1) << (digit * block)
            length = block * self.radix
            self._membership[key] = period * _repunit(length, self.size // length)
        return ValuationSet(self, self._membership[key])

    def singletons(self) -> "ValuationSet":
        """Valuations assigning a single action to every variable."""
        bits = 0
        for index in range(self.size):
            if all(len(a) == 1 for _, a in self.valuation(index).assignment):
                bits |= 1 << index
        return ValuationSet(self, bits)


@dataclass(frozen=True)
class ValuationSet:
    """A set of valuations of one universe, stored as a bitmask over its indices."""
    universe: ValuationUniverse
    bits: int

    def _check(self, other: "ValuationSet"):
        if self.universe != other.universe:
            raise ValueError("Valuation sets over different universes")

    def __or__(self, other: "ValuationSet") -> "ValuationSet":
        self._check(other)
        return ValuationSet(self.universe, self.bits | other.bits)

    def __and__(self, other: "ValuationSet") -> "ValuationSet":
        self._check(other)
        return ValuationSet(self.universe, self.bits & other.bits)

    def complement(self) -> "ValuationSet":
        return ValuationSet(self.universe, self.universe.full().bits & ~self.bits)

    def __contains__(self, valuation: ParamValuation) -> bool:
        return bool(self.bits >> self.universe.index(valuation) & 1)

    def issubset(self, other: "ValuationSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def is_empty(self) -> bool:
        return self.bits == 0

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __iter__(self) -> Iterator[ParamValuation]:
        bits, index = self.bits, 0
        while bits:
            if bits & 1:
                yield self.universe.valuation(index)
            bits >>= 1
            index += 1

    def sorted(self) -> List[ParamValuation]:
        return sorted(self)

    def __str__(self) -> str:
        return "{" + ", ".join(str(v) for v in self.sorted()) + "}"


def minimal_valuations(valuations: ValuationSet) -> List[ParamValuation]:
    """
    The valuations of the set that are minimal under pointwise inclusion.

    Examples:
        >>> minimal_valuations(universe.full()) == universe.singletons().sorted()
        True
    """
    members = list(valuations)
    minimal = [
        v for v in members
        if not any(w != v and w.included_in(v) for w in members)
    ]
    return sorted(minimal)


def universe_for(
    variables: Sequence[str], actions: Sequence[str], caps: Optional[Mapping[str, int]] = None
) -> ValuationUniverse:
    caps = caps or {}
    return ValuationUniverse(
        variables,
        actions,
        max_actions=caps.get("max_actions", DEFAULT_MAX_ACTIONS),
        max_variables=caps.get("max_variables", DEFAULT_MAX_VARIABLES),
    )
