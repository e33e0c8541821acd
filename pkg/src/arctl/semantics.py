"""Formula evaluation under a fixed valuation, and explicit maximal paths."""

from dataclasses import dataclass
from typing import Callable, FrozenSet, List, Optional, Set, Tuple
import logging

from ..core.errors import UnboundVariableError
from .model import EG, EU, EX, MTS, Alpha, EGInfinite, Formula, Not, Or, Prop, Top, formula_variables
from .valuations import ParamValuation

logger = logging.getLogger(__name__)

States = FrozenSet[str]


def resolve_alpha(alpha: Alpha, valuation: ParamValuation) -> FrozenSet[str]:
    if isinstance(alpha, str):
        try:
            return valuation[alpha]
        except KeyError:
            raise UnboundVariableError(f"The valuation does not bind {alpha!r}")
    return frozenset(alpha)


def pre(mts: MTS, actions: FrozenSet[str], targets: States) -> States:
    """States with an `actions`-transition into `targets`."""
    return frozenset(s for s, a, t in mts.transitions if a in actions and t in targets)


def _fixed_point(start: States, step: Callable[[States], States]) -> States:
    current = start
    while True:
        following = step(current)
        if following == current:
            return current
        current = following


def satisfying_states(mts: MTS, valuation: ParamValuation, formula: Formula) -> States:
    """All states satisfying `formula` when variables take the actions of `valuation`."""
    missing = sorted(formula_variables(formula) - valuation.variables)
    if missing:
        raise UnboundVariableError(f"The valuation does not bind {', '.join(missing)}")
    every = frozenset(mts.states)

    def sat(node: Formula) -> States:
        if isinstance(node, Top):
            return every
        if isinstance(node, Prop):
            return frozenset(s for s in mts.states if node.name in mts.label(s))
        if isinstance(node, Not):
            return every - sat(node.operand)
        if isinstance(node, Or):
            return sat(node.left) | sat(node.right)
        actions = resolve_alpha(node.alpha, valuation)
        if isinstance(node, EX):
            return pre(mts, actions, sat(node.operand))
        if isinstance(node, EGInfinite):
            inner = sat(node.operand)
            return _fixed_point(inner, lambda x: inner & pre(mts, actions, x))
        if isinstance(node, EG):
            inner = sat(node.operand)
            deadlocked = every - pre(mts, actions, every)
            return _fixed_point(inner, lambda x: inner & (pre(mts, actions, x) | deadlocked))
        left, right = sat(node.left), sat(node.right)
        return _fixed_point(frozenset(), lambda x: right | (left & pre(mts, actions, x)))

    return sat(formula)


def eval_fixed(mts: MTS, valuation: ParamValuation, formula: Formula, state: str) -> bool:
    """
    Truth of `formula` at `state` under a fixed valuation.

    Examples:
        >>> eval_fixed(robot, ParamValuation.of({"Y": ["left"], "Z": ["forw"]}), safe_everywhere, "s0")
        True
    """
    mts.check_state(state)
    return state in satisfying_states(mts, valuation, formula)


# ============================================================================
# EXPLICIT PATHS
# ============================================================================

@dataclass(frozen=True)
class Path:
    """
    A path over an action set.

    `loop_start` is the index of the state the last transition returns to
    for folded infinite paths; `truncated` marks paths cut at the bound.
    """
    states: Tuple[str, ...]
    actions: Tuple[str, ...]
    loop_start: Optional[int] = None
    truncated: bool = False

    @property
    def is_infinite(self) -> bool:
        return self.loop_start is not None

    @property
    def is_maximal_finite(self) -> bool:
        return self.loop_start is None and not self.truncated

    def __str__(self) -> str:
        parts = [self.states[0]]
        for action, state in zip(self.actions, self.states[1:]):
            parts.extend((action, state))
        text = "(" + ", ".join(parts) + ")"
        if self.loop_start is not None:
            text += f" -{self.actions[-1]}-> back to {self.states[self.loop_start]}"
        return text


def enumerate_paths(mts: MTS, actions: FrozenSet[str], state: str, bound: int) -> List[Path]:
    """
    Every maximal path over `actions` from `state`.

    A path ending in a state with no `actions`-transition is finite and
    maximal. A transition back into a state already on the path closes a
    lasso. Paths reaching `bound` states are cut and marked truncated. Each
    path is listed once.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    mts.check_state(state)
    paths: List[Path] = []
    seen: Set[Path] = set()

    def emit(path: Path):
        if path not in seen:
            seen.add(path)
            paths.append(path)

    def extend(states: List[str], taken: List[str]):
        current = states[-1]
        moves = [(a, t) for a, t in mts.outgoing(current) if a in actions]
        if not moves:
            emit(Path(tuple(states), tuple(taken)))
            return
        for action, target in moves:
            if target in states:
                emit(Path(tuple(states), tuple(taken + [action]), states.index(target)))
            elif len(states) >= bound:
                emit(Path(tuple(states), tuple(taken), truncated=True))
            else:
                extend(states + [target], taken + [action])

    extend([state], [])
    return paths
