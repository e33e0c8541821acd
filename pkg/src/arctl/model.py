"""Mixed transition systems and the abstract syntax of parametric action formulas."""

from dataclasses import dataclass, field
from typing import FrozenSet, List, Mapping, Tuple, Union
import logging

from ..core.errors import UnknownStateError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MTS:
    """
    A mixed transition system with the action variables formulas may use.

    Transitions are (source, action, target) triples in declaration order.
    """
    states: Tuple[str, ...]
    initial: str
    actions: Tuple[str, ...]
    transitions: Tuple[Tuple[str, str, str], ...]
    labels: Mapping[str, FrozenSet[str]] = field(default_factory=dict)
    props: FrozenSet[str] = frozenset()
    variables: Tuple[str, ...] = ()

    def label(self, state: str) -> FrozenSet[str]:
        return self.labels.get(state, frozenset())

    def outgoing(self, state: str) -> List[Tuple[str, str]]:
        return [(a, t) for s, a, t in self.transitions if s == state]

    def check_state(self, state: str):
        if state not in self.states:
            raise UnknownStateError(f"Unknown state {state!r}")

    def problems(self) -> List[str]:
        problems: List[str] = []
        known = set(self.states)
        if not self.actions:
            problems.append("The action alphabet must not be empty")
        if len(set(self.actions)) != len(self.actions):
            problems.append("Duplicate action names")
        if len(known) != len(self.states):
            problems.append("Duplicate state names")
        if self.initial not in known:
            problems.append(f"Initial state {self.initial!r} is not declared")
        for source, action, target in self.transitions:
            if source not in known or target not in known:
                problems.append(f"Transition {source} -{action}-> {target} uses an undeclared state")
            if action not in self.actions:
                problems.append(f"Transition {source} -{action}-> {target} uses undeclared action {action!r}")
        for name in self.variables:
            if name in self.actions:
                problems.append(f"Variable {name!r} clashes with an action name")
        for state, props in self.labels.items():
            if state not in known:
                problems.append(f"Labels given for undeclared state {state!r}")
            for prop in sorted(props - self.props):
                problems.append(f"State {state} is labelled with undeclared proposition {prop!r}")
        return problems


# ============================================================================
# FORMULAS
# ============================================================================

# An action-set variable name, or a concrete non-empty action set
Alpha = Union[str, FrozenSet[str]]


def render_alpha(alpha: Alpha) -> str:
    if isinstance(alpha, str):
        return alpha
    return "{" + ", ".join(sorted(alpha)) + "}"


@dataclass(frozen=True)
class Top:
    def __str__(self) -> str:
        return "true"


@dataclass(frozen=True)
class Prop:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Not:
    operand: "Formula"

    def __str__(self) -> str:
        if isinstance(self.operand, Top):
            return "false"
        return f"!{_wrap(self.operand)}"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return f"{_wrap(self.left)} | {_wrap(self.right)}"


@dataclass(frozen=True)
class EX:
    alpha: Alpha
    operand: "Formula"

    def __str__(self) -> str:
        return f"E[{render_alpha(self.alpha)}] X {_wrap(self.operand)}"


@dataclass(frozen=True)
class EG:
    """Some maximal path, finite or infinite, stays in the operand."""
    alpha: Alpha
    operand: "Formula"

    def __str__(self) -> str:
        return f"E[{render_alpha(self.alpha)}] G {_wrap(self.operand)}"


@dataclass(frozen=True)
class EGInfinite:
    """Some infinite path stays in the operand."""
    alpha: Alpha
    operand: "Formula"

    def __str__(self) -> str:
        return f"Ew[{render_alpha(self.alpha)}] G {_wrap(self.operand)}"


@dataclass(frozen=True)
class EU:
    alpha: Alpha
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return f"E[{render_alpha(self.alpha)}]({self.left} U {self.right})"


Formula = Union[Top, Prop, Not, Or, EX, EG, EGInfinite, EU]


def _wrap(formula: Formula) -> str:
    text = str(formula)
    if isinstance(formula, (Or, EX, EG, EGInfinite)):
        return f"({text})"
    return text


def conj(left: Formula, right: Formula) -> Formula:
    """left and right, as the negated disjunction of negations."""
    return Not(Or(Not(left), Not(right)))


def eventually(alpha: Alpha, operand: Formula) -> Formula:
    """E[alpha] F operand, as E[alpha](true U operand)."""
    return EU(alpha, Top(), operand)


def formula_variables(formula: Formula) -> FrozenSet[str]:
    """Action variables the formula quantifies over."""
    if isinstance(formula, (Top, Prop)):
        return frozenset()
    if isinstance(formula, Not):
        return formula_variables(formula.operand)
    if isinstance(formula, Or):
        return formula_variables(formula.left) | formula_variables(formula.right)
    own = frozenset([formula.alpha]) if isinstance(formula.alpha, str) else frozenset()
    if isinstance(formula, EU):
        return own | formula_variables(formula.left) | formula_variables(formula.right)
    return own | formula_variables(formula.operand)


def formula_problems(formula: Formula, mts: MTS) -> List[str]:
    """Undeclared variables, propositions or actions, and empty action sets."""
    problems: List[str] = []
    declared = set(mts.variables)
    for name in sorted(formula_variables(formula) - declared):
        problems.append(f"Formula uses undeclared action variable {name!r}")

    def visit(node: Formula):
        if isinstance(node, Prop) and node.name not in mts.props:
            problems.append(f"Formula uses undeclared proposition {node.name!r}")
        if isinstance(node, (EX, EG, EGInfinite, EU)) and not isinstance(node.alpha, str):
            if not node.alpha:
                problems.append("Concrete action sets must not be empty")
            for action in sorted(node.alpha - set(mts.actions)):
                problems.append(f"Formula uses undeclared action {action!r}")
        for child in _children(node):
            visit(child)

    visit(formula)
    return problems


def _children(node: Formula) -> Tuple[Formula, ...]:
    if isinstance(node, (Top, Prop)):
        return ()
    if isinstance(node, Or):
        return (node.left, node.right)
    if isinstance(node, EU):
        return (node.left, node.right)
    return (node.operand,)
