"""Parsers for the model file formats: pta, pimc, imc, mc, mts and ppn."""

from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union
import logging

from ..arctl.model import MTS
from ..constraints import ConvexConstraint, Var, clocks as clock_vars, parameters as parameter_vars
from ..core.errors import SemanticError
from ..pimc.model import IMC, MC, PIMC, Endpoint, ParamInterval
from ..ppn.model import PPN, Weight
from ..pta.model import PTA, Edge, ParameterInterval
from .lexer import TokenKind
from .parser import ConstraintParser, TokenStream

logger = logging.getLogger(__name__)

Model = Union[PTA, PIMC, MC, MTS, PPN]


class ModelKind(str, Enum):
    """Model file formats."""
    PTA = "pta"
    PIMC = "pimc"
    IMC = "imc"
    MC = "mc"
    MTS = "mts"
    PPN = "ppn"


def _names(stream: TokenStream) -> List[str]:
    """One or more names, optionally comma-separated, up to `;`."""
    names = [stream.expect_ident().text]
    while not stream.at_symbol(";"):
        stream.accept_symbol(",")
        names.append(stream.expect_ident().text)
    return names


def _check(model, problems: List[str]):
    problems = problems + model.problems()
    if problems:
        raise SemanticError(problems)
    return model


def _start(stream: TokenStream):
    if stream.at_end():
        raise stream.error("Empty model", "a declaration")


# ============================================================================
# PARAMETRIC TIMED AUTOMATA
# ============================================================================

class PTAParser:
    """
    `clocks`, `params`, `actions`, `bound`, `loc`, `init`, `accepting`, `edge`.

    Clocks and parameters must be declared before the first constraint.
    """

    def __init__(self, stream: TokenStream):
        self.stream = stream
        self.clocks: List[str] = []
        self.params: List[str] = []
        self.actions: List[str] = []
        self.locations: List[str] = []
        self.invariants: Dict[str, ConvexConstraint] = {}
        self.edges: List[Edge] = []
        self.intervals: Dict[str, ParameterInterval] = {}
        self.initial: Optional[str] = None
        self.accepting: List[str] = []
        self.problems: List[str] = []
        self._context: Optional[Tuple[Var, ...]] = None

    @property
    def context(self) -> Tuple[Var, ...]:
        if self._context is None:
            self._context = clock_vars(*self.clocks) + parameter_vars(*self.params)
        return self._context

    def constraint(self) -> ConvexConstraint:
        return ConstraintParser(self.stream, self.context).constraint()

    def parse(self) -> PTA:
        stream = self.stream
        _start(stream)
        while not stream.at_end():
            keyword = stream.expect_word(
                "clocks", "params", "actions", "bound", "loc", "init", "accepting", "edge"
            )
            getattr(self, f"_{keyword.text}")(keyword)
            stream.expect_symbol(";")
        if self.initial is None:
            self.problems.append("No initial location declared")
        declared = set(self.actions) or {e.action for e in self.edges}
        pta = PTA(
            actions=frozenset(declared),
            locations=tuple(self.locations),
            initial=self.initial or "",
            accepting=frozenset(self.accepting),
            clocks=self.context[:len(self.clocks)],
            parameters=self.context[len(self.clocks):],
            invariants=self.invariants,
            edges=tuple(self.edges),
            intervals=self.intervals,
        )
        return _check(pta, self.problems)

    def _variables(self, keyword, target: List[str]):
        if self._context is not None:
            raise self.stream.error(f"'{keyword.text}' must come before any constraint", token=keyword)
        target.extend(_names(self.stream))

    def _clocks(self, keyword):
        self._variables(keyword, self.clocks)

    def _params(self, keyword):
        self._variables(keyword, self.params)

    def _actions(self, keyword):
        self.actions.extend(_names(self.stream))

    def _bound(self, keyword):
        stream = self.stream
        name = stream.expect_ident("a parameter name")
        if not stream.at_symbol("[", "("):
            raise stream.error(f"Unexpected {stream.current.describe()}", "'[' or '('")
        lower_open = stream.advance().text == "("
        lower = stream.rational()
        stream.expect_symbol(",")
        upper = None if stream.accept_word("inf") else stream.rational()
        if not stream.at_symbol("]", ")"):
            raise stream.error(f"Unexpected {stream.current.describe()}", "']' or ')'")
        upper_open = stream.advance().text == ")"
        if name.text in self.intervals:
            self.problems.append(f"Bounds of {name.text} given twice")
        self.intervals[name.text] = ParameterInterval(lower, upper, lower_open, upper_open)

    def _loc(self, keyword):
        stream = self.stream
        name = stream.expect_ident("a location name").text
        self.locations.append(name)
        if stream.accept_word("invariant"):
            self.invariants[name] = self.constraint()

    def _init(self, keyword):
        name = self.stream.expect_ident("a location name").text
        if self.initial is not None:
            self.problems.append("Initial location declared twice")
        self.initial = name

    def _accepting(self, keyword):
        self.accepting.extend(_names(self.stream))

    def _edge(self, keyword):
        stream = self.stream
        source = stream.expect_ident("a location name").text
        stream.expect_symbol("->")
        target = stream.expect_ident("a location name").text
        stream.expect_word("sync")
        action = stream.expect_ident("an action name").text
        guard = self.constraint() if stream.accept_word("guard") else ConvexConstraint.true(self.context)
        resets: List[str] = []
        if stream.accept_word("reset"):
            resets, _ = stream.name_set()
        self.edges.append(Edge(source, guard, action, frozenset(resets), target))


# ============================================================================
# MARKOV CHAINS AND INTERVAL MARKOV CHAINS
# ============================================================================

class ChainParser:
    """`params`, `props`, `state`, `init` and `trans` for mc, imc and pimc files."""

    def __init__(self, stream: TokenStream, kind: ModelKind):
        self.stream = stream
        self.kind = kind
        self.params: List[str] = []
        self.states: List[str] = []
        self.props: List[str] = []
        self.labels: Dict[str, frozenset] = {}
        self.initial: Optional[str] = None
        self.entries: Dict[Tuple[str, str], object] = {}
        self.problems: List[str] = []

    def parse(self) -> Union[MC, PIMC]:
        stream = self.stream
        _start(stream)
        allowed = ["props", "state", "init", "trans"]
        if self.kind is ModelKind.PIMC:
            allowed.append("params")
        while not stream.at_end():
            keyword = stream.expect_word(*allowed)
            getattr(self, f"_{keyword.text}")()
            stream.expect_symbol(";")
        if not self.states:
            self.problems.append("No state declared")
        initial = self.initial or (self.states[0] if self.states else "")
        props = frozenset(self.props).union(*self.labels.values())
        if self.kind is ModelKind.MC:
            model = MC(tuple(self.states), initial, self.entries, props, self.labels)
        elif self.kind is ModelKind.IMC:
            model = IMC(tuple(self.states), initial, self.entries, props, self.labels, ())
        else:
            model = PIMC(tuple(self.states), initial, self.entries, props, self.labels, tuple(self.params))
        return _check(model, self.problems)

    def _params(self):
        self.params.extend(_names(self.stream))

    def _props(self):
        self.props.extend(_names(self.stream))

    def _state(self):
        stream = self.stream
        name = stream.expect_ident("a state name").text
        self.states.append(name)
        if stream.accept_word("labels"):
            labels, _ = stream.name_set()
            self.labels[name] = frozenset(labels)

    def _init(self):
        if self.initial is not None:
            self.problems.append("Initial state declared twice")
        self.initial = self.stream.expect_ident("a state name").text

    def _endpoint(self) -> Endpoint:
        stream = self.stream
        if stream.current.kind == TokenKind.IDENT:
            return stream.advance().text
        return stream.rational()

    def _trans(self):
        stream = self.stream
        source = stream.expect_ident("a state name").text
        stream.expect_symbol("->")
        target = stream.expect_ident("a state name").text
        if (source, target) in self.entries:
            self.problems.append(f"Transition {source} -> {target} declared twice")
        if self.kind is ModelKind.MC:
            self.entries[(source, target)] = stream.rational()
            return
        stream.expect_symbol("[")
        low = self._endpoint()
        stream.expect_symbol(",")
        up = self._endpoint()
        stream.expect_symbol("]")
        self.entries[(source, target)] = ParamInterval(low, up)


# ============================================================================
# MIXED TRANSITION SYSTEMS
# ============================================================================

class MTSParser:
    """`actions`, `vars`, `props`, `state`, `init` and `trans s -a-> t`."""

    def __init__(self, stream: TokenStream):
        self.stream = stream
        self.actions: List[str] = []
        self.variables: List[str] = []
        self.states: List[str] = []
        self.props: List[str] = []
        self.labels: Dict[str, frozenset] = {}
        self.initial: Optional[str] = None
        self.transitions: List[Tuple[str, str, str]] = []
        self.problems: List[str] = []

    def parse(self) -> MTS:
        stream = self.stream
        _start(stream)
        while not stream.at_end():
            keyword = stream.expect_word("actions", "vars", "props", "state", "init", "trans")
            getattr(self, f"_{keyword.text}")()
            stream.expect_symbol(";")
        if not self.states:
            self.problems.append("No state declared")
        if len(set(self.transitions)) != len(self.transitions):
            self.problems.append("Duplicate transitions")
        initial = self.initial or (self.states[0] if self.states else "")
        props = frozenset(self.props).union(*self.labels.values())
        mts = MTS(
            tuple(self.states), initial, tuple(self.actions), tuple(self.transitions),
            self.labels, props, tuple(self.variables),
        )
        return _check(mts, self.problems)

    def _actions(self):
        self.actions.extend(_names(self.stream))

    def _vars(self):
        self.variables.extend(_names(self.stream))

    def _props(self):
        self.props.extend(_names(self.stream))

    def _state(self):
        stream = self.stream
        name = stream.expect_ident("a state name").text
        self.states.append(name)
        if stream.accept_word("labels"):
            labels, _ = stream.name_set()
            self.labels[name] = frozenset(labels)

    def _init(self):
        if self.initial is not None:
            self.problems.append("Initial state declared twice")
        self.initial = self.stream.expect_ident("a state name").text

    def _trans(self):
        stream = self.stream
        source = stream.expect_ident("a state name").text
        stream.expect_symbol("-")
        action = stream.expect_ident("an action name").text
        stream.expect_symbol("->")
        target = stream.expect_ident("a state name").text
        self.transitions.append((source, action, target))


# ============================================================================
# PARAMETRIC PETRI NETS
# ============================================================================

class PPNParser:
    """`params`, `place NAME [init W]` and `trans NAME [pre {...}] [post {...}]`."""

    def __init__(self, stream: TokenStream):
        self.stream = stream
        self.params: List[str] = []
        self.places: List[str] = []
        self.transitions: List[str] = []
        self.pre: Dict[Tuple[str, str], Weight] = {}
        self.post: Dict[Tuple[str, str], Weight] = {}
        self.initial: Dict[str, Weight] = {}

    def parse(self) -> PPN:
        stream = self.stream
        _start(stream)
        while not stream.at_end():
            keyword = stream.expect_word("params", "place", "trans")
            getattr(self, f"_{keyword.text}")()
            stream.expect_symbol(";")
        net = PPN(
            tuple(self.places), tuple(self.transitions), tuple(self.params),
            self.pre, self.post, self.initial,
        )
        return _check(net, [])

    def _weight(self) -> Weight:
        stream = self.stream
        if stream.current.kind == TokenKind.IDENT:
            return stream.advance().text
        return stream.natural()

    def _params(self):
        self.params.extend(_names(self.stream))

    def _place(self):
        stream = self.stream
        name = stream.expect_ident("a place name").text
        self.places.append(name)
        if stream.accept_word("init"):
            self.initial[name] = self._weight()

    def _arcs(self, transition: str, into: Dict[Tuple[str, str], Weight]):
        stream = self.stream
        stream.expect_symbol("{")

        def arc():
            place = stream.expect_ident("a place name")
            stream.expect_symbol(":")
            if (place.text, transition) in into:
                raise stream.error(f"Place {place.text} listed twice", token=place)
            into[(place.text, transition)] = self._weight()

        stream.separated(arc, "}")

    def _trans(self):
        stream = self.stream
        name = stream.expect_ident("a transition name").text
        self.transitions.append(name)
        if stream.accept_word("pre"):
            self._arcs(name, self.pre)
        if stream.accept_word("post"):
            self._arcs(name, self.post)


# ============================================================================
# ENTRY POINTS
# ============================================================================

def parse_model(text: str, kind: Union[ModelKind, str], file: str = "<model>") -> Model:
    """
    Parse a model and validate it.

    Args:
        text: Model source
        kind: One of pta, pimc, imc, mc, mts, ppn
        file: Name used in diagnostics

    Returns:
        The typed model

    Raises:
        ParseError: On a syntax error, with its span
        SemanticError: Listing every violated model invariant

    Examples:
        >>> coffee = parse_model(Path("corpus/coffee.pta").read_text(), "pta")
        >>> len(coffee.locations), len(coffee.clocks), len(coffee.parameters)
        (4, 2, 3)
    """
    kind = ModelKind(kind)
    stream = TokenStream(text, file)
    if kind is ModelKind.PTA:
        model = PTAParser(stream).parse()
    elif kind is ModelKind.MTS:
        model = MTSParser(stream).parse()
    elif kind is ModelKind.PPN:
        model = PPNParser(stream).parse()
    else:
        model = ChainParser(stream, kind).parse()
    logger.info(f"Parsed {kind.value} model from {file}")
    return model


def load_model(path: Union[str, Path], kind: Union[ModelKind, str, None] = None) -> Model:
    """Read and parse a model file; the kind defaults to the file extension."""
    path = Path(path)
    kind = kind or path.suffix.lstrip(".")
    return parse_model(path.read_text(encoding="utf-8"), kind, str(path))
