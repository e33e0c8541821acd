"""Query languages of the four formalisms and their checks against a model."""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, List, Tuple, Union
import logging

from ..arctl.model import MTS, Formula, formula_problems, formula_variables
from ..core.errors import SemanticError
from ..core.models import Subcommand
from ..pimc.model import PIMC
from ..ppn.model import PPN
from ..pta.model import PTA
from .formula import FormulaParser, action_set
from .parser import TokenStream

logger = logging.getLogger(__name__)


# ============================================================================
# PTA
# ============================================================================

@dataclass(frozen=True)
class EFSynthQuery:
    targets: FrozenSet[str]


@dataclass(frozen=True)
class ReachAtQuery:
    valuation: Dict[str, Fraction]
    targets: FrozenSet[str]


@dataclass(frozen=True)
class LUEmptinessQuery:
    targets: FrozenSet[str]


@dataclass(frozen=True)
class LUClassifyQuery:
    pass


@dataclass(frozen=True)
class IPCheckQuery:
    pass


@dataclass(frozen=True)
class ECCheckQuery:
    valuation: Dict[str, Fraction]


@dataclass(frozen=True)
class ReplayQuery:
    valuation: Dict[str, Fraction]
    steps: Tuple[Tuple[Fraction, str], ...]


# ============================================================================
# PIMC
# ============================================================================

@dataclass(frozen=True)
class ConsistencySynthQuery:
    pass


@dataclass(frozen=True)
class ConsistentQuery:
    valuation: Dict[str, Fraction] = field(default_factory=dict)


@dataclass(frozen=True)
class NConsistentQuery:
    state: str
    n: int
    valuation: Dict[str, Fraction] = field(default_factory=dict)


@dataclass(frozen=True)
class SatisfiesQuery:
    chain_path: str
    valuation: Dict[str, Fraction] = field(default_factory=dict)


# ============================================================================
# MTS
# ============================================================================

@dataclass(frozen=True)
class SynthesisQuery:
    formula: Formula


@dataclass(frozen=True)
class CheckQuery:
    valuation: Dict[str, FrozenSet[str]]
    formula: Formula


# ============================================================================
# PPN
# ============================================================================

class NetMode(str, Enum):
    EXISTS = "exists"
    FORALL = "forall"
    AT = "at"


class NetQueryKind(str, Enum):
    COVER = "cover"
    REACH = "reach"
    BOUNDED = "bounded"
    SIMULTANEOUS = "simultaneous"


@dataclass(frozen=True)
class NetQuery:
    kind: NetQueryKind
    mode: NetMode
    valuation: Dict[str, Fraction] = field(default_factory=dict)
    tokens: Dict[str, int] = field(default_factory=dict)
    places: FrozenSet[str] = frozenset()


Query = Union[
    EFSynthQuery, ReachAtQuery, LUEmptinessQuery, LUClassifyQuery, IPCheckQuery, ECCheckQuery, ReplayQuery,
    ConsistencySynthQuery, ConsistentQuery, NConsistentQuery, SatisfiesQuery,
    SynthesisQuery, CheckQuery, NetQuery,
]


# ============================================================================
# PARSERS
# ============================================================================

def _targets(stream: TokenStream) -> FrozenSet[str]:
    names, _ = stream.name_set()
    if not names:
        raise stream.error("The target set must not be empty")
    return frozenset(names)


def _at(stream: TokenStream, required: bool) -> Dict[str, Fraction]:
    if stream.accept_word("at"):
        return stream.valuation()
    if required:
        raise stream.error(f"Unexpected {stream.current.describe()}", "'at (...)'")
    return {}


def _step(stream: TokenStream) -> Tuple[Fraction, str]:
    stream.expect_symbol("(")
    delay = stream.rational()
    stream.expect_symbol(",")
    action = stream.expect_ident("an action name").text
    stream.expect_symbol(")")
    return delay, action


def _pta_query(stream: TokenStream) -> Query:
    keyword = stream.keyword()
    name = keyword.text
    if name == "ef-synth":
        return EFSynthQuery(_targets(stream))
    if name == "reach":
        valuation = _at(stream, required=True)
        return ReachAtQuery(valuation, _targets(stream))
    if name == "lu-emptiness":
        return LUEmptinessQuery(_targets(stream))
    if name == "lu-classify":
        return LUClassifyQuery()
    if name == "ip-check":
        return IPCheckQuery()
    if name == "ec-check":
        return ECCheckQuery(_at(stream, required=False))
    if name == "replay":
        valuation = _at(stream, required=False)
        stream.expect_symbol("[")
        steps = stream.separated(lambda: _step(stream), "]")
        return ReplayQuery(valuation, tuple(steps))
    raise stream.error(
        f"Unknown query {name!r}",
        "ef-synth, reach, lu-emptiness, lu-classify, ip-check, ec-check or replay",
        token=keyword,
    )


def _pimc_query(stream: TokenStream) -> Query:
    keyword = stream.keyword()
    name = keyword.text
    if name == "consistency-synth":
        return ConsistencySynthQuery()
    if name == "consistent":
        return ConsistentQuery(_at(stream, required=False))
    if name == "n-consistent":
        state = stream.expect_ident("a state name").text
        n = stream.natural()
        return NConsistentQuery(state, n, _at(stream, required=False))
    if name == "satisfies":
        path = stream.raw_word("a Markov chain file")
        return SatisfiesQuery(path, _at(stream, required=False))
    raise stream.error(
        f"Unknown query {name!r}", "consistency-synth, consistent, n-consistent or satisfies", token=keyword
    )


def _mts_query(stream: TokenStream) -> Query:
    if stream.at_word("check") and stream.peek().text == "at":
        stream.advance()
        stream.advance()
        stream.expect_symbol("(")
        valuation: Dict[str, FrozenSet[str]] = {}

        def entry():
            name = stream.expect_ident("an action variable")
            stream.expect_symbol("=")
            opener = stream.current
            actions = action_set(stream)
            if not actions:
                raise stream.error("Action sets must not be empty", token=opener)
            valuation[name.text] = actions

        stream.separated(entry, ")")
        return CheckQuery(valuation, FormulaParser(stream).formula())
    return SynthesisQuery(FormulaParser(stream).formula())


def _marking(stream: TokenStream) -> Dict[str, int]:
    stream.expect_symbol("{")
    tokens: Dict[str, int] = {}

    def entry():
        place = stream.expect_ident("a place name")
        stream.expect_symbol(":")
        if place.text in tokens:
            raise stream.error(f"Place {place.text} listed twice", token=place)
        tokens[place.text] = stream.natural()

    stream.separated(entry, "}")
    return tokens


def _ppn_query(stream: TokenStream) -> Query:
    mode = NetMode.AT
    valuation: Dict[str, Fraction] = {}
    if stream.accept_word("exists"):
        mode = NetMode.EXISTS
    elif stream.accept_word("forall"):
        mode = NetMode.FORALL
    keyword = stream.expect_word("cover", "reach", "bounded", "simultaneous")
    kind = NetQueryKind(keyword.text)
    tokens: Dict[str, int] = {}
    places: FrozenSet[str] = frozenset()
    if kind in (NetQueryKind.COVER, NetQueryKind.REACH):
        tokens = _marking(stream)
    elif kind is NetQueryKind.SIMULTANEOUS:
        places = _targets(stream)
    if mode is NetMode.AT:
        valuation = _at(stream, required=False)
    return NetQuery(kind, mode, valuation, tokens, places)


_PARSERS = {
    Subcommand.PTA: _pta_query,
    Subcommand.PIMC: _pimc_query,
    Subcommand.MTS: _mts_query,
    Subcommand.PPN: _ppn_query,
}


def parse_query(text: str, kind: Union[Subcommand, str], file: str = "<query>") -> Query:
    """
    Parse a query for one formalism.

    Examples:
        >>> parse_query("ef-synth {done}", "pta")
        EFSynthQuery(targets=frozenset({'done'}))
    """
    stream = TokenStream(text, file)
    if stream.at_end():
        raise stream.error("Empty query", "a query")
    query = _PARSERS[Subcommand(kind)](stream)
    stream.expect_end()
    logger.debug(f"Parsed query {query}")
    return query


# ============================================================================
# CHECKS AGAINST A MODEL
# ============================================================================

def query_problems(query: Query, model) -> List[str]:
    """Names in the query that the model does not declare."""
    problems: List[str] = []

    def known(names, declared, what: str):
        for name in sorted(set(names) - set(declared)):
            problems.append(f"Unknown {what} {name!r}")

    if isinstance(model, PTA):
        targets = getattr(query, "targets", ())
        known(targets, model.locations, "location")
        if isinstance(query, ReplayQuery):
            known((a for _, a in query.steps), model.actions, "action")
    elif isinstance(model, PIMC):
        if isinstance(query, NConsistentQuery):
            known([query.state], model.states, "state")
    elif isinstance(model, MTS):
        problems.extend(formula_problems(query.formula, model))
        if isinstance(query, CheckQuery):
            known(query.valuation, model.variables, "action variable")
            for name in sorted(formula_variables(query.formula) - set(query.valuation)):
                problems.append(f"No actions given for variable {name!r}")
            for actions in query.valuation.values():
                known(actions, model.actions, "action")
    elif isinstance(model, PPN):
        known(query.tokens, model.places, "place")
        known(query.places, model.places, "place")
    return problems


def check_query(query: Query, model):
    problems = query_problems(query, model)
    if problems:
        raise SemanticError(problems)
