"""Parser for parametric action formulas over mixed transition systems."""

from typing import FrozenSet
import logging

from ..arctl.model import EG, EU, EX, Alpha, EGInfinite, Formula, Not, Or, Prop, Top, conj, eventually
from .parser import TokenStream

logger = logging.getLogger(__name__)

# Words with a fixed meaning; they cannot name propositions
RESERVED = frozenset({"true", "false", "E", "Ew", "X", "G", "F", "U"})


class FormulaParser:
    """
    Grammar:
        formula := conj ('|' conj)*
        conj    := unary (('&' | '&&') unary)*
        unary   := '!' unary | 'true' | 'false' | '(' formula ')' | prop
                 | 'E' alpha ('X' unary | 'G' unary | 'F' unary | '(' formula 'U' formula ')')
                 | 'Ew' alpha 'G' unary
        alpha   := '[' (variable | '{' action (',' action)* '}') ']'

    `&` and `F` are sugar over negation, disjunction and until.
    """

    def __init__(self, stream: TokenStream):
        self.stream = stream

    def formula(self) -> Formula:
        node = self.conjunction()
        while self.stream.accept_symbol("|", "||"):
            node = Or(node, self.conjunction())
        return node

    def conjunction(self) -> Formula:
        node = self.unary()
        while self.stream.accept_symbol("&", "&&"):
            node = conj(node, self.unary())
        return node

    def unary(self) -> Formula:
        stream = self.stream
        if stream.accept_symbol("!"):
            return Not(self.unary())
        if stream.accept_symbol("("):
            node = self.formula()
            stream.expect_symbol(")")
            return node
        if stream.accept_word("true"):
            return Top()
        if stream.accept_word("false"):
            return Not(Top())
        if stream.at_word("E", "Ew") and stream.peek().text == "[":
            return self.quantified()
        token = stream.expect_ident("a formula")
        if token.text in RESERVED:
            raise stream.error(f"Unexpected {token.describe()}", "a formula", token=token)
        return Prop(token.text)

    def quantified(self) -> Formula:
        stream = self.stream
        quantifier = stream.advance().text
        alpha = self.alpha()
        if quantifier == "Ew":
            stream.expect_word("G")
            return EGInfinite(alpha, self.unary())
        if stream.accept_word("X"):
            return EX(alpha, self.unary())
        if stream.accept_word("G"):
            return EG(alpha, self.unary())
        if stream.accept_word("F"):
            return eventually(alpha, self.unary())
        if stream.accept_symbol("("):
            left = self.formula()
            stream.expect_word("U")
            right = self.formula()
            stream.expect_symbol(")")
            return EU(alpha, left, right)
        raise stream.error(f"Unexpected {stream.current.describe()}", "'X', 'G', 'F' or '('")

    def alpha(self) -> Alpha:
        stream = self.stream
        stream.expect_symbol("[")
        if stream.at_symbol("{"):
            opener = stream.current
            actions, _ = stream.name_set()
            if not actions:
                raise stream.error("Action sets must not be empty", token=opener)
            result: Alpha = frozenset(actions)
        else:
            result = stream.expect_ident("an action variable or an action set").text
        stream.expect_symbol("]")
        return result


def parse_formula(text: str, file: str = "<formula>") -> Formula:
    """
    Parse a whole formula.

    Examples:
        >>> str(parse_formula("E[Y] G (E[Z] F safe)"))
        'E[Y] G E[Z](true U safe)'
    """
    stream = TokenStream(text, file)
    node = FormulaParser(stream).formula()
    stream.expect_end()
    return node


def action_set(stream: TokenStream) -> FrozenSet[str]:
    actions, _ = stream.name_set()
    return frozenset(actions)
