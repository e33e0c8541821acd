"""Recursive-descent parsing primitives and the linear constraint syntax."""

from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, TypeVar
import logging

from ..constraints import AtomicConstraint, ConvexConstraint, LinearTerm, Relation, Var
from ..core.errors import ParseError
from .lexer import Lexer, Token, TokenKind

logger = logging.getLogger(__name__)

T = TypeVar("T")

RELATIONS = ("<=", ">=", "==", "=", "<", ">", "≤", "≥")


class TokenStream:
    """
    One-token-lookahead cursor over a token list.

    Every `expect_*` method raises ParseError at the offending token with
    a hint naming what was expected.
    """

    def __init__(self, text: str, file: str = "<input>"):
        self.text = text
        self.file = file
        self.tokens = Lexer.tokenize(text, file)
        self.position = 0

    # ------------------------------------------------------------------
    # cursor
    # ------------------------------------------------------------------

    @property
    def current(self) -> Token:
        return self.tokens[self.position]

    def peek(self, ahead: int = 1) -> Token:
        return self.tokens[min(self.position + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.current
        if token.kind != TokenKind.EOF:
            self.position += 1
        return token

    def at_end(self) -> bool:
        return self.current.kind == TokenKind.EOF

    def error(self, message: str, expected: Optional[str] = None, token: Optional[Token] = None) -> ParseError:
        token = token or self.current
        return ParseError(token.span, message, expected)

    # ------------------------------------------------------------------
    # matching
    # ------------------------------------------------------------------

    def at_symbol(self, *symbols: str) -> bool:
        return self.current.kind == TokenKind.SYMBOL and self.current.text in symbols

    def at_word(self, *words: str) -> bool:
        return self.current.kind == TokenKind.IDENT and self.current.text in words

    def accept_symbol(self, *symbols: str) -> Optional[Token]:
        return self.advance() if self.at_symbol(*symbols) else None

    def accept_word(self, *words: str) -> Optional[Token]:
        return self.advance() if self.at_word(*words) else None

    def expect_symbol(self, symbol: str) -> Token:
        if not self.at_symbol(symbol):
            raise self.error(f"Unexpected {self.current.describe()}", repr(symbol))
        return self.advance()

    def expect_word(self, *words: str) -> Token:
        if not self.at_word(*words):
            raise self.error(f"Unexpected {self.current.describe()}", " or ".join(repr(w) for w in words))
        return self.advance()

    def expect_ident(self, what: str = "a name") -> Token:
        if self.current.kind != TokenKind.IDENT:
            raise self.error(f"Unexpected {self.current.describe()}", what)
        return self.advance()

    def expect_end(self):
        if not self.at_end():
            raise self.error(f"Unexpected {self.current.describe()}", "end of input")

    def adjacent(self) -> bool:
        """Whether the current token starts exactly where the previous one ended."""
        return self.position > 0 and self.tokens[self.position - 1].end == self.current.offset

    def keyword(self) -> Token:
        """An identifier possibly spelled with hyphens, e.g. `ef-synth`."""
        first = self.expect_ident("a keyword")
        text = first.text
        while (
            self.at_symbol("-") and self.adjacent()
            and self.peek().kind == TokenKind.IDENT and self.peek().offset == self.current.end
        ):
            self.advance()
            text += "-" + self.advance().text
        return Token(TokenKind.IDENT, text, first.span, first.offset)

    def raw_word(self, what: str = "a path") -> str:
        """A quoted string, or the source text of a run of adjacent tokens."""
        if self.current.kind == TokenKind.STRING:
            return self.advance().text[1:-1]
        if self.at_end():
            raise self.error("Unexpected end of input", what)
        start = self.advance()
        end = start.end
        while not self.at_end() and self.current.offset == end and not self.at_symbol(";", ",", ")"):
            end = self.advance().end
        return self.text[start.offset:end]

    # ------------------------------------------------------------------
    # lists
    # ------------------------------------------------------------------

    def separated(self, item: Callable[[], T], closer: str, separator: str = ",") -> List[T]:
        """Items up to and including `closer`; an immediate closer gives []."""
        items: List[T] = []
        if self.accept_symbol(closer):
            return items
        while True:
            items.append(item())
            if self.accept_symbol(closer):
                return items
            self.expect_symbol(separator)

    def name_set(self) -> Tuple[List[str], List[Token]]:
        """`{a, b, c}` with the tokens kept for diagnostics."""
        self.expect_symbol("{")
        tokens = self.separated(lambda: self.expect_ident(), "}")
        return [t.text for t in tokens], tokens

    # ------------------------------------------------------------------
    # numbers
    # ------------------------------------------------------------------

    def unsigned_rational(self) -> Fraction:
        """`3`, `0.3` or `3/10`, read exactly."""
        if self.current.kind != TokenKind.NUMBER:
            raise self.error(f"Unexpected {self.current.describe()}", "a number")
        value = Fraction(self.advance().text)
        if self.at_symbol("/") and self.peek().kind == TokenKind.NUMBER:
            self.advance()
            token = self.advance()
            denominator = Fraction(token.text)
            if denominator == 0:
                raise self.error("Division by zero", token=token)
            value /= denominator
        return value

    def rational(self) -> Fraction:
        negative = bool(self.accept_symbol("-"))
        value = self.unsigned_rational()
        return -value if negative else value

    def natural(self) -> int:
        token = self.current
        value = self.unsigned_rational()
        if value.denominator != 1:
            raise self.error(f"Expected a natural number, got {value}", token=token)
        return int(value)

    def valuation(self) -> Dict[str, Fraction]:
        """`(p1=1, p2=5/2)`; `()` is the empty valuation."""
        self.expect_symbol("(")
        values: Dict[str, Fraction] = {}

        def entry():
            name = self.expect_ident("a parameter name")
            self.expect_symbol("=")
            if name.text in values:
                raise self.error(f"Parameter {name.text} given twice", token=name)
            values[name.text] = self.rational()

        self.separated(entry, ")")
        return values


# ============================================================================
# LINEAR CONSTRAINTS
# ============================================================================

class ConstraintParser:
    """
    Linear constraints over a fixed context.

    Grammar:
        constraint := 'true' | chain (('&&' | '&') chain)*
        chain      := expr (relation expr)+
        expr       := ['-'] product (('+' | '-') product)*
        product    := rational ['*' name] | name
    """

    def __init__(self, stream: TokenStream, context: Sequence[Var]):
        self.stream = stream
        self.context = tuple(context)
        self.names = {v.name for v in context}

    def constraint(self) -> ConvexConstraint:
        stream = self.stream
        if stream.accept_word("true"):
            return ConvexConstraint.true(self.context)
        atoms = list(self.chain())
        while stream.accept_symbol("&&", "&"):
            atoms.extend(self.chain())
        return ConvexConstraint(self.context, tuple(atoms))

    def chain(self) -> List[AtomicConstraint]:
        stream = self.stream
        left = self.expr()
        if not stream.at_symbol(*RELATIONS):
            raise stream.error(f"Unexpected {stream.current.describe()}", "a comparison")
        atoms = []
        while stream.at_symbol(*RELATIONS):
            relation = Relation.parse(stream.advance().text)
            right = self.expr()
            atoms.append(AtomicConstraint.compare(left, relation, right))
            left = right
        return atoms

    def expr(self) -> LinearTerm:
        stream = self.stream
        term = -self.product() if stream.accept_symbol("-") else self.product()
        while stream.at_symbol("+", "-"):
            sign = stream.advance().text
            following = self.product()
            term = term + following if sign == "+" else term - following
        return term

    def product(self) -> LinearTerm:
        stream = self.stream
        if stream.current.kind == TokenKind.NUMBER:
            value = stream.unsigned_rational()
            if stream.accept_symbol("*"):
                return LinearTerm.var(self.variable(), value)
            return LinearTerm.const(value)
        return LinearTerm.var(self.variable())

    def variable(self) -> str:
        token = self.stream.expect_ident("a clock, parameter or number")
        if token.text not in self.names:
            raise self.stream.error(f"Undeclared name {token.text!r}", token=token)
        return token.text


def parse_constraint(text: str, context: Sequence[Var], file: str = "<constraint>") -> ConvexConstraint:
    """
    Parse a standalone constraint.

    Examples:
        >>> parse_constraint("0 <= p2 <= p3", parameters("p2", "p3")).satisfies({"p2": 1, "p3": 2})
        True
    """
    stream = TokenStream(text, file)
    constraint = ConstraintParser(stream, context).constraint()
    stream.expect_end()
    return constraint
