"""Tokenizer shared by the model, query and formula parsers."""

import re
from dataclasses import dataclass
from typing import List
import logging

from ..core.errors import ParseError, SourceSpan

logger = logging.getLogger(__name__)


class TokenKind:
    IDENT = "identifier"
    NUMBER = "number"
    STRING = "string"
    SYMBOL = "symbol"
    EOF = "end of input"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SourceSpan
    offset: int

    @property
    def end(self) -> int:
        return self.offset + len(self.text)

    def describe(self) -> str:
        return self.kind if self.kind == TokenKind.EOF else repr(self.text)


class Lexer:
    """
    Split model or query text into tokens.

    Comments run from `#` to the end of the line. Numbers are unsigned
    integers or decimals; the sign and `a/b` fractions are parsed above.

    Usage:
        tokens = Lexer.tokenize("trans s0 -> s1 [0.3, q];", "param_intervals.pimc")
    """

    # Longest symbols first
    SYMBOLS = [
        "->", "<=", ">=", "==", "&&", "||",
        "=", "<", ">", "≤", "≥", "&", "|", "!",
        "(", ")", "[", "]", "{", "}", ",", ";", ":", "*", "/", "+", "-", ".",
    ]
    PATTERN = re.compile(
        r"(?P<space>[ \t\r]+)"
        r"|(?P<newline>\n)"
        r"|(?P<comment>#[^\n]*)"
        r"|(?P<number>\d+(?:\.\d+)?)"
        r"|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)"
        r'|(?P<string>"[^"\n]*")'
        r"|(?P<symbol>" + "|".join(re.escape(s) for s in SYMBOLS) + r")"
    )

    @classmethod
    def tokenize(cls, text: str, file: str = "<input>") -> List[Token]:
        tokens: List[Token] = []
        line, line_start, position = 1, 0, 0
        while position < len(text):
            match = cls.PATTERN.match(text, position)
            column = position - line_start + 1
            if not match:
                raise ParseError(
                    SourceSpan(file, line, column), f"Unexpected character {text[position]!r}"
                )
            kind = match.lastgroup
            value = match.group()
            if kind == "newline":
                line += 1
                line_start = match.end()
            elif kind == "number":
                tokens.append(Token(TokenKind.NUMBER, value, SourceSpan(file, line, column, len(value)), position))
            elif kind == "ident":
                tokens.append(Token(TokenKind.IDENT, value, SourceSpan(file, line, column, len(value)), position))
            elif kind == "string":
                tokens.append(Token(TokenKind.STRING, value, SourceSpan(file, line, column, len(value)), position))
            elif kind == "symbol":
                tokens.append(Token(TokenKind.SYMBOL, value, SourceSpan(file, line, column, len(value)), position))
            position = match.end()
        tokens.append(Token(TokenKind.EOF, "", SourceSpan(file, line, position - line_start + 1), position))
        logger.debug(f"Tokenized {file}: {len(tokens)} tokens")
        return tokens
