"""Exception hierarchy shared by the engines, the parsers and the CLI."""

from dataclasses import dataclass
from typing import List, Optional


class ParaverseError(Exception):
    """Base class for every error raised by paraverse."""


class InputError(ParaverseError):
    """Base class for errors caused by user input (exit code 3)."""


# ============================================================================
# CONSTRAINT CORE
# ============================================================================

class MissingVariableError(ParaverseError):
    """A valuation does not assign a variable of the constraint context."""

    def __init__(self, names: List[str]):
        self.names = sorted(names)
        super().__init__(f"Valuation is missing variables: {', '.join(self.names)}")


class ContextMismatchError(ParaverseError):
    """Two constraints over different variable contexts were combined."""


class InvalidValuationError(InputError):
    """A parameter valuation is partial, negative, out of range or non-integer."""


# ============================================================================
# ENGINES
# ============================================================================

class EmptyInitialStateError(ParaverseError):
    """The initial symbolic state of a PTA is unsatisfiable."""


class StepRejectedError(ParaverseError):
    """A scripted run step violates an invariant or a guard."""

    def __init__(self, step: int, reason: str):
        self.step = step
        self.reason = reason
        super().__init__(f"Step {step} rejected: {reason}")


class NotLUError(ParaverseError):
    """An L/U-only procedure was called on a PTA that is not L/U."""


class UnknownStateError(ParaverseError):
    """A state name is not declared in the model."""


class UnboundVariableError(ParaverseError):
    """A formula mentions an action variable the valuation does not bind."""


class TooManyValuationsError(ParaverseError):
    """The explicit valuation universe would exceed the configured caps."""


class IncompleteExplorationError(ParaverseError):
    """An exploration hit its limits before a yes/no answer was settled."""


# ============================================================================
# INPUT
# ============================================================================

@dataclass(frozen=True)
class SourceSpan:
    """Location of a token in a source text (1-based line and column)."""
    file: str
    line: int
    column: int
    length: int = 1

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


class ParseError(InputError):
    """Syntax error with its source span and an expected-token hint."""

    def __init__(self, span: SourceSpan, message: str, expected: Optional[str] = None):
        self.span = span
        self.message = message or "syntax error"
        self.expected = expected
        text = f"{span}: {self.message}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text)


class SemanticError(InputError):
    """A parsed model violates one or more model invariants."""

    def __init__(self, problems: List[str]):
        self.problems = list(problems)
        super().__init__("Invalid model:\n  - " + "\n  - ".join(self.problems))
