"""Core modules: configuration, run models, errors."""

from .config import Config, get_config
from .errors import (
    ContextMismatchError,
    EmptyInitialStateError,
    IncompleteExplorationError,
    InputError,
    InvalidValuationError,
    MissingVariableError,
    NotLUError,
    ParaverseError,
    ParseError,
    SemanticError,
    SourceSpan,
    StepRejectedError,
    TooManyValuationsError,
    UnboundVariableError,
    UnknownStateError,
)
from .models import Limits, OutputMode, RunConfig, Subcommand, Verdict

__all__ = [
    "Config",
    "get_config",
    "ContextMismatchError",
    "EmptyInitialStateError",
    "IncompleteExplorationError",
    "InputError",
    "InvalidValuationError",
    "MissingVariableError",
    "NotLUError",
    "ParaverseError",
    "ParseError",
    "SemanticError",
    "SourceSpan",
    "StepRejectedError",
    "TooManyValuationsError",
    "UnboundVariableError",
    "UnknownStateError",
    "Limits",
    "OutputMode",
    "RunConfig",
    "Subcommand",
    "Verdict",
]
