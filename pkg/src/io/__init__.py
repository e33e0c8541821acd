"""Model, query and formula parsers, pretty-printers and JSON result documents."""

from .lexer import Lexer, Token, TokenKind
from .parser import ConstraintParser, TokenStream, parse_constraint
from .models import Model, ModelKind, load_model, parse_model
from .formula import FormulaParser, parse_formula
from .queries import (
    CheckQuery,
    ConsistencySynthQuery,
    ConsistentQuery,
    ECCheckQuery,
    EFSynthQuery,
    IPCheckQuery,
    LUClassifyQuery,
    LUEmptinessQuery,
    NConsistentQuery,
    NetMode,
    NetQuery,
    NetQueryKind,
    Query,
    ReachAtQuery,
    ReplayQuery,
    SatisfiesQuery,
    SynthesisQuery,
    check_query,
    parse_query,
    query_problems,
)
from .printer import render_model
from .emit import (
    SCHEMA,
    AtomDocument,
    ConstraintSetDocument,
    NetSummaryDocument,
    ResultDocument,
    StateValuationsDocument,
    emit_result,
    rational_text,
    read_result,
    valuation_document,
)

__all__ = [
    "Lexer",
    "Token",
    "TokenKind",
    "ConstraintParser",
    "TokenStream",
    "parse_constraint",
    "Model",
    "ModelKind",
    "load_model",
    "parse_model",
    "FormulaParser",
    "parse_formula",
    "CheckQuery",
    "ConsistencySynthQuery",
    "ConsistentQuery",
    "ECCheckQuery",
    "EFSynthQuery",
    "IPCheckQuery",
    "LUClassifyQuery",
    "LUEmptinessQuery",
    "NConsistentQuery",
    "NetMode",
    "NetQuery",
    "NetQueryKind",
    "Query",
    "ReachAtQuery",
    "ReplayQuery",
    "SatisfiesQuery",
    "SynthesisQuery",
    "check_query",
    "parse_query",
    "query_problems",
    "render_model",
    "SCHEMA",
    "AtomDocument",
    "ConstraintSetDocument",
    "NetSummaryDocument",
    "ResultDocument",
    "StateValuationsDocument",
    "emit_result",
    "rational_text",
    "read_result",
    "valuation_document",
]
