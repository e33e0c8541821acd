"""Pydantic result documents and their JSON serialization."""

from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional
import json
import logging

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..arctl.valuations import ParamValuation, ValuationSet, minimal_valuations
from ..constraints import AtomicConstraint, ConstraintSet, ConvexConstraint, LinearTerm, Relation, Var, VarKind
from ..core.models import Verdict

logger = logging.getLogger(__name__)

SCHEMA = "paraverse/1"


def rational_text(value) -> str:
    """Exact `n` or `n/d` text of a rational."""
    return str(Fraction(value))


# ============================================================================
# CONSTRAINTS
# ============================================================================

class VarDocument(BaseModel):
    name: str
    kind: VarKind


class AtomDocument(BaseModel):
    """`term + const rel 0` with integer coefficients."""
    term: Dict[str, int]
    const: str = Field(..., description="Rational constant as n or n/d")
    rel: Relation

    @field_validator('const')
    @classmethod
    def validate_const(cls, v: str) -> str:
        return rational_text(Fraction(v))

    @classmethod
    def from_atom(cls, atom: AtomicConstraint) -> "AtomDocument":
        atom = atom.normalized()
        return cls(
            term={n: int(c) for n, c in atom.term.coefficients},
            const=rational_text(atom.term.constant),
            rel=atom.relation,
        )

    def to_atom(self) -> AtomicConstraint:
        return AtomicConstraint(LinearTerm.of(self.term, Fraction(self.const)), self.rel)


class ConstraintSetDocument(BaseModel):
    """A union of convex constraints; each disjunct is a list of atoms."""
    context: List[VarDocument] = Field(default_factory=list)
    disjuncts: List[List[AtomDocument]] = Field(default_factory=list)

    @classmethod
    def from_constraint_set(cls, constraints: ConstraintSet) -> "ConstraintSetDocument":
        return cls(
            context=[VarDocument(name=v.name, kind=v.kind) for v in constraints.context],
            disjuncts=[[AtomDocument.from_atom(a) for a in d.atoms] for d in constraints.disjuncts],
        )

    def to_constraint_set(self) -> ConstraintSet:
        context = tuple(Var(v.name, v.kind) for v in self.context)
        disjuncts = tuple(
            ConvexConstraint(context, tuple(a.to_atom() for a in atoms)) for atoms in self.disjuncts
        )
        return ConstraintSet(context, disjuncts)


# ============================================================================
# VALUATIONS OF ACTION VARIABLES
# ============================================================================

def valuation_document(valuation: ParamValuation) -> Dict[str, List[str]]:
    return {name: sorted(actions) for name, actions in valuation.assignment}


def valuation_set_document(valuations: ValuationSet) -> List[Dict[str, List[str]]]:
    return [valuation_document(v) for v in valuations.sorted()]


class StateValuationsDocument(BaseModel):
    """Per-state valuation lists with the minimal valuations at the initial state."""
    variables: List[str]
    actions: List[str]
    states: Dict[str, List[Dict[str, List[str]]]]
    initial: str
    minimal: List[Dict[str, List[str]]]

    @classmethod
    def from_synthesis(cls, result: Mapping[str, ValuationSet], initial: str) -> "StateValuationsDocument":
        universe = result[initial].universe
        return cls(
            variables=list(universe.variables),
            actions=list(universe.actions),
            states={state: valuation_set_document(result[state]) for state in result},
            initial=initial,
            minimal=[valuation_document(v) for v in minimal_valuations(result[initial])],
        )


# ============================================================================
# NETS
# ============================================================================

class NetSummaryDocument(BaseModel):
    """Coverability tree summary."""
    nodes: int
    complete: bool
    bounded: bool
    unbounded_places: List[str] = Field(default_factory=list)
    simultaneously_unbounded: List[List[str]] = Field(default_factory=list)


# ============================================================================
# RESULT
# ============================================================================

class ResultDocument(BaseModel):
    """
    Everything one query produces.

    Only the fields relevant to the query are set; unset fields are left
    out of the JSON text.
    """
    schema_: str = Field(SCHEMA, alias="schema")
    formalism: str
    query: str
    verdict: Optional[Verdict] = None
    complete: bool = True
    constraints: Optional[ConstraintSetDocument] = None
    rendering: Optional[str] = Field(None, description="Human-readable form of the constraints")
    valuations: Optional[StateValuationsDocument] = None
    net: Optional[NetSummaryDocument] = None
    witness: Optional[Dict[str, Any]] = None
    details: Dict[str, Any] = Field(default_factory=dict)

    model_config = ConfigDict(populate_by_name=True)

    @field_validator('schema_')
    @classmethod
    def validate_schema(cls, v: str) -> str:
        if v != SCHEMA:
            raise ValueError(f"Unsupported result schema {v!r}, expected {SCHEMA!r}")
        return v


def emit_result(document: ResultDocument, indent: Optional[int] = 2) -> str:
    """
    Deterministic JSON text of a result.

    Examples:
        >>> doc = ResultDocument(formalism="pta", query="ef-synth {done}",
        ...     constraints=ConstraintSetDocument())
        >>> '"disjuncts": []' in emit_result(doc)
        True
    """
    data = document.model_dump(mode="json", by_alias=True, exclude_none=True)
    return json.dumps(data, indent=indent or None, ensure_ascii=False) + "\n"


def read_result(text: str) -> ResultDocument:
    """Rebuild a result document from its JSON text."""
    return ResultDocument.model_validate(json.loads(text))
