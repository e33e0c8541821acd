"""Convex constraints: conjunctions of linear atoms with Fourier–Motzkin projection."""

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union
import logging

from ..core.errors import ContextMismatchError, MissingVariableError
from ..core.models import Verdict
from .linear import (
    AtomicConstraint,
    LinearTerm,
    Number,
    Relation,
    Valuation,
    Var,
    VarKind,
    normalize_coefficients,
    to_fraction,
)

logger = logging.getLogger(__name__)

VarRef = Union[str, Var]

# Row kinds used by the elimination engine: term < 0, term <= 0, term = 0
_LT, _LE, _EQ = "lt", "le", "eq"


# ============================================================================
# ELIMINATION ENGINE
# ============================================================================

class _Row:
    """Normalized atom: integer coefficients, rational constant, kind."""
    __slots__ = ("coefficients", "constant", "kind")

    def __init__(self, coefficients: Dict[str, int], constant: Fraction, kind: str):
        self.coefficients = coefficients
        self.constant = constant
        self.kind = kind

    @classmethod
    def from_atom(cls, atom: AtomicConstraint) -> "_Row":
        atom = atom.normalized()
        kind = {Relation.LT: _LT, Relation.LE: _LE, Relation.EQ: _EQ}[atom.relation]
        return cls({n: int(c) for n, c in atom.term.coefficients}, atom.term.constant, kind)

    @classmethod
    def build(cls, coefficients: Dict[str, Fraction], constant: Fraction, kind: str) -> "_Row":
        coefficients = {n: c for n, c in coefficients.items() if c != 0}
        scaled, constant = normalize_coefficients(coefficients, constant)
        if kind == _EQ and scaled and scaled[0][1] < 0:
            scaled = tuple((n, -c) for n, c in scaled)
            constant = -constant
        return cls(dict(scaled), constant, kind)

    def key(self) -> Tuple[Tuple[str, int], ...]:
        return tuple(sorted(self.coefficients.items()))

    def to_atom(self) -> AtomicConstraint:
        relation = {_LT: Relation.LT, _LE: Relation.LE, _EQ: Relation.EQ}[self.kind]
        return AtomicConstraint(LinearTerm.of(self.coefficients, self.constant), relation)


def _ground_holds(constant: Fraction, kind: str) -> bool:
    if kind == _LT:
        return constant < 0
    if kind == _LE:
        return constant <= 0
    return constant == 0


def _simplify(rows: Iterable[_Row]) -> Optional[List[_Row]]:
    """
    Drop trivially true and dominated rows; None when a contradiction is found.

    Inequalities are grouped by direction and only the tightest is kept; two
    opposite inequalities that pin a direction become an equality.
    """
    equalities: Dict[Tuple, _Row] = {}
    inequalities: Dict[Tuple, _Row] = {}
    for row in rows:
        if not row.coefficients:
            if not _ground_holds(row.constant, row.kind):
                return None
            continue
        key = row.key()
        if row.kind == _EQ:
            known = equalities.get(key)
            if known is not None and known.constant != row.constant:
                return None
            equalities[key] = row
            continue
        known = inequalities.get(key)
        # a.x + c <= 0: a larger constant is tighter; at equal constants strict wins
        if (
            known is None
            or row.constant > known.constant
            or (row.constant == known.constant and row.kind == _LT)
        ):
            inequalities[key] = row

    for key in list(inequalities):
        row = inequalities.get(key)
        if row is None:
            continue
        opposite_key = tuple((n, -c) for n, c in key)
        opposite = inequalities.get(opposite_key)
        if opposite is None:
            continue
        total = row.constant + opposite.constant
        strict = row.kind == _LT or opposite.kind == _LT
        if total > 0 or (total == 0 and strict):
            return None
        if total == 0:
            del inequalities[key]
            del inequalities[opposite_key]
            equality = _Row.build(dict(row.coefficients), row.constant, _EQ)
            known = equalities.get(equality.key())
            if known is not None and known.constant != equality.constant:
                return None
            equalities[equality.key()] = equality

    for key, equality in equalities.items():
        # a.x = -c_e makes a.x + c <= 0 ground
        negated = tuple((n, -c) for n, c in key)
        for candidate_key, sign in ((key, 1), (negated, -1)):
            row = inequalities.get(candidate_key)
            if row is None:
                continue
            value = row.constant - sign * equality.constant
            if not _ground_holds(value, row.kind):
                return None
            del inequalities[candidate_key]

    return list(equalities.values()) + list(inequalities.values())


def _substitute_equality(row: _Row, name: str, equality: _Row) -> _Row:
    """Cancel `name` in `row` using `equality` (any multiple of an equality is allowed)."""
    coef = row.coefficients.get(name, 0)
    if coef == 0:
        return row
    factor = Fraction(coef, equality.coefficients[name])
    merged: Dict[str, Fraction] = {n: Fraction(c) for n, c in row.coefficients.items()}
    for n, c in equality.coefficients.items():
        merged[n] = merged.get(n, Fraction(0)) - factor * c
    merged.pop(name, None)
    return _Row.build(merged, row.constant - factor * equality.constant, row.kind)


def _combine(upper: _Row, lower: _Row, name: str) -> _Row:
    """Positive combination cancelling `name`; strict iff either parent is strict."""
    a = upper.coefficients[name]
    b = -lower.coefficients[name]
    merged: Dict[str, Fraction] = {}
    for n, c in upper.coefficients.items():
        merged[n] = merged.get(n, Fraction(0)) + b * c
    for n, c in lower.coefficients.items():
        merged[n] = merged.get(n, Fraction(0)) + a * c
    merged.pop(name, None)
    kind = _LT if _LT in (upper.kind, lower.kind) else _LE
    return _Row.build(merged, b * upper.constant + a * lower.constant, kind)


def _eliminate_one(rows: List[_Row], name: str) -> Optional[List[_Row]]:
    pivots = [r for r in rows if r.kind == _EQ and name in r.coefficients]
    if pivots:
        pivot = min(pivots, key=lambda r: len(r.coefficients))
        rest = [_substitute_equality(r, name, pivot) for r in rows if r is not pivot]
        return _simplify(rest)

    uppers = [r for r in rows if r.coefficients.get(name, 0) > 0]
    lowers = [r for r in rows if r.coefficients.get(name, 0) < 0]
    result = [r for r in rows if name not in r.coefficients]
    for upper in uppers:
        for lower in lowers:
            result.append(_combine(upper, lower, name))
    return _simplify(result)


def _elimination_cost(rows: List[_Row], name: str) -> Tuple[int, int]:
    if any(r.kind == _EQ and name in r.coefficients for r in rows):
        return (0, 0)
    uppers = sum(1 for r in rows if r.coefficients.get(name, 0) > 0)
    lowers = sum(1 for r in rows if r.coefficients.get(name, 0) < 0)
    return (1, uppers * lowers - uppers - lowers)


def _eliminate_rows(rows: List[_Row], names: Iterable[str]) -> Optional[List[_Row]]:
    """Project `names` away, cheapest variable first."""
    current = _simplify(rows)
    pending = set(names)
    while current is not None and pending:
        present = [n for n in sorted(pending) if any(n in r.coefficients for r in current)]
        if not present:
            break
        name = min(present, key=lambda n: _elimination_cost(current, n))
        pending.discard(name)
        current = _eliminate_one(current, name)
    return current


# ============================================================================
# RESULTS
# ============================================================================

@dataclass(frozen=True)
class Bound:
    """Projection of a constraint on one variable or term; None means unbounded."""
    lower: Optional[Fraction] = None
    lower_strict: bool = False
    upper: Optional[Fraction] = None
    upper_strict: bool = False

    def smallest_natural(self) -> int:
        """Least natural number above the lower bound."""
        if self.lower is None or self.lower < 0:
            return 0
        value = ceil(self.lower)
        if self.lower_strict and value == self.lower:
            value += 1
        return value

    def largest_integer(self) -> Optional[int]:
        """Greatest integer below the upper bound, None when unbounded."""
        if self.upper is None:
            return None
        value = floor(self.upper)
        if self.upper_strict and value == self.upper:
            value -= 1
        return value

    def __str__(self) -> str:
        low = "-inf" if self.lower is None else str(self.lower)
        high = "inf" if self.upper is None else str(self.upper)
        left = "(" if self.lower is None or self.lower_strict else "["
        right = ")" if self.upper is None or self.upper_strict else "]"
        return f"{left}{low}, {high}{right}"


@dataclass(frozen=True)
class IntegerPoint:
    """Answer of an integer-point search, with a witness when the answer is yes."""
    answer: Verdict
    witness: Optional[Dict[str, int]] = None


# ============================================================================
# CONVEX CONSTRAINTS
# ============================================================================

def _pick(bound: Bound) -> Fraction:
    """A value inside a non-empty bound, preferring closed endpoints."""
    low, high = bound.lower, bound.upper
    if low is not None and high is not None:
        if not bound.lower_strict:
            return low
        if not bound.upper_strict:
            return high
        return (low + high) / 2
    if low is not None:
        return low + (1 if bound.lower_strict else 0)
    if high is not None:
        return high - (1 if bound.upper_strict else 0)
    return Fraction(0)


def _name(ref: VarRef) -> str:
    return ref.name if isinstance(ref, Var) else ref


@dataclass(frozen=True)
class ConvexConstraint:
    """Conjunction of atomic constraints over an ordered variable context."""
    context: Tuple[Var, ...]
    atoms: Tuple[AtomicConstraint, ...] = ()
    _names: frozenset = field(default=frozenset(), init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "context", tuple(self.context))
        object.__setattr__(self, "atoms", tuple(self.atoms))
        names = frozenset(v.name for v in self.context)
        if len(names) != len(self.context):
            raise ContextMismatchError(f"Duplicate variable names in context {self.names}")
        object.__setattr__(self, "_names", names)
        for atom in self.atoms:
            unknown = atom.variables - names
            if unknown:
                raise ContextMismatchError(
                    f"Atom {atom} uses {', '.join(sorted(unknown))} outside context {list(self.names)}"
                )

    @classmethod
    def true(cls, context: Sequence[Var]) -> "ConvexConstraint":
        return cls(tuple(context), ())

    @classmethod
    def false(cls, context: Sequence[Var]) -> "ConvexConstraint":
        return cls(tuple(context), (AtomicConstraint(LinearTerm.const(1), Relation.LE),))

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(v.name for v in self.context)

    def names_of_kind(self, kind: VarKind) -> Tuple[str, ...]:
        return tuple(v.name for v in self.context if v.kind == kind)

    def with_atoms(self, *atoms: AtomicConstraint) -> "ConvexConstraint":
        return ConvexConstraint(self.context, self.atoms + tuple(atoms))

    def _rows(self) -> List[_Row]:
        return [_Row.from_atom(a) for a in self.atoms]

    def _from_rows(self, rows: Optional[List[_Row]], context: Sequence[Var]) -> "ConvexConstraint":
        if rows is None:
            return ConvexConstraint.false(context)
        return ConvexConstraint(tuple(context), tuple(r.to_atom() for r in rows))

    # ------------------------------------------------------------------
    # Point queries
    # ------------------------------------------------------------------

    def satisfies(self, values: Valuation) -> bool:
        """True iff every atom holds under `values`, which must cover the context."""
        missing = [n for n in self.names if n not in values]
        if missing:
            raise MissingVariableError(missing)
        exact = {n: to_fraction(values[n]) for n in self.names}
        return all(atom.holds(exact) for atom in self.atoms)

    # ------------------------------------------------------------------
    # Algebra
    # ------------------------------------------------------------------

    def conjoin(self, other: "ConvexConstraint") -> "ConvexConstraint":
        """Atom union; satisfiability is not checked."""
        if self.context != other.context:
            raise ContextMismatchError(
                f"Cannot conjoin constraints over {list(self.names)} and {list(other.names)}"
            )
        return ConvexConstraint(self.context, self.atoms + other.atoms)

    def __and__(self, other: "ConvexConstraint") -> "ConvexConstraint":
        return self.conjoin(other)

    def is_satisfiable(self) -> bool:
        return _eliminate_rows(self._rows(), self.names) is not None

    def eliminate(self, variables: Iterable[VarRef]) -> "ConvexConstraint":
        """Exact projection removing `variables` from the context."""
        drop = {_name(v) for v in variables}
        unknown = drop - self._names
        if unknown:
            raise ContextMismatchError(f"Cannot eliminate unknown variables {sorted(unknown)}")
        kept = tuple(v for v in self.context if v.name not in drop)
        return self._from_rows(_eliminate_rows(self._rows(), drop), kept)

    def project_onto(self, variables: Iterable[VarRef]) -> "ConvexConstraint":
        keep = {_name(v) for v in variables}
        return self.eliminate(n for n in self.names if n not in keep)

    def project_to_parameters(self) -> "ConvexConstraint":
        """Eliminate every clock and auxiliary variable."""
        return self.eliminate(v.name for v in self.context if v.kind != VarKind.PARAMETER)

    def simplified(self) -> "ConvexConstraint":
        """Same point set with dominated atoms dropped (no projection)."""
        return self._from_rows(_simplify(self._rows()), self.context)

    def time_elapse(self, clock_vars: Iterable[VarRef]) -> "ConvexConstraint":
        """Let all `clock_vars` advance by the same arbitrary delay d >= 0."""
        moving = {_name(c) for c in clock_vars}
        delay = self._fresh_name("delay")
        atoms = []
        for atom in self.atoms:
            shift = sum((atom.term.coefficient(c) for c in moving), Fraction(0))
            # new-x = old-x + d, so the old atom reads term(x - d)
            term = atom.term + LinearTerm.of({delay: -shift})
            atoms.append(AtomicConstraint(term, atom.relation))
        atoms.append(AtomicConstraint(LinearTerm.var(delay, -1), Relation.LE))
        extended = ConvexConstraint(self.context + (Var(delay, VarKind.AUXILIARY),), tuple(atoms))
        return extended.eliminate([delay])

    def reset(self, clock_vars: Iterable[VarRef]) -> "ConvexConstraint":
        """Forget the reset clocks, then pin them to zero."""
        reset = [_name(c) for c in clock_vars]
        if not reset:
            return self
        projected = self.eliminate(reset)
        zeros = tuple(AtomicConstraint(LinearTerm.var(n), Relation.EQ) for n in reset)
        return ConvexConstraint(self.context, projected.atoms + zeros)

    def substitute(self, values: Mapping[str, Number]) -> "ConvexConstraint":
        """Fix variables to values; they leave the context."""
        exact = {n: to_fraction(v) for n, v in values.items()}
        kept = tuple(v for v in self.context if v.name not in exact)
        return ConvexConstraint(kept, tuple(a.substitute_values(exact) for a in self.atoms))

    def extend(self, context: Sequence[Var]) -> "ConvexConstraint":
        """Same atoms over a larger context."""
        return ConvexConstraint(tuple(context), self.atoms)

    def rename(self, mapping: Mapping[str, str]) -> "ConvexConstraint":
        context = tuple(Var(mapping.get(v.name, v.name), v.kind) for v in self.context)
        return ConvexConstraint(context, tuple(a.rename(mapping) for a in self.atoms))

    def _fresh_name(self, stem: str) -> str:
        name = f"_{stem}"
        while name in self._names:
            name = f"_{name}"
        return name

    # ------------------------------------------------------------------
    # Bounds and integer points
    # ------------------------------------------------------------------

    def bounds(self, variable: VarRef) -> Optional[Bound]:
        """Extrema of one variable over the constraint, None if unsatisfiable."""
        name = _name(variable)
        rows = _eliminate_rows(self._rows(), [n for n in self.names if n != name])
        if rows is None:
            return None
        lower = upper = None
        lower_strict = upper_strict = False
        for row in rows:
            coef = row.coefficients.get(name, 0)
            if coef == 0:
                continue
            # single variable rows are normalized to coefficient +-1
            value = -row.constant / coef
            if row.kind == _EQ:
                return Bound(value, False, value, False)
            strict = row.kind == _LT
            if coef > 0:
                if upper is None or value < upper or (value == upper and strict):
                    upper, upper_strict = value, strict
            else:
                if lower is None or value > lower or (value == lower and strict):
                    lower, lower_strict = value, strict
        return Bound(lower, lower_strict, upper, upper_strict)

    def term_bounds(self, term: LinearTerm) -> Optional[Bound]:
        """Extrema of a linear term, through an auxiliary variable equal to it."""
        aux = self._fresh_name("term")
        link = AtomicConstraint(LinearTerm.var(aux) - term, Relation.EQ)
        extended = ConvexConstraint(self.context + (Var(aux, VarKind.AUXILIARY),), self.atoms + (link,))
        return extended.bounds(aux)

    def sample_point(self) -> Optional[Dict[str, Fraction]]:
        """A rational point of the constraint, None if it is unsatisfiable."""
        point: Dict[str, Fraction] = {}
        current = self
        for name in self.names:
            bound = current.bounds(name)
            if bound is None:
                return None
            value = _pick(bound)
            point[name] = value
            current = current.substitute({name: value})
        if not self.satisfies(point):
            raise AssertionError(f"Sampled point {point} does not satisfy {self}")
        return point

    def has_integer_point(self, search_bound: int) -> IntegerPoint:
        """
        Search for a point with natural-number coordinates.

        Variables are fixed in context order, smallest values first, within
        [0, search_bound] tightened by one-variable projections.

        Args:
            search_bound: Largest value tried for any variable

        Returns:
            yes with a witness, no when the search was exhaustive, unknown when
            the box cut off an unbounded direction
        """
        if search_bound < 0:
            raise ValueError("search_bound must be non-negative")
        if not self.is_satisfiable():
            return IntegerPoint(Verdict.NO)
        for name in self.names:
            bound = self.bounds(name)
            high = bound.largest_integer()
            if high is not None and bound.smallest_natural() > high:
                logger.debug(f"No natural value for {name} in {bound}")
                return IntegerPoint(Verdict.NO)

        witness, truncated = self._search_integer(self, {}, search_bound)
        if witness is not None:
            if not self.satisfies(witness):
                raise AssertionError(f"Integer witness {witness} does not satisfy {self}")
            return IntegerPoint(Verdict.YES, witness)
        return IntegerPoint(Verdict.UNKNOWN if truncated else Verdict.NO)

    @staticmethod
    def _search_integer(
        constraint: "ConvexConstraint", assignment: Dict[str, int], search_bound: int
    ) -> Tuple[Optional[Dict[str, int]], bool]:
        if not constraint.context:
            return (dict(assignment), False) if constraint.is_satisfiable() else (None, False)
        name = constraint.context[0].name
        bound = constraint.bounds(name)
        if bound is None:
            return None, False
        low, high = bound.smallest_natural(), bound.largest_integer()
        truncated = False
        if high is None or high > search_bound:
            truncated = high is None or low <= high
            high = search_bound
        for value in range(low, high + 1):
            assignment[name] = value
            found, cut = ConvexConstraint._search_integer(
                constraint.substitute({name: value}), assignment, search_bound
            )
            if found is not None:
                return found, False
            truncated = truncated or cut
        assignment.pop(name, None)
        return None, truncated

    # ------------------------------------------------------------------
    # Containment
    # ------------------------------------------------------------------

    def includes(self, other: "ConvexConstraint") -> bool:
        """True iff every point of `other` satisfies `self`."""
        if self.context != other.context:
            raise ContextMismatchError("Containment needs identical contexts")
        if not other.is_satisfiable():
            return True
        for atom in self.atoms:
            for negation in atom.negations():
                if other.with_atoms(negation).is_satisfiable():
                    return False
        return True

    def remove_redundant(self) -> "ConvexConstraint":
        """Drop every atom implied by the remaining ones."""
        current = self.simplified()
        if not current.is_satisfiable():
            return ConvexConstraint.false(self.context)
        atoms = list(current.atoms)
        index = 0
        while index < len(atoms):
            rest = ConvexConstraint(self.context, tuple(atoms[:index] + atoms[index + 1:]))
            if ConvexConstraint(self.context, (atoms[index],)).includes(rest):
                atoms.pop(index)
            else:
                index += 1
        return ConvexConstraint(self.context, tuple(atoms))

    def __str__(self) -> str:
        if not self.atoms:
            return "true"
        return " && ".join(str(a) for a in self.atoms)
