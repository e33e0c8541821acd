"""Variables, linear terms and atomic constraints over exact rationals."""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, FrozenSet, Iterable, List, Mapping, Tuple, Union
import logging

logger = logging.getLogger(__name__)

Number = Union[int, Fraction, str]
Valuation = Mapping[str, Fraction]


def to_fraction(value: Number) -> Fraction:
    """
    Convert an int, Fraction or numeric string to an exact Fraction.

    Decimal strings are read exactly, floats are refused.

    Examples:
        >>> to_fraction("0.3")
        Fraction(3, 10)
        >>> to_fraction("7/10")
        Fraction(7, 10)
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"Refusing inexact value {value!r}; use int, Fraction or a string")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(str(value).strip())


def format_fraction(value: Fraction) -> str:
    """Render a rational as `n` or `n/d`."""
    return str(value)


# ============================================================================
# VARIABLES
# ============================================================================

class VarKind(str, Enum):
    """Role of a variable in a constraint context."""
    CLOCK = "clock"
    PARAMETER = "parameter"
    AUXILIARY = "auxiliary"


@dataclass(frozen=True, order=True)
class Var:
    """A named variable; names are unique within a context."""
    name: str
    kind: VarKind = VarKind.PARAMETER

    def __str__(self) -> str:
        return self.name


def clocks(*names: str) -> Tuple[Var, ...]:
    return tuple(Var(n, VarKind.CLOCK) for n in names)


def parameters(*names: str) -> Tuple[Var, ...]:
    return tuple(Var(n, VarKind.PARAMETER) for n in names)


# ============================================================================
# LINEAR TERMS
# ============================================================================

@dataclass(frozen=True)
class LinearTerm:
    """Sum of coefficient * variable plus a constant; zero coefficients are absent."""
    coefficients: Tuple[Tuple[str, Fraction], ...] = ()
    constant: Fraction = Fraction(0)

    @classmethod
    def of(cls, coefficients: Mapping[str, Number] = None, constant: Number = 0) -> "LinearTerm":
        items = []
        for name, coef in (coefficients or {}).items():
            coef = to_fraction(coef)
            if coef != 0:
                items.append((name, coef))
        return cls(tuple(sorted(items)), to_fraction(constant))

    @classmethod
    def var(cls, name: str, coefficient: Number = 1) -> "LinearTerm":
        return cls.of({name: coefficient})

    @classmethod
    def const(cls, value: Number) -> "LinearTerm":
        return cls.of({}, value)

    def as_dict(self) -> Dict[str, Fraction]:
        return dict(self.coefficients)

    def coefficient(self, name: str) -> Fraction:
        for n, c in self.coefficients:
            if n == name:
                return c
        return Fraction(0)

    @property
    def variables(self) -> FrozenSet[str]:
        return frozenset(n for n, _ in self.coefficients)

    @property
    def is_constant(self) -> bool:
        return not self.coefficients

    def evaluate(self, values: Valuation) -> Fraction:
        total = self.constant
        for name, coef in self.coefficients:
            total += coef * values[name]
        return total

    def __add__(self, other: "LinearTerm") -> "LinearTerm":
        merged = self.as_dict()
        for name, coef in other.coefficients:
            merged[name] = merged.get(name, Fraction(0)) + coef
        return LinearTerm.of(merged, self.constant + other.constant)

    def __neg__(self) -> "LinearTerm":
        return self.scale(-1)

    def __sub__(self, other: "LinearTerm") -> "LinearTerm":
        return self + (-other)

    def scale(self, factor: Number) -> "LinearTerm":
        factor = to_fraction(factor)
        return LinearTerm.of({n: c * factor for n, c in self.coefficients}, self.constant * factor)

    def substitute(self, name: str, replacement: "LinearTerm") -> "LinearTerm":
        """Replace every occurrence of `name` by `replacement`."""
        coef = self.coefficient(name)
        if coef == 0:
            return self
        rest = LinearTerm.of({n: c for n, c in self.coefficients if n != name}, self.constant)
        return rest + replacement.scale(coef)

    def substitute_values(self, values: Valuation) -> "LinearTerm":
        """Fix the variables assigned by `values`; others stay symbolic."""
        constant = self.constant
        remaining = {}
        for name, coef in self.coefficients:
            if name in values:
                constant += coef * values[name]
            else:
                remaining[name] = coef
        return LinearTerm.of(remaining, constant)

    def rename(self, mapping: Mapping[str, str]) -> "LinearTerm":
        return LinearTerm.of({mapping.get(n, n): c for n, c in self.coefficients}, self.constant)

    def __str__(self) -> str:
        return render_sum(self.coefficients, self.constant)


def render_sum(coefficients: Iterable[Tuple[str, Fraction]], constant: Fraction) -> str:
    """Render `2*p1 - p2 + 3` style sums."""
    parts: List[str] = []
    for name, coef in coefficients:
        magnitude = abs(coef)
        body = name if magnitude == 1 else f"{magnitude}*{name}"
        if not parts:
            parts.append(body if coef > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coef > 0 else f"- {body}")
    if constant != 0 or not parts:
        if not parts:
            parts.append(format_fraction(constant))
        else:
            parts.append(f"+ {abs(constant)}" if constant > 0 else f"- {abs(constant)}")
    return " ".join(parts)


# ============================================================================
# ATOMIC CONSTRAINTS
# ============================================================================

class Relation(str, Enum):
    """Comparison of a linear term against zero."""
    LT = "<"
    LE = "<="
    EQ = "="
    GE = ">="
    GT = ">"

    def holds(self, value: Fraction) -> bool:
        if self is Relation.LT:
            return value < 0
        if self is Relation.LE:
            return value <= 0
        if self is Relation.EQ:
            return value == 0
        if self is Relation.GE:
            return value >= 0
        return value > 0

    @property
    def flipped(self) -> "Relation":
        """Relation obtained by negating the term (t < 0 iff -t > 0)."""
        return _FLIPPED[self]

    @property
    def is_strict(self) -> bool:
        return self in (Relation.LT, Relation.GT)

    @classmethod
    def parse(cls, text: str) -> "Relation":
        return _SPELLINGS[text]


_FLIPPED = {
    Relation.LT: Relation.GT,
    Relation.LE: Relation.GE,
    Relation.EQ: Relation.EQ,
    Relation.GE: Relation.LE,
    Relation.GT: Relation.LT,
}

_SPELLINGS = {
    "<": Relation.LT, "<=": Relation.LE, "=": Relation.EQ, "==": Relation.EQ,
    ">=": Relation.GE, ">": Relation.GT, "≤": Relation.LE, "≥": Relation.GE,
}


def normalize_coefficients(
    coefficients: Mapping[str, Fraction], constant: Fraction
) -> Tuple[Tuple[Tuple[str, int], ...], Fraction]:
    """Scale by a positive factor so coefficients are coprime integers."""
    if not coefficients:
        return (), constant
    denominators = lcm(*(Fraction(c).denominator for c in coefficients.values()))
    scaled = {n: int(Fraction(c) * denominators) for n, c in coefficients.items()}
    divisor = gcd(*scaled.values())
    factor = Fraction(denominators, divisor)
    return (
        tuple(sorted((n, v // divisor) for n, v in scaled.items())),
        constant * factor,
    )


@dataclass(frozen=True)
class AtomicConstraint:
    """`term ⋈ 0` for a relation ⋈."""
    term: LinearTerm
    relation: Relation

    @classmethod
    def compare(cls, lhs: LinearTerm, relation: Relation, rhs: LinearTerm) -> "AtomicConstraint":
        """Build `lhs ⋈ rhs`."""
        return cls(lhs - rhs, relation)

    @property
    def variables(self) -> FrozenSet[str]:
        return self.term.variables

    @property
    def is_ground(self) -> bool:
        return self.term.is_constant

    def holds(self, values: Valuation) -> bool:
        return self.relation.holds(self.term.evaluate(values))

    def normalized(self) -> "AtomicConstraint":
        """
        Equivalent atom using only <, <= or =, with coprime integer coefficients.

        Equalities are additionally oriented so the first coefficient is positive.
        """
        term, relation = self.term, self.relation
        if relation in (Relation.GE, Relation.GT):
            term, relation = -term, relation.flipped
        coefficients, constant = normalize_coefficients(term.as_dict(), term.constant)
        if relation is Relation.EQ and coefficients and coefficients[0][1] < 0:
            coefficients = tuple((n, -c) for n, c in coefficients)
            constant = -constant
        return AtomicConstraint(
            LinearTerm(tuple((n, Fraction(c)) for n, c in coefficients), constant), relation
        )

    def negations(self) -> List["AtomicConstraint"]:
        """Atoms whose union is the complement of this one."""
        term = self.term
        if self.relation is Relation.EQ:
            return [AtomicConstraint(term, Relation.LT), AtomicConstraint(term, Relation.GT)]
        opposite = {
            Relation.LT: Relation.GE, Relation.LE: Relation.GT,
            Relation.GE: Relation.LT, Relation.GT: Relation.LE,
        }[self.relation]
        return [AtomicConstraint(term, opposite)]

    def substitute_values(self, values: Valuation) -> "AtomicConstraint":
        return AtomicConstraint(self.term.substitute_values(values), self.relation)

    def substitute(self, name: str, replacement: LinearTerm) -> "AtomicConstraint":
        return AtomicConstraint(self.term.substitute(name, replacement), self.relation)

    def rename(self, mapping: Mapping[str, str]) -> "AtomicConstraint":
        return AtomicConstraint(self.term.rename(mapping), self.relation)

    def __str__(self) -> str:
        """Human form with positive terms on the left, e.g. `x2 = x1 + p3`."""
        term, relation = self.term, self.relation
        if not any(c > 0 for _, c in term.coefficients) and term.coefficients:
            term, relation = -term, relation.flipped
        if term.is_constant:
            return f"{format_fraction(term.constant)} {relation.value} 0"
        left = [(n, c) for n, c in term.coefficients if c > 0]
        right = [(n, -c) for n, c in term.coefficients if c < 0]
        return f"{render_sum(left, Fraction(0))} {relation.value} {render_sum(right, -term.constant)}"
