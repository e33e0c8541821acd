"""Finite unions of convex constraints and exact containment."""

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Mapping, Sequence, Tuple
import logging

from ..core.errors import ContextMismatchError
from .convex import ConvexConstraint, VarRef
from .linear import AtomicConstraint, LinearTerm, Number, Relation, Valuation, Var

logger = logging.getLogger(__name__)


def subtract(piece: ConvexConstraint, removed: ConvexConstraint) -> List[ConvexConstraint]:
    """
    Convex pieces covering `piece` minus `removed`.

    The piece is split along the negation of each atom of `removed` in turn:
    the k-th part satisfies the first k-1 atoms and violates the k-th.
    """
    pieces: List[ConvexConstraint] = []
    prefix = piece
    for atom in removed.atoms:
        for negation in atom.negations():
            part = prefix.with_atoms(negation)
            if part.is_satisfiable():
                pieces.append(part)
        prefix = prefix.with_atoms(atom)
        if not prefix.is_satisfiable():
            break
    return pieces


@dataclass(frozen=True)
class ConstraintSet:
    """Union of convex constraints over one context; unsatisfiable disjuncts are pruned."""
    context: Tuple[Var, ...]
    disjuncts: Tuple[ConvexConstraint, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "context", tuple(self.context))
        kept = []
        for disjunct in self.disjuncts:
            if disjunct.context != self.context:
                raise ContextMismatchError(
                    f"Disjunct over {list(disjunct.names)} does not match {[v.name for v in self.context]}"
                )
            if disjunct.is_satisfiable():
                kept.append(disjunct)
        object.__setattr__(self, "disjuncts", tuple(kept))

    @classmethod
    def empty(cls, context: Sequence[Var]) -> "ConstraintSet":
        return cls(tuple(context), ())

    @classmethod
    def universe(cls, context: Sequence[Var]) -> "ConstraintSet":
        return cls(tuple(context), (ConvexConstraint.true(context),))

    @classmethod
    def of(cls, constraint: ConvexConstraint) -> "ConstraintSet":
        return cls(constraint.context, (constraint,))

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(v.name for v in self.context)

    def __iter__(self) -> Iterator[ConvexConstraint]:
        return iter(self.disjuncts)

    def __len__(self) -> int:
        return len(self.disjuncts)

    def is_empty(self) -> bool:
        return not self.disjuncts

    def satisfies(self, values: Valuation) -> bool:
        return any(d.satisfies(values) for d in self.disjuncts)

    def _check(self, other: "ConstraintSet"):
        if self.context != other.context:
            raise ContextMismatchError(
                f"Constraint sets over {list(self.names)} and {list(other.names)}"
            )

    def union(self, other: "ConstraintSet") -> "ConstraintSet":
        self._check(other)
        return ConstraintSet(self.context, self.disjuncts + other.disjuncts)

    def add(self, disjunct: ConvexConstraint) -> "ConstraintSet":
        return ConstraintSet(self.context, self.disjuncts + (disjunct,))

    def intersect(self, other: "ConstraintSet") -> "ConstraintSet":
        self._check(other)
        return ConstraintSet(
            self.context, tuple(a & b for a in self.disjuncts for b in other.disjuncts)
        )

    def restrict(self, constraint: ConvexConstraint) -> "ConstraintSet":
        """Intersect every disjunct with one convex constraint."""
        return ConstraintSet(self.context, tuple(d & constraint for d in self.disjuncts))

    def eliminate(self, variables: Iterable[VarRef]) -> "ConstraintSet":
        drop = {v.name if isinstance(v, Var) else v for v in variables}
        projected = tuple(d.eliminate(drop) for d in self.disjuncts)
        context = tuple(v for v in self.context if v.name not in drop)
        return ConstraintSet(context, projected)

    def substitute(self, values: Mapping[str, Number]) -> "ConstraintSet":
        projected = tuple(d.substitute(values) for d in self.disjuncts)
        context = tuple(v for v in self.context if v.name not in values)
        return ConstraintSet(context, projected)

    def minus(self, removed: ConvexConstraint) -> "ConstraintSet":
        pieces: List[ConvexConstraint] = []
        for disjunct in self.disjuncts:
            pieces.extend(subtract(disjunct, removed))
        return ConstraintSet(self.context, tuple(pieces))

    def contains(self, other: "ConstraintSet") -> bool:
        """True iff every point of `other` lies in this set."""
        self._check(other)
        for disjunct in other.disjuncts:
            remaining = [disjunct]
            for cover in self.disjuncts:
                remaining = [part for piece in remaining for part in subtract(piece, cover)]
                if not remaining:
                    break
            if remaining:
                return False
        return True

    def equivalent(self, other: "ConstraintSet") -> bool:
        return self.contains(other) and other.contains(self)

    def simplify(self) -> "ConstraintSet":
        """Drop redundant atoms and disjuncts covered by other disjuncts."""
        reduced = [d.remove_redundant() for d in self.disjuncts]
        kept: List[ConvexConstraint] = []
        for index, disjunct in enumerate(reduced):
            others = ConstraintSet(self.context, tuple(kept) + tuple(reduced[index + 1:]))
            if not others.contains(ConstraintSet.of(disjunct)):
                kept.append(disjunct)
        return ConstraintSet(self.context, tuple(kept))

    def __str__(self) -> str:
        if not self.disjuncts:
            return "false"
        if len(self.disjuncts) == 1:
            return str(self.disjuncts[0])
        return " || ".join(f"({d})" for d in self.disjuncts)


def set_contains(a: ConstraintSet, b: ConstraintSet) -> bool:
    """Convenience wrapper: True iff every point of `b` lies in `a`."""
    return a.contains(b)


def nonnegative(context: Sequence[Var], names: Iterable[str] = None) -> ConvexConstraint:
    """`v >= 0` for each named variable (all of the context by default)."""
    names = [v.name for v in context] if names is None else list(names)
    return ConvexConstraint(
        tuple(context),
        tuple(AtomicConstraint(LinearTerm.var(n), Relation.GE) for n in names),
    )
