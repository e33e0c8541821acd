"""Lower-bound / upper-bound parameter classification and L/U emptiness."""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Set
import logging

from ..constraints import AtomicConstraint, ConvexConstraint, Relation
from ..core.errors import IncompleteExplorationError, NotLUError
from ..core.models import Limits
from .model import PTA, clock_of
from .reach import ReachAnalysis, reach_analysis
from .symbolic import check_locations

logger = logging.getLogger(__name__)


class LUKind(str, Enum):
    """Place of a PTA in the L/U hierarchy."""
    LU = "LU"
    L_ONLY = "L-only"
    U_ONLY = "U-only"
    NOT_LU = "notLU"


class Polarity(str, Enum):
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class LUClassification:
    """
    Verdict with the lower and upper parameter sets.

    L-only and U-only verdicts refine LU and still carry both sets; `conflicting`
    lists the parameters occurring at both polarities in a notLU verdict.
    """
    kind: LUKind
    lower: FrozenSet[str] = frozenset()
    upper: FrozenSet[str] = frozenset()
    conflicting: FrozenSet[str] = frozenset()

    @property
    def is_lu(self) -> bool:
        return self.kind is not LUKind.NOT_LU


def atom_polarities(atom, clock_names: FrozenSet[str]) -> Dict[str, Set[Polarity]]:
    """
    Polarity of each parameter in one guard atom.

    With the atom read as `x ~ sum(beta_j * p_j) + d`, a parameter is an upper
    bound when increasing it weakens the atom: beta > 0 with ~ in {<=, <}, or
    beta < 0 with ~ in {>=, >}. The reverse pairs make it a lower bound, and
    `=` makes it both.
    """
    found = clock_of(atom, clock_names)
    if found is None:
        return {}
    clock, sign = found
    # term = sign*x + rest ~ 0  is  x ~' -rest/sign
    relation = atom.relation if sign > 0 else atom.relation.flipped
    polarities: Dict[str, Set[Polarity]] = {}
    for name, coef in atom.term.coefficients:
        if name == clock:
            continue
        beta = -coef / sign
        if relation is Relation.EQ:
            polarities[name] = {Polarity.LOWER, Polarity.UPPER}
        elif (beta > 0) == (relation in (Relation.LT, Relation.LE)):
            polarities[name] = {Polarity.UPPER}
        else:
            polarities[name] = {Polarity.LOWER}
    return polarities


def classify_lu(pta: PTA) -> LUClassification:
    """
    Classify every parameter by the polarities at which it occurs.

    Examples:
        >>> classify_lu(coffee).kind
        <LUKind.NOT_LU: 'notLU'>
    """
    clock_names = frozenset(pta.clock_names)
    seen: Dict[str, Set[Polarity]] = {p: set() for p in pta.parameter_names}
    for _, constraint in pta.constraints():
        for atom in constraint.atoms:
            for name, polarities in atom_polarities(atom, clock_names).items():
                seen.setdefault(name, set()).update(polarities)

    lower = frozenset(p for p, s in seen.items() if s == {Polarity.LOWER})
    upper = frozenset(p for p, s in seen.items() if s == {Polarity.UPPER})
    conflicting = frozenset(p for p, s in seen.items() if len(s) == 2)
    if conflicting:
        kind = LUKind.NOT_LU
    elif lower and not upper:
        kind = LUKind.L_ONLY
    elif upper and not lower:
        kind = LUKind.U_ONLY
    else:
        kind = LUKind.LU
    logger.info(f"L/U classification: {kind.value} (lower {sorted(lower)}, upper {sorted(upper)})")
    return LUClassification(kind, lower, upper, conflicting)


STRICT = {Relation.LE: Relation.LT, Relation.GE: Relation.GT}


def extremal_instance(pta: PTA, classification: LUClassification) -> PTA:
    """
    The automaton with every parameter at its most permissive value.

    Lower-bound parameters take their declared lower bound, or 0 when none
    is declared. Upper-bound parameters with a declared finite upper bound
    take that bound. An open bound is never attained, so the atoms that
    mention such a parameter become strict: a run exists for values close
    enough to the bound iff it exists at the bound with those atoms strict.

    Every remaining atom mentions an upper-bound parameter without a finite
    bound and reads `x <= beta*p + e` with beta > 0, or `x >= beta*p + e`
    with beta < 0 (strict variants alike). As p grows, the right-hand side
    moves away from x in the direction the atom allows, so the atom is
    implied by any larger value of p. A finite run only visits finitely
    many clock values, so some finite p satisfies every such atom along it.
    Dropping the atom therefore keeps exactly the runs that exist for a
    sufficiently large constant.
    """
    extreme: Dict[str, Fraction] = {}
    open_ends: Set[str] = set()
    for name in pta.parameter_names:
        interval = pta.intervals.get(name)
        if name in classification.upper:
            if interval is None or interval.upper is None:
                continue
            extreme[name] = interval.upper
            if interval.upper_open:
                open_ends.add(name)
        else:
            extreme[name] = interval.lower if interval is not None else Fraction(0)
            if interval is not None and interval.lower_open:
                open_ends.add(name)
    unbounded = frozenset(p for p in classification.upper if p not in extreme)
    logger.info(f"Extremal values {extreme}; unbounded upper-bound parameters {sorted(unbounded)}")

    def tighten(atom: AtomicConstraint) -> AtomicConstraint:
        if atom.variables & open_ends:
            return AtomicConstraint(atom.term, STRICT.get(atom.relation, atom.relation))
        return atom

    def transform(constraint: ConvexConstraint) -> ConvexConstraint:
        tightened = ConvexConstraint(constraint.context, tuple(tighten(a) for a in constraint.atoms))
        substituted = tightened.substitute(extreme)
        kept = tuple(a for a in substituted.atoms if not (a.variables & unbounded))
        return ConvexConstraint(substituted.context, kept).eliminate(unbounded)

    return pta.map_constraints(transform, ())


def lu_ef_analysis(pta: PTA, targets: Iterable[str], limits: Limits = None) -> ReachAnalysis:
    """
    Reachability of the targets on the most permissive instance.

    Some valuation reaches the targets iff this instance does.

    Raises:
        NotLUError: If some parameter occurs both as lower and upper bound
    """
    goal = check_locations(pta, targets)
    classification = classify_lu(pta)
    if not classification.is_lu:
        raise NotLUError(
            f"Parameters {', '.join(sorted(classification.conflicting))} occur as both lower and upper bounds"
        )
    analysis = reach_analysis(extremal_instance(pta, classification), goal, limits)
    if not analysis.complete:
        logger.warning("Reachability on the extremal instance hit its limits")
    return analysis


def lu_ef_emptiness(pta: PTA, targets: Iterable[str], limits: Limits = None) -> bool:
    """
    True iff no parameter valuation lets a run reach the targets.

    Raises:
        NotLUError: If some parameter occurs both as lower and upper bound
        IncompleteExplorationError: If the limits cut the exploration short
    """
    analysis = lu_ef_analysis(pta, targets, limits)
    if not analysis.complete:
        raise IncompleteExplorationError(
            f"Emptiness undecided after {analysis.states_explored} states; raise maxStates"
        )
    return not analysis.reachable
