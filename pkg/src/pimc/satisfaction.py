"""Satisfaction of an interval Markov chain by a Markov chain."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Set, Tuple
import logging

from ..constraints import AtomicConstraint, ConvexConstraint, LinearTerm, Relation, Var, VarKind
from .model import IMC, MC, endpoint_term

logger = logging.getLogger(__name__)

Pair = Tuple[str, str]
# delta[(t, s)][t'][s'] = share of t' sent to s'
Correspondence = Dict[str, Dict[str, Fraction]]


@dataclass(frozen=True)
class CorrespondenceWitness:
    relation: FrozenSet[Pair]
    delta: Dict[Pair, Correspondence] = field(default_factory=dict)


@dataclass(frozen=True)
class SatisfactionResult:
    holds: bool
    witness: Optional[CorrespondenceWitness] = None


def _correspondence_problem(
    mc: MC, imc: IMC, t: str, s: str, relation: Set[Pair]
) -> Tuple[Optional[ConvexConstraint], Dict[str, Pair]]:
    """
    Linear feasibility problem for a correspondence of (t, s).

    One variable per related successor pair (t', s'), with each row of
    shares summing to 1 and each interval of `s` bounding the mass it gets.
    None when some successor of `t` has no related successor of `s`.
    """
    targets = imc.successors(s)
    variables: Dict[str, Pair] = {}
    rows: Dict[str, List[str]] = {}
    for t_next, _ in mc.successors(t):
        names = []
        for s_next in targets:
            if (t_next, s_next) in relation:
                name = f"d{len(variables)}"
                variables[name] = (t_next, s_next)
                names.append(name)
        if not names:
            return None, {}
        rows[t_next] = names

    context = tuple(Var(n, VarKind.AUXILIARY) for n in variables)
    atoms: List[AtomicConstraint] = [AtomicConstraint(LinearTerm.var(n), Relation.GE) for n in variables]
    for names in rows.values():
        total = LinearTerm.of({n: 1 for n in names})
        atoms.append(AtomicConstraint.compare(total, Relation.EQ, LinearTerm.const(1)))
    probability = dict(mc.successors(t))
    for s_next in targets:
        interval = imc.interval(s, s_next)
        mass = LinearTerm.of({
            n: probability[pair[0]] for n, pair in variables.items() if pair[1] == s_next
        })
        atoms.append(AtomicConstraint.compare(mass, Relation.GE, endpoint_term(interval.low)))
        atoms.append(AtomicConstraint.compare(mass, Relation.LE, endpoint_term(interval.up)))
    return ConvexConstraint(context, tuple(atoms)), variables


def satisfies(mc: MC, imc: IMC) -> SatisfactionResult:
    """
    Decide whether `mc` implements `imc`.

    Starts from all label-agreeing pairs and removes pairs without a
    correspondence until the relation is stable; the answer is whether the
    pair of initial states survives.

    Examples:
        >>> satisfies(chain, intervals).holds
        True
    """
    if imc.parameters:
        raise ValueError("Satisfaction needs an instantiated interval Markov chain")
    relation: Set[Pair] = {
        (t, s) for t in mc.states for s in imc.states if mc.label(t) == imc.label(s)
    }
    rounds = 0
    changed = True
    while changed:
        changed = False
        rounds += 1
        for pair in sorted(relation):
            problem, _ = _correspondence_problem(mc, imc, pair[0], pair[1], relation)
            if problem is None or not problem.is_satisfiable():
                relation.discard(pair)
                changed = True
    logger.debug(f"Satisfaction relation stable after {rounds} rounds with {len(relation)} pairs")

    if (mc.initial, imc.initial) not in relation:
        return SatisfactionResult(False)
    delta: Dict[Pair, Correspondence] = {}
    for t, s in relation:
        problem, variables = _correspondence_problem(mc, imc, t, s, relation)
        point = problem.sample_point() if problem is not None else None
        if point is None:
            raise AssertionError(f"Pair ({t}, {s}) lost its correspondence")
        shares: Correspondence = {}
        for name, (t_next, s_next) in variables.items():
            if point[name] > 0:
                shares.setdefault(t_next, {})[s_next] = point[name]
        delta[(t, s)] = shares
    return SatisfactionResult(True, CorrespondenceWitness(frozenset(relation), delta))
