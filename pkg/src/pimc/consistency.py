"""n-consistency and consistency of interval Markov chains, with implementation witnesses."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple
import logging

from .model import IMC, MC

logger = logging.getLogger(__name__)


def locally_consistent(imc: IMC, state: str, keep: Iterable[str]) -> bool:
    """
    True iff a distribution over `keep` fits the intervals of `state`.

    Successors outside `keep` must admit probability 0.
    """
    keep = set(keep)
    lows = Fraction(0)
    ups = Fraction(0)
    for target in imc.successors(state):
        interval = imc.interval(state, target)
        if target in keep:
            if interval.low > interval.up:
                return False
            lows += interval.low
            ups += interval.up
        elif interval.low != 0:
            return False
    return ups >= 1 and lows <= 1


def consistency_levels(imc: IMC, n: int) -> List[FrozenSet[str]]:
    """
    Sets of k-consistent states for k = 0..n.

    Level k keeps a state when its intervals admit a distribution using only
    (k-1)-consistent successors; a successor with a zero lower bound can
    always be dropped and one with a positive lower bound never can, so
    keeping every (k-1)-consistent successor is enough.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if imc.parameters:
        raise ValueError("Consistency needs an instantiated interval Markov chain")
    levels = [frozenset(s for s in imc.states if locally_consistent(imc, s, imc.successors(s)))]
    for _ in range(n):
        previous = levels[-1]
        levels.append(frozenset(
            s for s in imc.states
            if locally_consistent(imc, s, [t for t in imc.successors(s) if t in previous])
        ))
    return levels


def n_consistent(imc: IMC, state: str, n: int) -> bool:
    """
    True iff `state` is n-consistent.

    Examples:
        >>> n_consistent(intervals, "s4", 0)
        False
        >>> n_consistent(intervals, "s2", 1)
        True
    """
    imc.check_state(state)
    return state in consistency_levels(imc, n)[-1]


def _distribution(imc: IMC, state: str, keep: FrozenSet[str]) -> Dict[str, Fraction]:
    """Lower bounds first, then the residual mass up to upper bounds in declaration order."""
    kept = [t for t in imc.successors(state) if t in keep]
    shares = {t: imc.interval(state, t).low for t in kept}
    residual = 1 - sum(shares.values(), Fraction(0))
    for target in kept:
        if residual <= 0:
            break
        room = imc.interval(state, target).up - shares[target]
        extra = min(room, residual)
        shares[target] += extra
        residual -= extra
    return {t: p for t, p in shares.items() if p > 0}


@dataclass(frozen=True)
class ConsistencyResult:
    consistent: bool
    witness: Optional[MC] = None
    consistent_states: FrozenSet[str] = frozenset()


def is_consistent(imc: IMC) -> ConsistencyResult:
    """
    Decide consistency and build a same-structure implementation.

    The initial state must be |S|-consistent. The witness gives every
    reachable consistent state the distribution of `_distribution` over its
    consistent successors; the other states loop on themselves.
    """
    levels = consistency_levels(imc, len(imc.states))
    stable = levels[-1]
    if imc.initial not in stable:
        logger.info(f"Initial state {imc.initial} is not {len(imc.states)}-consistent")
        return ConsistencyResult(False, consistent_states=stable)

    matrix: Dict[Tuple[str, str], Fraction] = {}
    pending = [imc.initial]
    seen = {imc.initial}
    while pending:
        state = pending.pop(0)
        for target, probability in _distribution(imc, state, stable).items():
            matrix[(state, target)] = probability
            if target not in seen:
                seen.add(target)
                pending.append(target)
    for state in imc.states:
        if state not in seen:
            matrix[(state, state)] = Fraction(1)
    witness = MC(imc.states, imc.initial, matrix, imc.props, imc.labels)
    logger.info(f"Consistent; witness uses {len(matrix)} transitions")
    return ConsistencyResult(True, witness, stable)
