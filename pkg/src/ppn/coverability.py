"""
Coverability and reachability questions over parametric nets.

Existential coverability is decided exactly when parameters only weigh
inputs (every parameter at 0 is the most permissive choice) or only weigh
outputs and initial tokens (read as ω). Universal coverability is decided
exactly when parameters only weigh outputs (every parameter at 0 is the
least permissive choice). Everything else falls back to enumerating
valuations up to `valuation_bound`.
"""

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, Iterator, List, Optional, Tuple
import logging

from ..core.models import Limits, Verdict
from .karp_miller import coverable, km_analyze
from .model import PPN, Marking, classify, dominates, fire, instantiate, omega_net

logger = logging.getLogger(__name__)


@dataclass
class NetAnswer:
    """
    Verdict with its witness.

    `valuation` is the parameter valuation the answer was established
    under (a witness for yes on existential questions, a counterexample for
    no on universal ones); `sequence` is a firing sequence from the
    initial marking of that instance.
    """
    verdict: Verdict
    method: str
    valuation: Optional[Dict[str, int]] = None
    sequence: Optional[List[str]] = None
    details: Dict[str, object] = field(default_factory=dict)


@dataclass
class SearchOutcome:
    sequence: Optional[List[str]]
    exhausted: bool
    states: int


def search_markings(net: PPN, accept: Callable[[Marking], bool], limits: Limits) -> SearchOutcome:
    """
    Breadth-first search over exact markings for one that `accept`s.

    Markings with more than `token_cap` tokens in a place are not stored.
    `exhausted` is True when every stored marking was expanded and none was
    dropped by either limit.
    """
    start = net.initial_marking()
    parents: Dict[Marking, Tuple[Optional[Marking], Optional[str]]] = {start: (None, None)}
    queue = deque([start])
    exhausted = True

    def trace(marking: Marking) -> List[str]:
        steps = []
        while parents[marking][0] is not None:
            marking, step = parents[marking]
            steps.append(step)
        return steps[::-1]

    while queue:
        current = queue.popleft()
        if accept(current):
            return SearchOutcome(trace(current), exhausted, len(parents))
        for transition in net.transitions:
            following = fire(net, current, transition)
            if following is None or following in parents:
                continue
            if max(following, default=0) > limits.token_cap or len(parents) >= limits.max_states:
                exhausted = False
                continue
            parents[following] = (current, transition)
            queue.append(following)
    return SearchOutcome(None, exhausted, len(parents))


def enumerate_valuations(net: PPN, bound: int) -> Iterator[Dict[str, int]]:
    """Valuations with every parameter in [0, bound], lexicographically."""
    for values in product(range(bound + 1), repeat=len(net.parameters)):
        yield dict(zip(net.parameters, values))


def _zero(net: PPN) -> Dict[str, int]:
    return {p: 0 for p in net.parameters}


# ============================================================================
# COVERABILITY
# ============================================================================

def cover_instance(net: PPN, target: Marking, limits: Limits) -> Tuple[Verdict, Optional[List[str]]]:
    """Coverability in a net without parameters, with a firing sequence when one is found."""
    found, tree = coverable(net, target, limits)
    if not found:
        return (Verdict.NO if tree.complete else Verdict.UNKNOWN), None
    outcome = search_markings(net, lambda m: dominates(m, target), limits)
    if outcome.sequence is None:
        logger.warning("Target is coverable but no firing sequence was found within the limits")
    return Verdict.YES, outcome.sequence


def existential_coverable(net: PPN, target: Marking, limits: Optional[Limits] = None) -> NetAnswer:
    """
    Is `target` coverable for some valuation of the parameters?

    Args:
        net: Parametric net
        target: Marking aligned with `net.places`
        limits: `valuation_bound` bounds the fallback enumeration

    Returns:
        NetAnswer; a yes carries a witness valuation and, within the
        search limits, a firing sequence. A cover in the ω-net with no
        replayable instance run is reported as unknown.

    Examples:
        >>> existential_coverable(loan, loan.marking({"loanOk": 1})).verdict
        <Verdict.YES: 'yes'>
    """
    limits = limits or Limits()
    subclass = classify(net)

    if subclass.is_pre_t:
        valuation = _zero(net)
        verdict, sequence = cover_instance(instantiate(net, valuation), target, limits)
        logger.info(f"Existential coverability decided at the zero valuation: {verdict.value}")
        if verdict is Verdict.YES:
            return NetAnswer(verdict, "zero-valuation", valuation, sequence)
        return NetAnswer(verdict, "zero-valuation")

    if subclass.is_post_t:
        found, tree = coverable(omega_net(net), target, limits)
        if not found:
            verdict = Verdict.NO if tree.complete else Verdict.UNKNOWN
            return NetAnswer(verdict, "omega-net")
        # uniform valuations large enough to produce the target
        top = max(limits.valuation_bound, int(sum(target)))
        # the cap must let one firing overshoot the target
        search_limits = limits.merged({"token_cap": max(limits.token_cap, int(max(target, default=0)) + top)})
        for k in range(top + 1):
            valuation = {p: k for p in net.parameters}
            outcome = search_markings(
                instantiate(net, valuation), lambda m: dominates(m, target), search_limits
            )
            if outcome.sequence is not None:
                return NetAnswer(Verdict.YES, "omega-net", valuation, outcome.sequence)
        logger.warning(f"Coverable in the ω-net but no witness found with uniform values up to {top}")
        return NetAnswer(Verdict.UNKNOWN, "omega-net", details={"omega_net_covers": True, "uniform_up_to": top})

    tried = 0
    for valuation in enumerate_valuations(net, limits.valuation_bound):
        tried += 1
        verdict, sequence = cover_instance(instantiate(net, valuation), target, limits)
        if verdict is Verdict.YES:
            logger.info(f"Witness found after {tried} valuations")
            return NetAnswer(Verdict.YES, "enumeration", valuation, sequence, {"valuations": tried})
    logger.info(f"No witness among {tried} valuations up to {limits.valuation_bound}")
    return NetAnswer(Verdict.UNKNOWN, "enumeration", details={"valuations": tried})


def universal_coverable(net: PPN, target: Marking, limits: Optional[Limits] = None) -> NetAnswer:
    """Is `target` coverable under every valuation of the parameters?"""
    limits = limits or Limits()

    if classify(net).is_post_t:
        valuation = _zero(net)
        verdict, sequence = cover_instance(instantiate(net, valuation), target, limits)
        logger.info(f"Universal coverability decided at the zero valuation: {verdict.value}")
        if verdict is Verdict.NO:
            return NetAnswer(verdict, "zero-valuation", valuation)
        return NetAnswer(verdict, "zero-valuation", valuation if sequence else None, sequence)

    tried = 0
    for valuation in enumerate_valuations(net, limits.valuation_bound):
        tried += 1
        verdict, _ = cover_instance(instantiate(net, valuation), target, limits)
        if verdict is Verdict.NO:
            logger.info(f"Counterexample found after {tried} valuations")
            return NetAnswer(Verdict.NO, "enumeration", valuation, details={"valuations": tried})
    logger.info(f"No counterexample among {tried} valuations up to {limits.valuation_bound}")
    return NetAnswer(Verdict.UNKNOWN, "enumeration", details={"valuations": tried})


# ============================================================================
# REACHABILITY
# ============================================================================

def bounded_reach(net: PPN, target: Marking, limits: Optional[Limits] = None) -> NetAnswer:
    """
    Exact reachability of `target` within the token cap and state budget.

    Returns yes with a firing sequence, no-within-bound when the capped
    state space was exhausted and the net is bounded, unknown otherwise.
    """
    limits = limits or Limits()
    outcome = search_markings(net, lambda m: m == target, limits)
    details = {"states": outcome.states}
    if outcome.sequence is not None:
        return NetAnswer(Verdict.YES, "search", sequence=outcome.sequence, details=details)
    if outcome.exhausted:
        tree = km_analyze(net, limits)
        if tree.complete and tree.bounded:
            return NetAnswer(Verdict.NO_WITHIN_BOUND, "search", details=details)
    logger.info(f"Target not reached among {outcome.states} markings")
    return NetAnswer(Verdict.UNKNOWN, "search", details=details)
