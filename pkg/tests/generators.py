"""Seeded random models and constraints for the property suites."""

from fractions import Fraction
from random import Random
from typing import Dict, List, Sequence, Tuple

from src.arctl import MTS
from src.constraints import AtomicConstraint, ConstraintSet, ConvexConstraint, LinearTerm, Relation, Var
from src.pimc import PIMC, ParamInterval
from src.ppn import PPN

RELATIONS = list(Relation)


def random_atom(rng: Random, context: Sequence[Var]) -> AtomicConstraint:
    coefficients = {v.name: rng.randint(-2, 2) for v in context if rng.random() < 0.6}
    constant = Fraction(rng.randint(-8, 8), 2)
    return AtomicConstraint(LinearTerm.of(coefficients, constant), rng.choice(RELATIONS))


def random_convex(rng: Random, context: Sequence[Var], atoms: int = 3) -> ConvexConstraint:
    return ConvexConstraint(tuple(context), tuple(random_atom(rng, context) for _ in range(atoms)))


def random_set(rng: Random, context: Sequence[Var], disjuncts: int = 3) -> ConstraintSet:
    count = rng.randint(0, disjuncts)
    return ConstraintSet(
        tuple(context), tuple(random_convex(rng, context, rng.randint(1, 3)) for _ in range(count))
    )


# ============================================================================
# CHAINS
# ============================================================================

ENDPOINTS = [Fraction(0), Fraction(1, 5), Fraction(3, 10), Fraction(1, 2), Fraction(7, 10), Fraction(1)]


def random_pimc(rng: Random, states: int = 3, parameters: Tuple[str, ...] = ("p",)) -> PIMC:
    """A small pIMC whose endpoints are constants or a parameter."""
    names = [f"s{i}" for i in range(states)]
    phi: Dict[Tuple[str, str], ParamInterval] = {}
    for source in names:
        targets = rng.sample(names, rng.randint(1, states))
        for target in targets:
            low, up = sorted(rng.sample(ENDPOINTS, 2))
            if rng.random() < 0.4:
                low = rng.choice(parameters)
            elif rng.random() < 0.4:
                up = rng.choice(parameters)
            phi[(source, target)] = ParamInterval(low, up)
    labels = {name: frozenset({rng.choice("ab")}) for name in names}
    return PIMC(tuple(names), names[0], phi, frozenset("ab"), labels, tuple(parameters))


# ============================================================================
# TRANSITION SYSTEMS
# ============================================================================

def random_mts(rng: Random, states: int = 6, actions: int = 3, variables: int = 2) -> MTS:
    names = [f"s{i}" for i in range(rng.randint(2, states))]
    action_names = [f"a{i}" for i in range(rng.randint(1, actions))]
    transitions: List[Tuple[str, str, str]] = []
    for source in names:
        for action in action_names:
            for target in names:
                if rng.random() < 0.25:
                    transitions.append((source, action, target))
    labels = {name: frozenset(p for p in ("p", "q") if rng.random() < 0.4) for name in names}
    return MTS(
        tuple(names), names[0], tuple(action_names), tuple(transitions), labels,
        frozenset({"p", "q"}), tuple(["Y", "Z"][:variables]),
    )


# ============================================================================
# NETS
# ============================================================================

def random_net(rng: Random, side: str, places: int = 3, transitions: int = 3) -> PPN:
    """A net whose parameters weigh only inputs (side='pre') or only outputs (side='post')."""
    place_names = tuple(f"q{i}" for i in range(places))
    transition_names = tuple(f"t{i}" for i in range(transitions))
    params = ("a", "b")
    pre: Dict[Tuple[str, str], object] = {}
    post: Dict[Tuple[str, str], object] = {}
    for transition in transition_names:
        for place in place_names:
            for weights, parametric in ((pre, side == "pre"), (post, side == "post")):
                roll = rng.random()
                if roll < 0.3:
                    weights[(place, transition)] = rng.randint(1, 2)
                elif roll < 0.45 and parametric:
                    weights[(place, transition)] = rng.choice(params)
    initial = {place: rng.randint(0, 2) for place in place_names}
    return PPN(place_names, transition_names, params, pre, post, initial)
