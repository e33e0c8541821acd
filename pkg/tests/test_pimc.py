"""Tests for interval Markov chains: consistency, satisfaction and synthesis."""

from fractions import Fraction

import pytest

from src.constraints import ConstraintSet
from src.core.errors import InvalidValuationError, UnknownStateError
from src.io import parse_constraint, parse_model
from src.pimc import (
    consistency_levels,
    instantiate,
    is_consistent,
    n_consistent,
    point_imc,
    satisfies,
    synthesize_consistency,
)
from tests.generators import random_pimc

GRID = [Fraction(n, 20) for n in range(21)]


# ============================================================================
# CONSISTENCY
# ============================================================================

@pytest.mark.corpus
def test_n_consistency_levels(intervals):
    assert not n_consistent(intervals, "s4", 0)
    assert n_consistent(intervals, "s2", 0)
    assert n_consistent(intervals, "s2", 1)
    levels = consistency_levels(intervals, 2)
    assert levels[0] == {"s0", "s1", "s2", "s3"}
    assert levels[-1] == levels[0]


def test_negative_level_is_rejected(intervals):
    with pytest.raises(ValueError):
        consistency_levels(intervals, -1)


def test_unknown_state_is_rejected(intervals):
    with pytest.raises(UnknownStateError):
        n_consistent(intervals, "s9", 1)


@pytest.mark.corpus
def test_consistent_with_an_implementing_witness(intervals):
    result = is_consistent(intervals)
    assert result.consistent
    assert "s4" not in result.consistent_states
    assert result.witness.problems() == []
    assert satisfies(result.witness, intervals).holds


def test_inconsistent_initial_state():
    imc = parse_model(
        "state s0; state s1; init s0; trans s0 -> s0 [0.6, 1]; trans s0 -> s1 [0.6, 1]; "
        "trans s1 -> s1 [1, 1];",
        "imc",
    )
    result = is_consistent(imc)
    assert not result.consistent
    assert result.witness is None


# ============================================================================
# SATISFACTION
# ============================================================================

@pytest.mark.corpus
def test_chain_implements_the_interval_chain(chain, intervals):
    result = satisfies(chain, intervals)
    assert result.holds
    assert ("s0", "s0") in result.witness.relation


def test_chain_outside_an_interval_does_not_implement(intervals):
    chain = parse_model(
        "state s0 labels {a}; state s1 labels {b}; state s3 labels {c}; init s0; "
        "trans s0 -> s1 1; trans s1 -> s1 0.9; trans s1 -> s3 0.1; trans s3 -> s3 1;",
        "mc",
    )
    assert not satisfies(chain, intervals).holds


def test_every_chain_implements_its_point_imc(chain):
    assert satisfies(chain, point_imc(chain)).holds


def test_satisfaction_needs_an_instance(chain, param_intervals):
    with pytest.raises(ValueError):
        satisfies(chain, param_intervals)


# ============================================================================
# PARAMETERS
# ============================================================================

def test_instantiate_checks_the_unit_interval(param_intervals):
    imc = instantiate(param_intervals, {"p": Fraction(1, 2), "q": Fraction(1, 2)})
    assert imc.parameters == ()
    assert imc.interval("s0", "s2").up == Fraction(1, 2)
    with pytest.raises(InvalidValuationError):
        instantiate(param_intervals, {"p": 2, "q": Fraction(1, 2)})
    with pytest.raises(InvalidValuationError):
        instantiate(param_intervals, {"p": 0})


@pytest.mark.corpus
def test_consistency_synthesis(param_intervals):
    synthesized = synthesize_consistency(param_intervals)
    projected = synthesized.eliminate(["p"])
    context = projected.context
    expected = ConstraintSet(context, (
        parse_constraint("3/10 <= q <= 7/10", context),
        parse_constraint("q = 1", context),
    ))
    assert projected.equivalent(expected)
    assert synthesized.satisfies({"p": 0, "q": 1})
    assert not synthesized.satisfies({"p": 0, "q": Fraction(4, 5)})


@pytest.mark.corpus
def test_synthesis_matches_instances(param_intervals):
    synthesized = synthesize_consistency(param_intervals)
    for p in GRID:
        for q in GRID:
            expected = is_consistent(instantiate(param_intervals, {"p": p, "q": q})).consistent
            assert synthesized.satisfies({"p": p, "q": q}) == expected, (p, q)


@pytest.mark.slow
def test_synthesis_matches_instances_on_random_chains(rng):
    for _ in range(200):
        pimc = random_pimc(rng, states=rng.randint(2, 4))
        synthesized = synthesize_consistency(pimc)
        for p in GRID:
            expected = is_consistent(instantiate(pimc, {"p": p})).consistent
            assert synthesized.satisfies({"p": p}) == expected, (pimc, p)
