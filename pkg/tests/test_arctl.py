"""Tests for valuation synthesis over mixed transition systems."""

import pytest

from src.arctl import (
    MTS,
    ParamValuation,
    PreStrategy,
    ValuationUniverse,
    enumerate_paths,
    eval_fixed,
    minimal_valuations,
    satisfying_states,
    synthesize,
    universe_for,
)
from src.core.errors import TooManyValuationsError, UnboundVariableError, UnknownStateError
from src.io import parse_formula, parse_model
from tests.generators import random_mts

SAFE_EVERYWHERE = "E[Y] G (E[Z] F safe)"

RANDOM_FORMULAS = [
    "E[Y] X p",
    "E[Y] G q",
    "Ew[Z] G !p",
    "E[Y] (p U E[Z] X q)",
    "!E[Z] F (p & q)",
    "E[Y] G (E[Z] F p)",
    "E[Z] X true | E[Y] G false",
]


def valuation(**actions) -> ParamValuation:
    return ParamValuation.of(actions)


# ============================================================================
# VALUATIONS
# ============================================================================

def test_universe_numbering_round_trips():
    universe = ValuationUniverse(["Z", "Y"], ["left", "right", "forw"])
    assert universe.variables == ("Y", "Z")
    assert universe.size == 49
    for index in range(universe.size):
        assert universe.index(universe.valuation(index)) == index


def test_universe_respects_caps():
    with pytest.raises(TooManyValuationsError):
        universe_for(["Y"], [f"a{i}" for i in range(9)])
    with pytest.raises(TooManyValuationsError):
        universe_for(["W", "X", "Y", "Z"], ["a"])
    assert universe_for(["Y"], [f"a{i}" for i in range(9)], {"max_actions": 9}).size == 511


def test_valuation_set_algebra():
    universe = ValuationUniverse(["Y"], ["a", "b"])
    with_a = universe.containing("Y", "a")
    with_b = universe.containing("Y", "b")
    assert len(with_a) == 2
    assert (with_a & with_b).sorted() == [valuation(Y=["a", "b"])]
    assert (with_a | with_b) == universe.full()
    assert with_a.complement().sorted() == [valuation(Y=["b"])]


def test_minimal_valuations_of_the_full_universe():
    universe = ValuationUniverse(["Y", "Z"], ["a", "b"])
    assert minimal_valuations(universe.full()) == universe.singletons().sorted()


def test_empty_action_sets_are_rejected():
    with pytest.raises(ValueError):
        valuation(Y=[])


# ============================================================================
# WORKED EXAMPLE
# ============================================================================

@pytest.mark.corpus
def test_synthesis_needs_forward_in_z(robot):
    result = synthesize(robot, parse_formula(SAFE_EVERYWHERE))
    universe = result["s0"].universe
    expected = universe.containing("Z", "forw")
    assert result["s0"] == expected
    assert len(result["s0"]) == 8 * 15
    assert expected.issubset(result["s3"])


@pytest.mark.corpus
def test_minimal_valuations_at_the_initial_state(robot):
    result = synthesize(robot, parse_formula(SAFE_EVERYWHERE))
    minimal = minimal_valuations(result["s0"])
    assert len(minimal) == 4
    assert all(v["Z"] == {"forw"} and len(v["Y"]) == 1 for v in minimal)


@pytest.mark.corpus
def test_fixed_valuations(robot):
    formula = parse_formula(SAFE_EVERYWHERE)
    assert eval_fixed(robot, valuation(Y=["left"], Z=["forw"]), formula, "s0")
    assert not eval_fixed(robot, valuation(Y=["left"], Z=["left", "right", "back"]), formula, "s0")
    assert satisfying_states(robot, valuation(Y=["left"], Z=["back"]), formula) == {"s3"}


def test_unbound_variables(robot):
    with pytest.raises(UnboundVariableError):
        synthesize(robot, parse_formula("E[W] X safe"))
    with pytest.raises(UnboundVariableError):
        eval_fixed(robot, valuation(Y=["left"]), parse_formula(SAFE_EVERYWHERE), "s0")


def test_unknown_state(robot):
    with pytest.raises(UnknownStateError):
        eval_fixed(robot, valuation(Y=["left"], Z=["forw"]), parse_formula("safe"), "s9")


def test_concrete_action_sets(robot):
    result = synthesize(robot, parse_formula("E[{forw}] X safe"))
    assert result["s0"] == result["s0"].universe.full()
    assert result["s3"].is_empty()


def test_finite_and_infinite_globally_differ_on_deadlocks():
    mts = MTS(
        ("s0", "s1"), "s0", ("a",), (("s0", "a", "s1"),), {"s0": frozenset({"p"}), "s1": frozenset({"p"})},
        frozenset({"p"}), ("Y",),
    )
    finite = synthesize(mts, parse_formula("E[Y] G p"))
    infinite = synthesize(mts, parse_formula("Ew[Y] G p"))
    assert not finite["s0"].is_empty()
    assert infinite["s0"].is_empty()


def test_enumerate_paths_stops_at_deadlocks(robot):
    paths = enumerate_paths(robot, frozenset({"left"}), "s0", 3)
    assert [str(p) for p in paths] == ["(s0, left, s1)"]
    assert paths[0].is_maximal_finite


def test_enumerate_paths_lists_each_truncated_path_once():
    mts = parse_model(
        "actions x y; state a; state b; state c; init a; trans a -x-> b; trans b -x-> c; trans b -y-> c;",
        "mts",
    )
    paths = enumerate_paths(mts, frozenset({"x", "y"}), "a", 2)
    assert [str(p) for p in paths] == ["(a, x, b)"]
    assert paths[0].truncated


# ============================================================================
# PROPERTY SUITES
# ============================================================================

@pytest.mark.slow
def test_synthesis_agrees_with_fixed_valuations(rng):
    formulas = [parse_formula(text) for text in RANDOM_FORMULAS]
    for _ in range(100):
        mts = random_mts(rng)
        universe = universe_for(mts.variables, mts.actions)
        for formula in formulas:
            result = synthesize(mts, formula, universe)
            for v in universe.full():
                states = satisfying_states(mts, v, formula)
                for state in mts.states:
                    assert (v in result[state]) == (state in states), (formula, v, state)


@pytest.mark.slow
def test_pre_image_strategies_agree(rng):
    formulas = [parse_formula(text) for text in RANDOM_FORMULAS]
    for _ in range(100):
        mts = random_mts(rng)
        for formula in formulas:
            per_action = synthesize(mts, formula, strategy=PreStrategy.PER_ACTION)
            explicit = synthesize(mts, formula, strategy=PreStrategy.EXPLICIT)
            assert per_action == explicit, formula
