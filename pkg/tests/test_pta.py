"""Tests for parametric timed automata: runs, zone graphs, synthesis, L/U analyses."""

from fractions import Fraction
from itertools import product

import pytest

from src.constraints import ConstraintSet, nonnegative
from src.core.errors import EmptyInitialStateError, IncompleteExplorationError, InvalidValuationError, NotLUError
from src.core.errors import StepRejectedError
from src.core.errors import UnknownStateError
from src.core.models import Limits, Verdict
from src.io import parse_constraint, parse_model
from src.pta import (
    LUKind,
    ZoneGraphExplorer,
    classify_lu,
    concrete_reach,
    ec_check,
    ef_synthesis,
    extremal_instance,
    initial_symbolic,
    instantiate,
    ip_check,
    lu_ef_emptiness,
    reach_analysis,
    replay,
    succ,
    words_and_trace,
)

COFFEE_VALUES = {"p1": 1, "p2": 5, "p3": 8}
COFFEE_SCRIPT = [
    (0, "press"),
    (Fraction(89, 50), "press"),
    (Fraction(121, 50), "press"),
    (Fraction(4, 5), "cup"),
    (3, "coffee"),
    (0, "press"),
]


def edge_for(pta, location, action):
    return next(e for _, e in pta.edges_from(location) if e.action == action)


# ============================================================================
# MODEL
# ============================================================================

def test_coffee_shape(coffee):
    assert coffee.locations == ("idle", "add_sugar", "preparing_coffee", "done")
    assert coffee.clock_names == ("x1", "x2")
    assert coffee.parameter_names == ("p1", "p2", "p3")
    assert len(coffee.edges) == 6
    assert coffee.problems() == []


def test_instantiate_removes_parameters(coffee):
    ta = instantiate(coffee, COFFEE_VALUES)
    assert ta.parameters == ()
    assert ta.invariant("add_sugar").satisfies({"x1": 0, "x2": 5})
    assert not ta.invariant("add_sugar").satisfies({"x1": 0, "x2": 6})


def test_instantiate_rejects_partial_and_negative_valuations(coffee):
    with pytest.raises(InvalidValuationError):
        instantiate(coffee, {"p1": 1, "p2": 5})
    with pytest.raises(InvalidValuationError):
        instantiate(coffee, {"p1": -1, "p2": 5, "p3": 8})
    with pytest.raises(InvalidValuationError):
        instantiate(coffee, {"p1": 1, "p2": 5, "p3": 8, "p4": 0})


def test_declared_bounds_restrict_valuations():
    pta = parse_model(
        "clocks x; params p; bound p [0, 1); loc a invariant x <= p; init a;", "pta"
    )
    assert instantiate(pta, {"p": Fraction(1, 2)}).parameters == ()
    with pytest.raises(InvalidValuationError):
        instantiate(pta, {"p": 1})


# ============================================================================
# CONCRETE RUNS
# ============================================================================

@pytest.mark.corpus
def test_coffee_run_replays(coffee):
    run = replay(instantiate(coffee, COFFEE_VALUES), COFFEE_SCRIPT)
    assert run.total_time == 8
    assert run.final.location == "add_sugar"
    assert run.final.values() == {"x1": 0, "x2": 0}
    assert len(run) == 6
    summary = words_and_trace(run)
    assert summary.word == ("press", "press", "press", "cup", "coffee", "press")
    assert summary.trace[:3] == ("idle", "press", "add_sugar")
    assert summary.locations[-2:] == ("done", "add_sugar")
    assert not summary.accepting


def test_replay_accepts_edge_indices(coffee):
    run = replay(instantiate(coffee, COFFEE_VALUES), [(0, 0), (5, 2)])
    assert run.final.location == "preparing_coffee"
    assert run.final.values() == {"x1": 5, "x2": 5}


def test_replay_rejects_a_failed_guard(coffee):
    with pytest.raises(StepRejectedError) as excinfo:
        replay(instantiate(coffee, COFFEE_VALUES), [(0, "press"), (1, "cup")])
    assert excinfo.value.step == 2


def test_replay_rejects_an_invariant_violation(coffee):
    with pytest.raises(StepRejectedError) as excinfo:
        replay(instantiate(coffee, COFFEE_VALUES), [(0, "press"), (6, "cup")])
    assert excinfo.value.step == 2
    assert "invariant" in excinfo.value.reason


def test_replay_needs_an_instance(coffee):
    with pytest.raises(ValueError):
        replay(coffee, COFFEE_SCRIPT)


# ============================================================================
# SYMBOLIC STATES
# ============================================================================

def test_initial_zone_lets_clocks_grow_together(coffee):
    state = initial_symbolic(coffee)
    assert state.location == "idle"
    assert state.zone.satisfies({"x1": 3, "x2": 3, "p1": 0, "p2": 0, "p3": 0})
    assert not state.zone.satisfies({"x1": 3, "x2": 2, "p1": 0, "p2": 0, "p3": 0})


def test_empty_initial_zone_is_an_error():
    pta = parse_model("clocks x; loc a invariant x < 0; init a;", "pta")
    with pytest.raises(EmptyInitialStateError):
        initial_symbolic(pta)


@pytest.mark.corpus
def test_symbolic_run_contains_the_concrete_run(coffee):
    run = replay(instantiate(coffee, COFFEE_VALUES), COFFEE_SCRIPT)
    state = initial_symbolic(coffee)
    states = [state]
    for _, action in COFFEE_SCRIPT:
        state = succ(coffee, state, edge_for(coffee, state.location, action))
        assert state is not None
        states.append(state)

    assert [s.location for s in states] == [s.location for s in run.states]
    for symbolic, concrete in zip(states, run.states):
        assert symbolic.zone.satisfies({**concrete.values(), **COFFEE_VALUES}), str(symbolic)


@pytest.mark.corpus
def test_symbolic_run_parameter_projection(coffee):
    state = initial_symbolic(coffee)
    for _, action in COFFEE_SCRIPT[:5]:
        state = succ(coffee, state, edge_for(coffee, state.location, action))
    assert state.location == "done"
    projected = state.zone.project_to_parameters() & nonnegative(coffee.parameters)
    expected = parse_constraint("p1 >= 0 && 2*p1 <= p2 && p2 <= p3", coffee.parameters)
    assert ConstraintSet.of(projected).equivalent(ConstraintSet.of(expected))


def test_succ_returns_none_on_a_disabled_edge():
    pta = parse_model(
        "clocks x; loc a invariant x <= 1; loc b; init a; edge a -> b sync go guard x >= 2;", "pta"
    )
    state = initial_symbolic(pta)
    assert succ(pta, state, pta.edges[0]) is None


def test_graph_printer_marks_covered_transitions():
    pta = parse_model("clocks x; params p; loc a; init a; edge a -> a sync tick guard x <= p;", "pta")
    graph = ZoneGraphExplorer(pta, Limits()).explore()
    assert len(graph.states) == 1
    assert graph.covered == {0}
    source, edge, target = graph.transitions[0]
    assert graph.states[target].zone.includes(succ(pta, graph.states[source], edge).zone)
    text = str(graph)
    assert "0 -tick-> 0 *" in text
    assert text.splitlines()[-1].startswith("* the target state covers")


# ============================================================================
# SYNTHESIS
# ============================================================================

@pytest.mark.corpus
def test_ef_synthesis_of_coffee_done(coffee):
    result = ef_synthesis(coffee, ["done"], Limits())
    assert result.complete
    expected = ConstraintSet.of(parse_constraint("p1 >= 0 && 0 <= p2 <= p3", coffee.parameters))
    assert result.constraints.equivalent(expected)
    assert result.constraints.satisfies({"p1": 0, "p2": 2, "p3": 3})
    assert not result.constraints.satisfies({"p1": 0, "p2": 3, "p3": 2})


def test_ef_synthesis_rejects_unknown_targets(coffee):
    with pytest.raises(UnknownStateError):
        ef_synthesis(coffee, ["nowhere"], Limits())


def test_ef_synthesis_of_the_initial_location_is_the_domain(coffee):
    result = ef_synthesis(coffee, ["idle"], Limits())
    assert result.constraints.equivalent(ConstraintSet.of(nonnegative(coffee.parameters)))


@pytest.mark.corpus
def test_ef_synthesis_fixes_the_parameter(rational_only, integer_only):
    a = ef_synthesis(rational_only, ["l3"], Limits())
    b = ef_synthesis(integer_only, ["l3"], Limits())
    assert a.constraints.equivalent(ConstraintSet.of(parse_constraint("2*p = 1", rational_only.parameters)))
    assert b.constraints.equivalent(ConstraintSet.of(parse_constraint("p = 1", integer_only.parameters)))


@pytest.mark.corpus
@pytest.mark.slow
def test_synthesized_set_agrees_with_concrete_reachability(coffee, rng):
    synthesized = ef_synthesis(coffee, ["done"], Limits()).constraints
    grid = rng.sample(list(product(range(13), repeat=3)), 200)
    mismatches = []
    for p1, p2, p3 in grid:
        values = {"p1": p1, "p2": p2, "p3": p3}
        if synthesized.satisfies(values) != concrete_reach(instantiate(coffee, values), ["done"]):
            mismatches.append(values)
    assert mismatches == []


# ============================================================================
# INTEGER POINTS AND CONCRETE ANALYSES
# ============================================================================

@pytest.mark.corpus
def test_ip_check_verdicts(rational_only, integer_only, coffee):
    a = ip_check(rational_only, Limits())
    assert a.answer is Verdict.NO
    assert a.witness.location == "l3"
    assert a.complete

    b = ip_check(integer_only, Limits())
    assert b.answer is Verdict.YES
    assert b.complete

    c = ip_check(coffee, Limits(max_states=30))
    assert c.answer is Verdict.UNKNOWN
    assert not c.complete


def test_reach_analysis_on_instances(coffee):
    assert reach_analysis(instantiate(coffee, COFFEE_VALUES), ["done"]).verdict is Verdict.YES
    blocked = reach_analysis(instantiate(coffee, {"p1": 1, "p2": 5, "p3": 3}), ["done"])
    assert blocked.verdict is Verdict.NO
    assert blocked.complete


def test_reach_analysis_needs_an_instance(coffee):
    with pytest.raises(ValueError):
        reach_analysis(coffee, ["done"])


def test_ec_check_finds_the_coffee_cycle(coffee):
    assert ec_check(instantiate(coffee, COFFEE_VALUES)) is Verdict.YES


def test_ec_check_without_cycles(integer_only):
    assert ec_check(instantiate(integer_only, {"p": 1})) is Verdict.UNKNOWN


# ============================================================================
# L/U
# ============================================================================

@pytest.mark.corpus
def test_lu_classification(coffee, coffee_lu):
    plain = classify_lu(coffee)
    assert plain.kind is LUKind.NOT_LU
    assert plain.conflicting == {"p2", "p3"}

    weakened = classify_lu(coffee_lu)
    assert weakened.kind is LUKind.LU
    assert weakened.lower == {"p1"}
    assert weakened.upper == {"p2", "p3"}


def test_lu_refinements():
    lower_only = parse_model("clocks x; params p; loc a; loc b; init a; edge a -> b sync go guard x >= p;", "pta")
    upper_only = parse_model("clocks x; params p; loc a invariant x <= p; init a;", "pta")
    assert classify_lu(lower_only).kind is LUKind.L_ONLY
    assert classify_lu(upper_only).kind is LUKind.U_ONLY


@pytest.mark.corpus
def test_lu_emptiness(coffee, coffee_lu):
    assert lu_ef_emptiness(coffee_lu, ["done"]) is False
    with pytest.raises(NotLUError):
        lu_ef_emptiness(coffee, ["done"])


def test_extremal_instance_drops_upper_bounds(coffee_lu):
    ta = extremal_instance(coffee_lu, classify_lu(coffee_lu))
    assert ta.parameters == ()
    assert ta.invariant("add_sugar").satisfies({"x1": 0, "x2": 1000})
    assert concrete_reach(ta, ["done"])


@pytest.mark.parametrize("bound, empty", [("[2, inf)", True), ("(1, inf)", True), ("[1, inf)", False)])
def test_extremal_instance_uses_declared_lower_bounds(bound, empty):
    text = f"clocks x; params p; bound p {bound}; loc a invariant x <= 1; loc b; init a; edge a -> b sync go guard x >= p;"
    pta = parse_model(text, "pta")
    assert lu_ef_emptiness(pta, ["b"]) is empty


def test_extremal_instance_uses_declared_upper_bounds():
    text = "clocks x; params p; loc a invariant x <= p; loc b; init a; edge a -> b sync go guard x >= 5;"
    assert lu_ef_emptiness(parse_model(text, "pta"), ["b"]) is False
    bounded = parse_model(text.replace("params p;", "params p; bound p [0, 3];"), "pta")
    assert lu_ef_emptiness(bounded, ["b"]) is True


def test_cut_off_exploration_is_not_unreachable(coffee, coffee_lu):
    ta = instantiate(coffee, COFFEE_VALUES)
    assert concrete_reach(ta, ["done"])
    with pytest.raises(IncompleteExplorationError):
        concrete_reach(ta, ["done"], Limits(max_states=1))
    with pytest.raises(IncompleteExplorationError):
        lu_ef_emptiness(coffee_lu, ["done"], Limits(max_states=1))
