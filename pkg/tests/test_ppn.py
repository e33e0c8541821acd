"""Tests for parametric Petri nets: firing, subclasses, coverability trees and questions."""

from itertools import product

import pytest

from src.core.errors import InvalidValuationError, StepRejectedError
from src.core.models import Limits, Verdict
from src.ppn import (
    OMEGA,
    PPN,
    bounded_reach,
    check_valuation,
    classify,
    cover_instance,
    coverable,
    dominates,
    enumerate_valuations,
    existential_coverable,
    fire,
    instantiate,
    km_analyze,
    omega_net,
    replay_sequence,
    universal_coverable,
)
from tests.generators import random_net

LOAN_VALUES = {"a": 0, "b": 1, "c": 2, "d": 3, "e": 1, "f": 1}
LOAN_RUN = [
    "grantLoan", "reimburse", "reimburse", "reimburse",
    "endLoan", "repayLoan", "payInterest", "finish",
]

GROWING = PPN(("p",), ("t",), pre={("p", "t"): 1}, post={("p", "t"): 2}, initial={"p": 1})


# ============================================================================
# FIRING AND INSTANCES
# ============================================================================

@pytest.mark.corpus
def test_loan_run(loan):
    net = instantiate(loan, LOAN_VALUES)
    markings = replay_sequence(net, LOAN_RUN)
    assert markings[1] == net.marking({"funds": 2, "lock1": 1, "months": 3})
    assert markings[4] == net.marking({"funds": 2, "lock1": 1, "bank": 3})
    assert markings[-1] == net.marking({"funds": 2, "lock2": 1, "loanFinished": 1})


def test_disabled_transition(loan):
    net = instantiate(loan, LOAN_VALUES)
    assert fire(net, net.initial_marking(), "reimburse") is None
    with pytest.raises(StepRejectedError) as excinfo:
        replay_sequence(net, ["grantLoan", "repayLoan"])
    assert excinfo.value.step == 2


def test_parametric_nets_do_not_fire(loan):
    with pytest.raises(ValueError):
        fire(loan, (1, 0, 0, 0, 0, 0, 0, 0, 0), "grantLoan")


def test_valuations_are_natural_numbers(loan):
    assert check_valuation(loan, {**LOAN_VALUES, "c": "4"})["c"] == 4
    with pytest.raises(InvalidValuationError):
        instantiate(loan, {**LOAN_VALUES, "c": -1})
    with pytest.raises(InvalidValuationError):
        instantiate(loan, {**LOAN_VALUES, "c": 0.5})
    with pytest.raises(InvalidValuationError):
        instantiate(loan, {k: v for k, v in LOAN_VALUES.items() if k != "a"})


def test_enumerate_valuations_counts(loan):
    assert sum(1 for _ in enumerate_valuations(loan, 1)) == 2 ** 6
    assert next(enumerate_valuations(loan, 3)) == {p: 0 for p in loan.parameters}


# ============================================================================
# SUBCLASSES
# ============================================================================

@pytest.mark.corpus
def test_loan_is_in_no_subclass(loan):
    assert classify(loan).names() == []


def test_subclass_flags():
    pre_only = PPN(("p",), ("t",), ("k",), pre={("p", "t"): "k"})
    post_only = PPN(("p",), ("t",), ("k",), post={("p", "t"): "k"})
    initial_only = PPN(("p",), ("t",), ("k",), initial={"p": "k"})
    assert classify(pre_only).names() == ["preT", "distinctT"]
    assert classify(post_only).names() == ["postT", "distinctT"]
    assert classify(initial_only).names() == ["postT", "distinctT", "P"]
    assert classify(GROWING).names() == ["preT", "postT", "distinctT", "P", "plain"]


def test_omega_net_reads_outputs_as_omega():
    net = omega_net(PPN(("p", "q"), ("t",), ("k",), pre={("p", "t"): 1}, post={("q", "t"): "k"}, initial={"p": 1}))
    assert fire(net, net.initial_marking(), "t") == (0, OMEGA)
    with pytest.raises(ValueError):
        omega_net(PPN(("p",), ("t",), ("k",), pre={("p", "t"): "k"}))


# ============================================================================
# COVERABILITY TREES
# ============================================================================

@pytest.mark.corpus
def test_loan_instance_is_bounded(loan):
    tree = km_analyze(instantiate(loan, LOAN_VALUES))
    assert tree.complete
    assert tree.bounded
    assert tree.unbounded_places == frozenset()


def test_growing_place_is_unbounded():
    tree = km_analyze(GROWING)
    assert not tree.bounded
    assert tree.unbounded_places == {"p"}
    assert tree.simultaneously_unbounded == [{"p"}]


def test_simultaneously_unbounded_places():
    net = PPN(
        ("p", "q", "r"), ("t", "u"),
        pre={("p", "t"): 1, ("p", "u"): 1},
        post={("p", "t"): 1, ("q", "t"): 1, ("p", "u"): 1, ("r", "u"): 1},
        initial={"p": 1},
    )
    tree = km_analyze(net)
    assert tree.unbounded_places == {"q", "r"}
    assert {"q", "r"} in tree.simultaneously_unbounded


def test_tree_respects_the_state_budget():
    tree = km_analyze(GROWING, Limits(max_states=1))
    assert not tree.complete


def test_covering_path_fires(loan):
    net = instantiate(loan, LOAN_VALUES)
    target = net.marking({"loanFinished": 1})
    found, tree = coverable(net, target)
    assert found
    path = tree.path_to(tree.covering_node(target))
    assert dominates(replay_sequence(net, path)[-1], target)


# ============================================================================
# PARAMETRIC QUESTIONS
# ============================================================================

@pytest.mark.corpus
def test_existential_witness_replays(loan):
    target = loan.marking({"loanFinished": 1})
    answer = existential_coverable(loan, target, Limits(valuation_bound=2))
    assert answer.verdict is Verdict.YES
    assert answer.method == "enumeration"
    net = instantiate(loan, answer.valuation)
    assert dominates(replay_sequence(net, answer.sequence)[-1], target)


def test_universal_coverability_finds_a_counterexample(loan):
    answer = universal_coverable(loan, loan.marking({"bank": 1}), Limits(valuation_bound=1))
    assert answer.verdict is Verdict.NO
    assert answer.valuation is not None
    verdict, _ = cover_instance(instantiate(loan, answer.valuation), loan.marking({"bank": 1}), Limits())
    assert verdict is Verdict.NO


def test_post_only_nets_use_the_omega_net():
    net = PPN(("p", "q"), ("t", "u"), ("k",),
              pre={("p", "t"): 1, ("q", "u"): 3},
              post={("q", "t"): "k", ("p", "u"): 1},
              initial={"p": 1})
    target = net.marking({"q": 3})
    answer = existential_coverable(net, target)
    assert answer.verdict is Verdict.YES
    assert answer.method == "omega-net"
    assert dominates(replay_sequence(instantiate(net, answer.valuation), answer.sequence)[-1], target)

    universal = universal_coverable(net, target)
    assert universal.verdict is Verdict.NO
    assert universal.valuation == {"k": 0}


def test_omega_net_witness_needs_more_tokens_than_the_cap():
    net = PPN(("p", "q"), ("t",), ("k",), pre={("p", "t"): 1}, post={("q", "t"): "k"}, initial={"p": 1})
    target = net.marking({"q": 30})
    answer = existential_coverable(net, target, Limits(max_states=5000, token_cap=20))
    assert answer.verdict is Verdict.YES
    assert answer.valuation == {"k": 30}
    assert answer.sequence == ["t"]
    assert dominates(replay_sequence(instantiate(net, answer.valuation), answer.sequence)[-1], target)


def test_bounded_reach(loan):
    net = instantiate(loan, LOAN_VALUES)
    final = net.marking({"funds": 2, "lock2": 1, "loanFinished": 1})
    assert bounded_reach(net, final).verdict is Verdict.YES
    assert bounded_reach(net, net.marking({"start": 2})).verdict is Verdict.NO_WITHIN_BOUND
    assert bounded_reach(GROWING, GROWING.marking({"p": 0})).verdict is Verdict.UNKNOWN


# ============================================================================
# PROPERTY SUITES
# ============================================================================

SMALL = Limits(max_states=5000, token_cap=50)


def _verdicts(net, target):
    return {
        values: cover_instance(instantiate(net, dict(zip(net.parameters, values))), target, SMALL)[0]
        for values in product(range(3), repeat=len(net.parameters))
    }


def _random_target(rng, net):
    return net.marking({p: rng.randint(0, 2) for p in net.places})


@pytest.mark.slow
@pytest.mark.parametrize("side", ["pre", "post"])
def test_coverability_is_monotone_in_the_parameters(rng, side):
    for _ in range(100):
        net = random_net(rng, side)
        verdicts = _verdicts(net, _random_target(rng, net))
        for low, high in product(verdicts, verdicts):
            if not all(a <= b for a, b in zip(low, high)):
                continue
            # larger input weights only disable, larger output weights only add tokens
            permissive, strict = (low, high) if side == "pre" else (high, low)
            if verdicts[strict] is Verdict.YES:
                assert verdicts[permissive] is not Verdict.NO, (net, low, high)


@pytest.mark.slow
@pytest.mark.parametrize("side", ["pre", "post"])
def test_existential_answer_matches_enumeration(rng, side):
    for _ in range(100):
        net = random_net(rng, side)
        target = _random_target(rng, net)
        verdicts = _verdicts(net, target).values()
        answer = existential_coverable(net, target, SMALL)
        if Verdict.YES in verdicts:
            assert answer.verdict is Verdict.YES, net
            assert answer.valuation is not None, net
        if answer.verdict is Verdict.NO:
            assert Verdict.YES not in verdicts, net
