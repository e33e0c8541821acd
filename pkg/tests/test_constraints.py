"""Tests for the exact-rational constraint core."""

from fractions import Fraction
from itertools import product

import pytest

from src.constraints import (
    AtomicConstraint,
    Bound,
    ConstraintSet,
    ConvexConstraint,
    LinearTerm,
    Relation,
    clocks,
    nonnegative,
    parameters,
    set_contains,
    to_fraction,
)
from src.core.errors import ContextMismatchError, MissingVariableError
from src.core.models import Verdict
from src.io import parse_constraint
from tests.generators import random_convex, random_set

XY = parameters("x", "y")
XYZ = parameters("x", "y", "z")


def c(text, context=XY) -> ConvexConstraint:
    return parse_constraint(text, context)


def same_points(a: ConvexConstraint, b: ConvexConstraint) -> bool:
    return a.includes(b) and b.includes(a)


# ============================================================================
# TERMS AND ATOMS
# ============================================================================

def test_to_fraction_reads_decimals_exactly():
    assert to_fraction("0.3") == Fraction(3, 10)
    assert to_fraction("7/10") == Fraction(7, 10)
    assert to_fraction(2) == Fraction(2)


def test_to_fraction_refuses_floats():
    with pytest.raises(TypeError):
        to_fraction(0.3)


def test_normalized_atom_has_coprime_integer_coefficients():
    atom = AtomicConstraint(LinearTerm.of({"x": Fraction(1, 2), "y": Fraction(-3, 4)}, 1), Relation.GE)
    normalized = atom.normalized()
    assert normalized.relation is Relation.LE
    assert normalized.term.as_dict() == {"x": -2, "y": 3}
    assert normalized.term.constant == -4


def test_atom_text_parses_back_to_the_same_atom():
    context = clocks("x1", "x2") + parameters("p3")
    atom = AtomicConstraint.compare(LinearTerm.var("x2"), Relation.EQ, LinearTerm.of({"x1": 1, "p3": 1}))
    parsed = parse_constraint(str(atom), context)
    assert [a.normalized() for a in parsed.atoms] == [atom.normalized()]


def test_relation_spellings():
    assert Relation.parse("≤") is Relation.LE
    assert Relation.parse("==") is Relation.EQ
    assert Relation.GT.flipped is Relation.LT


# ============================================================================
# CONVEX CONSTRAINTS
# ============================================================================

def test_satisfies_requires_every_variable():
    with pytest.raises(MissingVariableError):
        c("x <= y").satisfies({"x": 1})


def test_conjoin_requires_identical_contexts():
    with pytest.raises(ContextMismatchError):
        c("x <= 1") & parse_constraint("x <= 1", parameters("x"))


def test_undeclared_name_is_rejected():
    with pytest.raises(ContextMismatchError):
        ConvexConstraint(XY, (AtomicConstraint(LinearTerm.var("z"), Relation.LE),))


def test_eliminate_projects_exactly():
    projected = c("x <= y && y <= 3").eliminate(["y"])
    assert projected.names == ("x",)
    assert projected.satisfies({"x": 3})
    assert not projected.satisfies({"x": Fraction(7, 2)})


def test_eliminate_keeps_strictness():
    projected = c("x < y && y <= 3").eliminate(["y"])
    assert projected.satisfies({"x": Fraction(29, 10)})
    assert not projected.satisfies({"x": 3})


def test_eliminate_through_equalities():
    projected = c("x = 2*y + 1 && y >= 1", XY).eliminate(["y"])
    assert same_points(projected, parse_constraint("x >= 3", parameters("x")))


def test_unsatisfiable_projection_is_false():
    projected = c("x <= 1 && x >= 2 && y >= 0").eliminate(["x"])
    assert not projected.is_satisfiable()


def test_time_elapse_moves_clocks_together():
    context = clocks("x", "y")
    zone = parse_constraint("x = 0 && y = 0", context).time_elapse(["x", "y"])
    assert zone.satisfies({"x": 5, "y": 5})
    assert not zone.satisfies({"x": 5, "y": 4})
    assert not zone.satisfies({"x": -1, "y": -1})


def test_time_elapse_keeps_parameters_fixed():
    context = clocks("x") + parameters("p")
    zone = parse_constraint("x = 0 && p >= 1", context).time_elapse(["x"])
    assert zone.satisfies({"x": 7, "p": 1})
    assert not zone.satisfies({"x": 7, "p": 0})


def test_reset_pins_clocks_to_zero():
    context = clocks("x", "y")
    zone = parse_constraint("x = y && y >= 2", context).reset(["x"])
    assert zone.satisfies({"x": 0, "y": 3})
    assert not zone.satisfies({"x": 1, "y": 3})
    assert not zone.satisfies({"x": 0, "y": 1})


def test_substitute_drops_fixed_variables():
    fixed = c("x + y <= 3").substitute({"y": 1})
    assert fixed.names == ("x",)
    assert fixed.satisfies({"x": 2})
    assert not fixed.satisfies({"x": 3})


def test_bounds_of_one_variable():
    assert c("x >= 1 && x < 4 && y >= x").bounds("x") == Bound(Fraction(1), False, Fraction(4), True)
    assert c("x <= 1 && x >= 2").bounds("x") is None


def test_term_bounds():
    bound = c("0 <= x <= 3 && 0 <= y <= 2").term_bounds(LinearTerm.of({"x": 1, "y": 1}))
    assert bound.lower == 0
    assert bound.upper == 5


def test_sample_point_satisfies():
    constraint = c("x < y && y < x + 1/2 && x > 3")
    point = constraint.sample_point()
    assert point is not None
    assert constraint.satisfies(point)
    assert c("x < 0 && x > 0").sample_point() is None


def test_integer_point_found():
    result = c("2*x >= 1 && 2*x <= 3 && y = x").has_integer_point(10)
    assert result.answer is Verdict.YES
    assert result.witness == {"x": 1, "y": 1}


def test_integer_point_absent_in_bounded_region():
    assert c("2*x = 1 && y >= 0").has_integer_point(10).answer is Verdict.NO


def test_integer_point_unknown_when_box_cuts_unbounded_direction():
    assert c("2*x = 2*y + 1").has_integer_point(5).answer is Verdict.UNKNOWN


def test_includes():
    assert c("x <= 5").includes(c("x <= 3 && y >= 0"))
    assert not c("x <= 3").includes(c("x <= 5"))
    assert c("x <= 0").includes(c("x < 0 && x > 0"))


def test_remove_redundant_keeps_the_tightest_atom():
    reduced = c("x <= 3 && x <= 5 && y >= 0").remove_redundant()
    assert len(reduced.atoms) == 2
    assert same_points(reduced, c("x <= 3 && y >= 0"))


def test_true_and_false_render():
    assert str(ConvexConstraint.true(XY)) == "true"
    assert not ConvexConstraint.false(XY).is_satisfiable()


# ============================================================================
# CONSTRAINT SETS
# ============================================================================

def test_set_prunes_empty_disjuncts():
    union = ConstraintSet(XY, (c("x <= 1 && x >= 2"), c("x <= 1")))
    assert len(union) == 1
    assert str(ConstraintSet.empty(XY)) == "false"


def test_set_contains_covers_with_several_disjuncts():
    covering = ConstraintSet(XY, (c("x <= 1"), c("x >= 1")))
    assert covering.contains(ConstraintSet.universe(XY))
    assert not ConstraintSet.of(c("x <= 1")).contains(ConstraintSet.universe(XY))


def test_minus_and_union_restore_the_set():
    whole = ConstraintSet.of(c("0 <= x <= 4 && 0 <= y <= 4"))
    hole = c("1 <= x <= 2")
    rest = whole.minus(hole)
    assert not rest.satisfies({"x": Fraction(3, 2), "y": 1})
    assert rest.satisfies({"x": 3, "y": 1})
    assert rest.add(hole & whole.disjuncts[0]).equivalent(whole)


def test_simplify_drops_covered_disjuncts():
    union = ConstraintSet(XY, (c("x <= 1"), c("x <= 3"), c("x <= 3 && x <= 4")))
    simplified = union.simplify()
    assert len(simplified) == 1
    assert simplified.equivalent(union)


def test_eliminate_on_sets():
    union = ConstraintSet(XY, (c("x = y && y <= 1"), c("x = y + 5")))
    projected = union.eliminate(["y"])
    assert projected.satisfies({"x": 1})
    assert projected.satisfies({"x": 100})


def test_nonnegative():
    assert nonnegative(XY).satisfies({"x": 0, "y": 0})
    assert not nonnegative(XY, ["y"]).satisfies({"x": 0, "y": -1})


# ============================================================================
# PROPERTY SUITES
# ============================================================================

GRID = [Fraction(n, 2) for n in range(-6, 7)]


@pytest.mark.slow
def test_elimination_matches_pointwise_satisfiability(rng):
    for _ in range(1000):
        constraint = random_convex(rng, XYZ, atoms=rng.randint(1, 4))
        projected = constraint.eliminate(["y"])
        for x, z in product(GRID[::3], GRID[::3]):
            expected = constraint.substitute({"x": x, "z": z}).is_satisfiable()
            assert projected.satisfies({"x": x, "z": z}) == expected, (str(constraint), x, z)


@pytest.mark.slow
def test_time_elapse_is_idempotent(rng):
    context = clocks("x", "y") + parameters("p")
    for _ in range(1000):
        zone = random_convex(rng, context, atoms=rng.randint(1, 3))
        once = zone.time_elapse(["x", "y"])
        twice = once.time_elapse(["x", "y"])
        assert same_points(once, twice), str(zone)
        assert once.includes(zone), str(zone)


@pytest.mark.slow
def test_set_contains_is_a_partial_order(rng):
    for _ in range(1000):
        a = random_set(rng, XY)
        b = random_set(rng, XY)
        union = a.union(b)
        assert set_contains(a, a)
        assert set_contains(union, a) and set_contains(union, b)
        if set_contains(a, b) and set_contains(b, a):
            assert a.equivalent(b)
        intersection = a.intersect(b)
        assert set_contains(a, intersection) and set_contains(union, intersection)
        if set_contains(b, a):
            assert union.equivalent(b)


@pytest.mark.slow
def test_sample_points_lie_in_their_constraint(rng):
    for _ in range(1000):
        constraint = random_convex(rng, XYZ, atoms=rng.randint(1, 5))
        point = constraint.sample_point()
        assert (point is None) == (not constraint.is_satisfiable())
        if point is not None:
            assert constraint.satisfies(point)
