import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facial.moore import (SUSP_BASE, MooreLoop, SuspPoint, bar_face, bar_identities_on_loops,
                          concat, ev, gamma, inverse, loop_ev, product, random_loop, random_times,
                          reparam_unit, retraction_witness)


@pytest.fixture
def square():
    return MooreLoop.through([(1, 0), (1, 1), (0, 1)])


def test_square_basics(square):
    assert square.length == 4
    assert square(1) == (1, 0)
    assert square(Q(5, 2)) == (Q(1, 2), 1)
    assert reparam_unit(square)(Q(1, 8)) == (Q(1, 2), 0)


def test_unit_laws(square):
    unit = MooreLoop.unit()
    assert concat(square, unit) == square == concat(unit, square)
    assert unit.is_unit and unit.is_constant
    assert reparam_unit(unit) == unit


def test_canonical_form_merges_collinear_segments():
    straight = MooreLoop(1, ((0, (0,)), (1, (1,)), (2, (2,)), (4, (0,))))
    assert straight.breakpoints == ((0, (0,)), (2, (2,)), (4, (0,)))
    # same route at a different speed is a different loop
    slow = MooreLoop(1, ((0, (0,)), (1, (1,)), (3, (2,)), (5, (0,))))
    assert len(slow.breakpoints) == 4


def test_associativity_and_inverse(square):
    rng = random.Random(4)
    a, b = random_loop(rng), random_loop(rng)
    assert concat(concat(a, b), square) == concat(a, concat(b, square))
    w = inverse(square)
    assert w(1) == (0, 1) and inverse(w) == square
    assert product([a, b, square]) == concat(concat(a, b), square)


def test_malformed_loops():
    with pytest.raises(ValueError):
        MooreLoop(2, ((0, (0, 0)), (1, (1, 0))))
    with pytest.raises(ValueError):
        MooreLoop(2, ((0, (0, 0)), (0, (0, 0))))
    with pytest.raises(ValueError):
        MooreLoop(2, ((1, (0, 0)),))
    with pytest.raises(ValueError):
        MooreLoop.unit()(1)


def test_suspension_points(square):
    assert ev(SUSP_BASE) == (0, 0)
    assert ev(SuspPoint.make(square, Q(1, 4))) == (1, 0)
    assert SuspPoint.make(square, 0) is SUSP_BASE and SuspPoint.make(square, 1) is SUSP_BASE
    still = MooreLoop(2, ((0, (0, 0)), (3, (0, 0))))
    assert SuspPoint.make(still, Q(1, 2)) is SUSP_BASE
    with pytest.raises(ValueError):
        SuspPoint.make(square, 2)


def test_gamma(square):
    g = gamma(square)
    assert g.length == 4
    assert g(2) == SuspPoint.make(square, Q(1, 2))
    assert g.unit_form() == reparam_unit(square)
    assert g(4) is SUSP_BASE and g(0) is SUSP_BASE
    assert gamma(MooreLoop.unit()).length == 0
    assert gamma(MooreLoop.unit())(0) is SUSP_BASE
    assert loop_ev(g, [0, 1, 2, 3, 4]) == [square(u) for u in range(5)]


def test_bar_faces_on_loops(square):
    rng = random.Random(9)
    a, b = random_loop(rng), random_loop(rng)
    assert bar_face((a, b), 1) == (concat(a, b),)
    assert bar_face(bar_face((a, b), 1), 0) == bar_face(bar_face((a, b), 0), 0) == ()
    assert bar_identities_on_loops((a, b, square)).ok
    assert bar_identities_on_loops((a, MooreLoop.unit(), b)).ok
    with pytest.raises(ValueError):
        bar_face((a,), 2)


@given(st.integers(0, 100_000))
@settings(max_examples=60, deadline=None)
def test_retraction_on_random_loops(seed):
    rng = random.Random(seed)
    w = random_loop(rng, 12)
    assert retraction_witness(w, w.times() + random_times(rng, w.length, 50)) is None


@given(st.integers(0, 100_000))
@settings(max_examples=40, deadline=None)
def test_moore_monoid_laws_random(seed):
    rng = random.Random(seed)
    a, b, c = (random_loop(rng, 8, dim=3) for _ in range(3))
    assert concat(concat(a, b), c) == concat(a, concat(b, c))
    assert concat(a, b).length == a.length + b.length
    assert bar_identities_on_loops((a, b, c)).ok
