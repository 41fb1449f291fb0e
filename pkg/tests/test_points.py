import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facial.bar import FiniteMonoid, bar_facial
from facial.points import (BASEPOINT, RealPoint, augment, canonicalize, homotopy_H, include_up,
                           interior_representative, move, point_suite, pointed_augment,
                           pointed_collapse, points_on_grid, rewrite_class, section_sigma,
                           stable_forms)
from facial.random_instances import random_contracted


@pytest.fixture(scope="module")
def contracted():
    return [random_contracted(random.Random(s), [random.Random(s).randint(1, 4) for _ in range(4)])
            for s in range(8)]


def test_interior_point_is_fixed(contracted):
    F = contracted[0]
    for x in F.cells(1):
        p = RealPoint(1, x, (Q(1, 2), Q(1, 2)))
        assert canonicalize(F, p) == p


def test_zero_coordinate_moves_through_contraction(contracted):
    F = contracted[1]
    for x in F.cells(2):
        p = RealPoint(2, x, (Q(1, 3), 0, Q(2, 3)))
        q = RealPoint(2, F.contract(2, F.face(2, 1, x)), (0, Q(1, 3), Q(2, 3)))
        assert move(F, p, 1) == q
        assert canonicalize(F, p) == canonicalize(F, q)


def test_points_are_validated():
    with pytest.raises(ValueError):
        RealPoint(1, "x", (Q(1, 2), Q(1, 3)))
    with pytest.raises(ValueError):
        RealPoint(1, "x", (Q(3, 2), Q(-1, 2)))
    with pytest.raises(TypeError):
        RealPoint(0, "x", (1.0,))


def test_canonical_form_on_every_grid_point(contracted):
    for F in contracted:
        for n in range(4):
            for p in points_on_grid(F, n, (1, 2, 3)):
                q = canonicalize(F, p)
                assert q == interior_representative(F, p)
                assert canonicalize(F, q) == q
                assert stable_forms(F, p) == {q}


@pytest.mark.parametrize("seed", range(6))
def test_rewrite_classes_have_one_normal_form(seed):
    rng = random.Random(100 + seed)
    F = random_contracted(rng, [rng.randint(1, 3) for _ in range(3)])
    n = 2
    for p in points_on_grid(F, n, (1, 2)):
        if sum(1 for t in p.coords if t == 0) < 2:
            continue
        forms = {canonicalize(F, r) for r in rewrite_class(F, p)}
        assert forms == {canonicalize(F, p)}
        assert {augment(F, r) for r in rewrite_class(F, p)} == {augment(F, p)}


def test_include_up(contracted):
    F = contracted[2]
    for x in F.cells(0):
        assert include_up(F, RealPoint(0, x, (1,))) == canonicalize(F, RealPoint(1, F.contract(1, x), (0, 1)))
    for p in points_on_grid(F, 1, (1, 2)):
        twice = include_up(F, include_up(F, p))
        direct = RealPoint(3, F.contract(3, F.contract(2, p.cell)), (0, 0) + p.coords)
        assert twice == canonicalize(F, direct)
    base = RealPoint(0, F.basepoint(0), (1,))
    assert include_up(F, base).cell == F.basepoint(1)


def test_section_and_augmentation(contracted):
    for F in contracted:
        for x in F.cells(-1):
            assert section_sigma(F, x, 0) == RealPoint(0, F.contract(0, x), (1,))
            for n in range(4):
                assert augment(F, section_sigma(F, x, n)) == x
        assert section_sigma(F, F.basepoint(-1), 2).cell == F.basepoint(2)


def test_homotopy_endpoints(contracted):
    for F in contracted[:4]:
        for n in range(1, 4):
            for p in points_on_grid(F, n - 1, (1, 2)):
                assert homotopy_H(F, p, 0) == include_up(F, p)
                assert homotopy_H(F, p, 1) == section_sigma(F, augment(F, p), n)
        base = RealPoint(1, F.basepoint(1), (Q(1, 4), Q(3, 4)))
        assert homotopy_H(F, base, Q(1, 2)).cell == F.basepoint(2)
    with pytest.raises(ValueError):
        homotopy_H(contracted[0], RealPoint(0, contracted[0].basepoint(0), (1,)), 2)


def test_pointed_collapse(contracted):
    F = contracted[3]
    assert pointed_collapse(F, RealPoint(2, F.basepoint(2), (Q(1, 3),) * 3)) is BASEPOINT
    assert pointed_augment(F, BASEPOINT) == F.basepoint(-1)
    for p in points_on_grid(F, 2, (1, 2, 3)):
        assert pointed_augment(F, pointed_collapse(F, p)) == augment(F, p)
        q = pointed_collapse(F, p)
        if q is not BASEPOINT:
            assert q == canonicalize(F, p)


def test_bar_resolution_points():
    P = bar_facial(FiniteMonoid.cyclic(2), "P", 3)
    assert point_suite(P, 3).ok


@given(st.integers(0, 10_000), st.integers(0, 3))
@settings(max_examples=40, deadline=None)
def test_point_suite_random(seed, n):
    rng = random.Random(seed)
    F = random_contracted(rng, [rng.randint(1, 3) for _ in range(n + 1)])
    rep = point_suite(F, n, denominators=(1, 2))
    assert rep.ok, rep.lines()
