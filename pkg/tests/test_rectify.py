import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facial import FacialMap
from facial.bar import FiniteMonoid, bar_facial
from facial.bifacial import random_twisted_product, twisted_product
from facial.core import levelwise_power, truncate
from facial.cotriple import PointedSet, cotriple_bifacial, product_comonad
from facial.points import RealPoint, canonicalize
from facial.random_instances import random_contracted, random_facial_set
from facial.rectify import (IPoint, JI_face, JPoint, apply_word, appendix_suite, canonicalize_JI,
                            eta, eval_homotopy, eval_morphism, irreducible_forms, j_points,
                            ji_complexes, libman_check, petitlibman_check, phi, pi, pi_bar, psi,
                            psi_bar, zeta)


@pytest.fixture(scope="module")
def Y():
    return random_facial_set(random.Random(7), [2, 3, 3, 2])


def test_empty_word_is_fixed(Y):
    p = JPoint(1, (), Y.cells(1)[0], (1,))
    assert canonicalize_JI(Y, p) == p


def test_trailing_zero_drops_into_cell(Y):
    y = Y.cells(2)[1]
    p = JPoint(1, (2,), y, (1, 0))
    assert canonicalize_JI(Y, p) == JPoint(1, (), Y.face(2, 2, y), (1,))


def test_inner_zero_reorders_adjacent_operators(Y):
    y = Y.cells(3)[0]
    t = (Q(1, 3), 0, Q(2, 3))
    assert canonicalize_JI(Y, JPoint(1, (1, 3), y, t)) == JPoint(1, (2, 1), y, t)
    # the zero must sit between the two operators; a zero in front changes nothing
    front = JPoint(1, (1, 3), y, (0, Q(1, 3), Q(2, 3)))
    assert canonicalize_JI(Y, front) == front


def test_I_inner_zero_uses_next_slot(Y):
    y = Y.cells(3)[0]
    p = IPoint(1, (1, 3), y, (Q(1, 4), Q(1, 4), 0, Q(1, 2)))
    assert canonicalize_JI(Y, p).word == (2, 1)
    q = IPoint(1, (1, 3), y, (Q(1, 4), 0, Q(1, 4), Q(1, 2)))
    assert canonicalize_JI(Y, q) == q


def test_malformed_points():
    with pytest.raises(ValueError):
        JPoint(0, (1,), "y", (1,))
    with pytest.raises(ValueError):
        IPoint(0, (), "y", (1,))
    with pytest.raises(ValueError):
        JPoint(0, (5,), "y", (Q(1, 2), Q(1, 2)))


def test_face_formulas(Y):
    y = Y.cells(1)[1]
    assert JI_face(Y, JPoint(1, (), y, (1,)), 0) == JPoint(0, (0,), y, (0, 1))
    t = (Q(1, 3), Q(2, 3))
    assert JI_face(Y, IPoint(1, (), y, t), 1) == IPoint(0, (1,), y, (Q(1, 3), 0, Q(2, 3)))
    with pytest.raises(ValueError):
        JI_face(Y, JPoint(1, (), y, (1,)), 2)


def test_morphism_formulas(Y):
    for k in range(3):
        for y in Y.cells(k):
            assert pi(Y, IPoint(k, (), y, (1, 0))) == y
            assert pi(Y, eta(Y, k, y)) == y
            assert pi_bar(Y, phi(Y, k, y)) == y
    y = Y.cells(2)[0]
    t = (Q(1, 2), Q(1, 2))
    assert zeta(Y, JPoint(1, (1,), y, t)) == IPoint(1, (1,), y, (0,) + t)
    assert eval_morphism(Y, "pi", IPoint(1, (1,), y, (0,) + t)) == (1, Y.face(2, 1, y))
    with pytest.raises(ValueError):
        eval_morphism(Y, "pi", JPoint(1, (1,), y, t))
    with pytest.raises(ValueError):
        eval_morphism(Y, "zeta", (1, y))


def test_homotopy_endpoints_and_basepoint(Y):
    for p in j_points(Y, 2, 1, (1, 2)):
        assert eval_homotopy(Y, p, 0) == p
        assert eval_homotopy(Y, p, 1) == phi(Y, 1, pi_bar(Y, p))
        I = zeta(Y, p)
        assert eval_homotopy(Y, I, 0) == I
        assert eval_homotopy(Y, I, 1) == eta(Y, 1, pi(Y, I))
    base = JPoint(0, (1,), Y.basepoint(1), (Q(1, 2), Q(1, 2)))
    for u in (0, Q(1, 5), 1):
        h = eval_homotopy(Y, base, u)
        assert h.cell == Y.basepoint(h.k + h.m)
    with pytest.raises(ValueError):
        eval_homotopy(Y, base, Q(3, 2))


def test_rewrite_orders_agree_exhaustively(Y):
    from facial.rectify import raw_points
    for kind in ("J", "I"):
        for k in range(3):
            for raw in raw_points(Y, 3, k, kind, (1, 2)):
                assert irreducible_forms(Y, raw) == {canonicalize_JI(Y, raw)}


def test_apply_word_order(Y):
    y = Y.cells(3)[1]
    assert apply_word(Y, 1, (0, 2), y) == Y.face(2, 0, Y.face(3, 2, y))


def test_appendix_suite_and_phi_violation():
    Y = bar_facial(FiniteMonoid.cyclic(2), "G", 3)
    rep = appendix_suite(Y, 2)
    assert rep.ok, rep.lines()
    k, y, i = rep.details["phi_violation"]
    assert JI_face(Y, phi(Y, k, y), i) != phi(Y, k - 1, Y.face(k, i, y))


@given(st.integers(0, 10_000), st.integers(0, 3))
@settings(max_examples=25, deadline=None)
def test_appendix_suite_random(seed, n):
    rng = random.Random(seed)
    Y = random_facial_set(rng, [rng.randint(1, 4) for _ in range(n + 1)])
    rep = appendix_suite(Y, n, denominators=(1, 2))
    assert rep.ok, rep.lines()


def test_ji_chain_maps_are_quasi_isomorphisms():
    from facial.chains import is_quasi_isomorphism
    for seed in range(3):
        Y = random_facial_set(random.Random(seed), [2, 3, 2])
        jc = ji_complexes(Y, 2)
        for name in ("eta", "zeta", "pi", "pi_bar"):
            assert is_quasi_isomorphism(getattr(jc, name)), name


def point_grid(P=2):
    Y = random_facial_set(random.Random(0), [1, 1, 1])
    E = random_facial_set(random.Random(1), [2, 2, 2], prefix="e")
    return twisted_product(Y, E, lambda k, y: E.cells(k)[-1] if y != Y.basepoint(k) else E.basepoint(k), P)


def test_psi_bar_on_phi_is_psi():
    Z = random_twisted_product(random.Random(3), 2, 2)
    Y = Z.column(-1, 2)
    for k in range(3):
        for z in Y.cells(k):
            assert psi_bar(Z, 2, phi(Y, k, z)) == psi(Z, 2, k, z)


def test_libman_on_point_rows():
    rep = libman_check(point_grid(), 2)
    assert rep.ok, rep.lines()
    # the double realization is truncated in both directions, so only low degrees agree
    assert rep.details["homology_base"].upto(1) == rep.details["homology_double"].upto(1)


def test_libman_on_cotriple_instance():
    Y = bar_facial(FiniteMonoid.cyclic(2), "G", 2)
    Z = cotriple_bifacial(product_comonad(PointedSet(["e*", "e1"], "e*")), Y, 2)
    rep = libman_check(Z, 2)
    assert rep.ok, rep.lines()


@pytest.mark.parametrize("seed", range(3))
def test_libman_on_random_twisted_products(seed):
    Z = random_twisted_product(random.Random(seed), 2, 2)
    rep = libman_check(Z, 2)
    assert rep.ok, rep.lines()


def test_libman_rejects_broken_contraction():
    Z = random_twisted_product(random.Random(5), 2, 2)
    tables = {key: dict(t) for key, t in Z.contraction_tables().items()}
    t = tables[(1, 0)]
    z = next(c for c in t if c != Z.basepoint(1, -1))
    others = [c for c in Z.cells(1, 0) if Z.row_face(1, 0, 0, c) != z]
    t[z] = others[0]
    rep = libman_check(Z.with_contraction(tables), 2)
    assert not rep.ok
    assert rep.witness is not None


def petit_rows(seed):
    rng = random.Random(seed)
    A = truncate(random_contracted(rng, [2, 2]), 1)
    C = truncate(random_contracted(rng, [2, 3]), 1)
    B = levelwise_power(A, 2)
    alpha = FacialMap(B, A, [{c: c[0] for c in B.cells(k)} for k in range(2)],
                      {c: c[0] for c in B.cells(-1)})
    beta = FacialMap(B, C, [{c: C.basepoint(k) for c in B.cells(k)} for k in range(2)],
                     {c: C.basepoint(-1) for c in B.cells(-1)})
    return A, B, C, alpha, beta


@pytest.mark.parametrize("seed", range(4))
def test_petitlibman(seed):
    A, B, C, alpha, beta = petit_rows(seed)
    rep = petitlibman_check(A, B, C, alpha, beta)
    assert rep.ok, rep.lines()
    for b in B.cells(-1):
        cell = A.contract(1, alpha(0, B.contract(0, b)))
        ends = {canonicalize(A, RealPoint(1, cell, t)) for t in ((0, 1), (1, 0))}
        if b == B.basepoint(-1):
            assert {e.cell for e in ends} == {A.basepoint(1)}
    assert "level -1 reading verified" in rep.details["readings"]["alpha"]


def test_petitlibman_rejects_non_facial_map():
    A, B, C, alpha, beta = petit_rows(0)
    off = [dict(alpha.maps[0]), dict(alpha.maps[1])]
    c = next(x for x in B.cells(0))
    off[0][c] = next(a for a in A.cells(0) if a != off[0][c])
    bad = FacialMap(B, A, off, dict(alpha.minus_one))
    assert not petitlibman_check(A, B, C, bad, beta).ok
