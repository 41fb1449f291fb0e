import numpy as np
import pytest

from facial import StructuralError
from facial.bar import (FiniteMonoid, SimplicialComplex, bar_facial, hopf_chain_map, join_power,
                        milnor_cell_counts, milnor_stage, simplicial_join)
from facial.chains import HomologyResult, fat_chains, homology, induced_map, is_quasi_isomorphism
from facial.smith import determinant
from oracles import (bipartite_fundamental_cycles, hopf_image, join_reduced_betti,
                     normalized_bar_homology, rp_homology, rp_homology_closed_form)


@pytest.mark.parametrize("n", range(5))
def test_milnor_base_of_z2_is_projective_space(n):
    E, B = milnor_stage(FiniteMonoid.cyclic(2), n)
    assert list(homology(B.chains()).groups) == rp_homology(n) == rp_homology_closed_form(n)
    if n:
        assert homology(E.chains()).upto(n - 1) == HomologyResult.of(1, *[0] * (n - 1))


@pytest.mark.parametrize("name,n", [("z2", 3), ("z3", 3), ("s3", 2)])
def test_milnor_base_stable_range(name, n):
    M = FiniteMonoid.named(name)
    E, B = milnor_stage(M, n)
    assert [len(b) * len(M) for b in B.cells] == E.counts()
    assert sum(E.counts()) == milnor_cell_counts(len(M), n)[-1]
    H = homology(B.chains()).upto(n - 1)
    assert list(H.groups) == normalized_bar_homology(M.elements, M.mul, M.identity, n - 1)
    assert homology(E.chains()).upto(n - 1).reduced().is_zero()


def test_trivial_group_stages_are_contractible():
    for n in range(4):
        E, B = milnor_stage(FiniteMonoid.cyclic(1), n)
        assert homology(E.chains()) == HomologyResult.of(1, *[0] * n)
        assert homology(B.chains()) == HomologyResult.of(1, *[0] * n)


def test_milnor_rejects_monoid_and_budget():
    with pytest.raises(StructuralError, match="not a group"):
        milnor_stage(FiniteMonoid.named("and"), 1)
    with pytest.raises(StructuralError, match="budget"):
        milnor_stage(FiniteMonoid.cyclic(3), 6, budget=1000)


@pytest.mark.parametrize("m,copies", [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (4, 2)])
def test_join_powers(m, copies):
    H = homology(join_power(range(m), copies).chains()).reduced()
    assert [H.betti(k) for k in range(copies)] == join_reduced_betti(m, copies)
    assert all(not H.torsion(k) for k in range(copies))


def test_two_point_joins_are_spheres():
    assert homology(join_power("ab", 2).chains()) == HomologyResult.of(1, 1)
    assert homology(join_power("ab", 3).chains()) == HomologyResult.of(1, 0, 1)


def test_join_with_point_is_cone():
    X = SimplicialComplex([(1, 2), (2, 3), (3, 1)])
    cone = simplicial_join(X, SimplicialComplex.discrete(["apex"]))
    assert homology(cone.chains()).reduced().is_zero()


@pytest.mark.parametrize("name", ["z2", "z3", "s3"])
def test_hopf_map_on_fundamental_cycles(name):
    M = FiniteMonoid.named(name)
    f = hopf_chain_map(M)
    src, tgt = f.source, f.target
    for cycle in bipartite_fundamental_cycles(list(M.elements)):
        z = np.zeros(src.rank(1), dtype=np.int64)
        for (a, b), c in cycle.items():
            z[src.index(1, ((0, a), (1, b)))] += c
        assert not (src.d(1) @ z).any()
        expected = np.zeros(tgt.rank(1), dtype=np.int64)
        for g, c in hopf_image(cycle, M.inverse, M.mul, M.identity).items():
            expected[tgt.index(1, ("S", g))] = c
        assert (f[1] @ z == expected).all()
    A, tors = induced_map(f, 1)
    assert A.shape[0] == len(M) - 1
    assert not tors
    assert not is_quasi_isomorphism(f)


def test_hopf_on_z2_square():
    M = FiniteMonoid.cyclic(2)
    f = hopf_chain_map(M)
    A, _ = induced_map(f, 1)
    # the square wraps the suspension circle twice
    assert abs(determinant(A.tolist())) == 2


def test_groups_and_monoids():
    assert FiniteMonoid.named("s3").is_group
    assert not FiniteMonoid.named("and").is_group
    with pytest.raises(StructuralError):
        FiniteMonoid(["e", "a"], "e", {("e", "e"): "e", ("e", "a"): "a", ("a", "e"): "a",
                                      ("a", "a"): "b"}).validate()


def test_hopf_map_is_a_chain_map():
    for name in ["trivial", "z2", "z3", "s3"]:
        f = hopf_chain_map(FiniteMonoid.named(name))
        f.check()
    zero = hopf_chain_map(FiniteMonoid.named("trivial"))
    assert zero.target.rank(1) == 0 and not zero[1].any()
    with pytest.raises(StructuralError):
        hopf_chain_map(FiniteMonoid.named("and"))


def test_bar_faces_and_contraction():
    M = FiniteMonoid.cyclic(2)
    G = bar_facial(M, "G", 2)
    assert G.face(2, 1, ("g1", "g1")) == ("e",)
    assert G.face(2, 0, ("e", "g1")) == ("g1",) and G.face(2, 2, ("e", "g1")) == ("e",)
    for name in ["z3", "and"]:
        P = bar_facial(FiniteMonoid.named(name), "P", 3)
        for k in range(3):
            assert all(P.face(k + 1, 0, P.contract(k + 1, x)) == x for x in P.cells(k))


def test_trivial_monoid_stage_one_is_circle():
    G = bar_facial(FiniteMonoid.named("trivial"), "G", 3)
    assert all(G.size(k) == 1 for k in range(4))
    assert homology(fat_chains(G, 1)) == HomologyResult.of(1, 1)
