import pytest

from facial import StructuralError, validate
from facial.chains import HomologyResult, homology, pointed_chains
from facial.cotriple import (PointedSet, check_comonad, corrupted, exhaustive_pairs, flatten,
                             identity_comonad, lambda_resolution, product_comonad,
                             product_with_swapped_comult)


def two(prefix):
    return PointedSet([f"{prefix}*", f"{prefix}1"], f"{prefix}*")


@pytest.mark.parametrize("X,E", list(exhaustive_pairs(3, 3)), ids=lambda s: str(len(s)))
def test_product_comonad_laws(X, E):
    assert check_comonad(product_comonad(E), X).ok


def test_identity_comonad():
    X = two("x")
    T = identity_comonad()
    assert check_comonad(T, X).ok
    L = lambda_resolution(T, X, 3)
    assert all(L.cells(k) == X.cells for k in range(4))
    assert all(L.face(k, i, x) == x for k in range(1, 4) for i in range(k + 1) for x in X.cells)
    assert validate(L, "all").ok


def test_corrupted_comultiplication_is_caught():
    X, E = two("x"), two("e")
    rep = check_comonad(product_with_swapped_comult(E), X)
    assert not rep.ok
    v = rep.violations[0]
    assert v.lhs != v.rhs
    wrong_type = corrupted(product_comonad(E), lambda S, z: z)
    assert not check_comonad(wrong_type, X).ok


def test_resolution_sizes_and_identities():
    L = lambda_resolution(product_comonad(two("e")), two("x"), 2)
    assert [L.size(k) for k in range(3)] == [4, 8, 16]
    assert validate(L, "all").ok
    for k in range(2):
        assert all(L.face(k + 1, 0, L.contract(k + 1, z)) == z for z in L.cells(k))


def test_faces_drop_one_coordinate():
    L = lambda_resolution(product_comonad(two("e")), two("x"), 2)
    z = ((("x1", "e1"), "e*"), "e1")
    assert flatten(z, 3) == ("x1", "e1", "e*", "e1")
    # the outermost coordinate is index 0
    assert flatten(L.face(2, 0, z), 2) == ("x1", "e*", "e1")
    assert flatten(L.face(2, 2, z), 2) == ("x1", "e1", "e*")
    assert L.augment(("x1", "e1")) == "x1"


@pytest.mark.parametrize("n", [1, 2])
def test_pointed_chains_of_resolution(n):
    for X, E in exhaustive_pairs(3, 3):
        L = lambda_resolution(product_comonad(E), X, n)
        H = homology(pointed_chains(L, n)[0]).upto(n - 1)
        assert H == HomologyResult.of(len(X) - 1, *[0] * (n - 1))


def test_budget():
    with pytest.raises(StructuralError, match="budget"):
        lambda_resolution(product_comonad(PointedSet(range(3), 0)), two("x"), 6, budget=500)
    with pytest.raises(StructuralError):
        PointedSet(["a"], "b")
