"""Comonads on finite pointed sets and their facial resolutions.

Following the usual naming in this setting, ``counit`` is written ``eta`` and the
comultiplication ``epsilon``.  A finite pointed set is a pair ``(cells, basepoint)``.
Elements of ``T^{k+1} X`` for the product comonad are nested pairs whose
outermost ``E``-coordinate is face index 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .bifacial import BifacialSet
from .core import FacialSet, StructuralError, ValidationReport


@dataclass(frozen=True)
class PointedSet:
    cells: tuple
    basepoint: object

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        if self.basepoint not in self.cells:
            raise StructuralError("basepoint is not an element", repr(self.basepoint))

    def __len__(self):
        return len(self.cells)


@dataclass
class Comonad:
    """An endofunctor with counit and comultiplication, given by explicit formulas.

    ``apply(S)`` returns ``T(S)``; ``fmap(f, S)`` is ``T(f)`` on elements of
    ``T(S)`` (``f`` acts on elements of ``S``); ``counit(S, x)`` and
    ``comult(S, x)`` are the structure maps at ``S``.  ``contract``, when
    present, is the extra map ``T^k X -> T^{k+1} X`` used to contract the
    resolution.
    """

    name: str
    apply: Callable
    fmap: Callable
    counit: Callable
    comult: Callable
    contract: Callable | None = None

    def power(self, X: PointedSet, k: int) -> PointedSet:
        S = X
        for _ in range(k):
            S = self.apply(S)
        return S

    def fmap_power(self, i: int, f: Callable) -> Callable:
        """``T^i(f)``."""
        g = f
        for _ in range(i):
            g = (lambda h: lambda x: self.fmap(h, x))(g)
        return g


def product_comonad(E: PointedSet, name=None) -> Comonad:
    """``T(X) = X x E`` with ``eta(x, e) = x`` and ``epsilon(x, e) = ((x, e), e)``."""

    def apply(S):
        return PointedSet([(x, e) for x in S.cells for e in E.cells], (S.basepoint, E.basepoint))

    return Comonad(
        name or f"product with {len(E)} points",
        apply,
        fmap=lambda f, z: (f(z[0]), z[1]),
        counit=lambda S, z: z[0],
        comult=lambda S, z: (z, z[1]),
        contract=lambda S, z: (z, E.basepoint),
    )


def identity_comonad() -> Comonad:
    return Comonad("identity", lambda S: S, lambda f, z: f(z), lambda S, z: z, lambda S, z: z,
                   contract=lambda S, z: z)


def corrupted(T: Comonad, bad_comult: Callable) -> Comonad:
    """``T`` with its comultiplication replaced (negative controls)."""
    return Comonad(f"{T.name} (corrupted)", T.apply, T.fmap, T.counit, bad_comult, T.contract)


def product_with_swapped_comult(E: PointedSet) -> Comonad:
    """Product comonad whose comultiplication writes the basepoint in the inner slot."""
    T = product_comonad(E)
    return corrupted(T, lambda S, z: ((z[0], E.basepoint), z[1]))


def check_comonad(T: Comonad, X: PointedSet, budget=100_000) -> ValidationReport:
    """Counit laws and coassociativity, exhaustively on ``T(X)``."""
    rep = ValidationReport("comonad")
    TX = T.apply(X)
    TTX = T.apply(TX)
    if len(TX) * len(TTX) > budget or len(T.apply(TTX)) > budget:
        raise StructuralError(f"T^3 X exceeds the budget of {budget} elements")
    members = set(TTX.cells)
    for z in TX.cells:
        w = T.comult(X, z)
        rep.checked += 1
        if w not in members:
            rep.add("comultiplication lands in T^2 X", 1, (), z, w, "element of T^2 X")
            continue
        for label, lhs in (("eta_T o epsilon = id", T.counit(TX, w)),
                           ("T(eta) o epsilon = id", T.fmap(lambda x: T.counit(X, x), w))):
            rep.checked += 1
            if lhs != z:
                rep.add(label, 1, (), z, lhs, z)
        rep.checked += 1
        lhs = T.comult(TX, w)
        rhs = T.fmap(lambda x: T.comult(X, x), w)
        if lhs != rhs:
            rep.add("epsilon_T o epsilon = T(epsilon) o epsilon", 1, (), z, lhs, rhs)
    for label, lhs, rhs in (("counit is pointed", T.counit(X, TX.basepoint), X.basepoint),
                            ("comultiplication is pointed", T.comult(X, TX.basepoint), TTX.basepoint)):
        rep.checked += 1
        if lhs != rhs:
            rep.add(label, 0, (), TX.basepoint, lhs, rhs)
    return rep


def lambda_resolution(T: Comonad, X: PointedSet, n: int, budget=200_000) -> FacialSet:
    """Levels ``T^{k+1} X`` for ``k <= n`` with ``d_i = T^i(eta)`` at ``T^{k-i} X``.

    Augmented over ``X`` by ``eta``; contracted by ``T.contract`` when given.
    """
    if n < 0:
        raise StructuralError("resolution depth must be nonnegative")
    powers = [X]
    for k in range(n + 1):
        powers.append(T.apply(powers[-1]))
        if len(powers[-1]) > budget:
            raise StructuralError(f"level {k} has {len(powers[-1])} elements, budget {budget}")

    def face(k, i, z):
        # d_i on T^{k+1}X: apply eta at T^{k-i}X underneath i layers
        S = powers[k - i]
        return T.fmap_power(i, lambda x: T.counit(S, x))(z)

    contract = None
    if T.contract is not None:
        def contract(k, z):
            return T.contract(powers[k], z)

    return FacialSet.from_functions(
        [list(powers[k + 1].cells) for k in range(n + 1)],
        [powers[k + 1].basepoint for k in range(n + 1)],
        face, aug_cells=list(X.cells), aug_basepoint=X.basepoint,
        augment=lambda z: T.counit(X, z), contract=contract)


def flatten(z, depth):
    """``((x, e0), e1)`` nested ``depth`` times -> ``(x, e_outer, ..., e_inner)``."""
    es = []
    for _ in range(depth):
        z, e = z
        es.append(e)
    return (z,) + tuple(es)


def cotriple_bifacial(T: Comonad, Y: FacialSet, P: int, K: int | None = None) -> BifacialSet:
    """``Z_k^p = T^{p+1}(Y_k)``: row ``k`` is the resolution of ``Y_k``.

    Column faces are ``T^{p+1}`` of the faces of ``Y``.  Row contractions
    come from ``T.contract``.
    """
    K = Y.top if K is None else K
    if T.contract is None:
        raise StructuralError(f"comonad {T.name} has no contraction")
    sets = {}
    for k in range(K + 1):
        S = PointedSet(Y.cells(k), Y.basepoint(k))
        for p in range(-1, P + 1):
            sets[(k, p)] = S if p == -1 else T.apply(sets[(k, p - 1)])

    def row_face(k, p, j, z):
        S = sets[(k, p - j - 1)]
        return T.fmap_power(j, lambda x: T.counit(S, x))(z)

    def col_face(k, p, i, z):
        return T.fmap_power(p + 1, lambda y: Y.face(k, i, y))(z)

    return BifacialSet.from_functions(
        K, P, lambda k, p: sets[(k, p)].cells, lambda k, p: sets[(k, p)].basepoint,
        row_face, col_face, lambda k, p, z: T.contract(sets[(k, p - 1)], z))


def pointed_sets(max_size: int, prefix: str):
    """All pointed sets ``{*, prefix1, ...}`` of sizes ``1..max_size``."""
    for size in range(1, max_size + 1):
        yield PointedSet([f"{prefix}*"] + [f"{prefix}{j}" for j in range(1, size)], f"{prefix}*")


def exhaustive_pairs(max_x=3, max_e=3):
    return itertools.product(pointed_sets(max_x, "x"), pointed_sets(max_e, "e"))
