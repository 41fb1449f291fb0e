"""Bifacial sets: grids ``Z_k^p`` with row faces ``d`` and column faces ``del``.

Row ``k`` is the facial set ``Z_k^0 <- Z_k^1 <- ...`` augmented over ``Z_k^{-1}``;
column ``p`` is ``Z_0^p <- Z_1^p <- ...`` with faces ``del_i``.  Rows may carry
contractions ``s_k`` that need not commute with the column faces.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from .chains import ChainComplex, Tower, homology
from .core import FacialSet, StructuralError, ValidationReport, validate


class BifacialSet:
    """Finite bifacial set with columns ``k = 0..K`` and rows levels ``p = -1..P``."""

    def __init__(self, cells, basepoints, row_faces, col_faces, contraction=None):
        self._cells = {key: tuple(v) for key, v in cells.items()}
        self.K = max(k for k, _ in self._cells)
        self.P = max(p for _, p in self._cells)
        for k in range(self.K + 1):
            for p in range(-1, self.P + 1):
                if (k, p) not in self._cells:
                    raise StructuralError("missing grid entry", f"Z_{k}^{p}")
                if basepoints.get((k, p)) not in set(self._cells[(k, p)]):
                    raise StructuralError("basepoint is not a cell", f"Z_{k}^{p}")
        self._base = dict(basepoints)
        self._row = {}
        for k in range(self.K + 1):
            for p in range(0, self.P + 1):
                for i in range(p + 1):
                    self._row[(k, p, i)] = self._table(row_faces, (k, p, i), (k, p), (k, p - 1))
        self._col = {}
        for k in range(1, self.K + 1):
            for p in range(-1, self.P + 1):
                for i in range(k + 1):
                    self._col[(k, p, i)] = self._table(col_faces, (k, p, i), (k, p), (k - 1, p))
        self._con = None
        if contraction is not None:
            self._con = {}
            for k in range(self.K + 1):
                for p in range(0, self.P + 1):
                    self._con[(k, p)] = self._table(contraction, (k, p), (k, p - 1), (k, p))

    def _table(self, tables, key, src, dst):
        t = tables.get(key)
        if t is None:
            raise StructuralError("missing table", str(key))
        dst_cells = set(self._cells[dst])
        out = {}
        for z in self._cells[src]:
            if z not in t:
                raise StructuralError(f"no entry for {z!r}", str(key))
            if t[z] not in dst_cells:
                raise StructuralError(f"{t[z]!r} is not in Z_{dst[0]}^{dst[1]}", str(key))
            out[z] = t[z]
        return out

    @classmethod
    def from_functions(cls, K, P, cells, basepoint, row_face, col_face, contract=None):
        grid = {(k, p): list(cells(k, p)) for k in range(K + 1) for p in range(-1, P + 1)}
        bases = {key: basepoint(*key) for key in grid}
        rows = {(k, p, i): {z: row_face(k, p, i, z) for z in grid[(k, p)]}
                for k in range(K + 1) for p in range(P + 1) for i in range(p + 1)}
        cols = {(k, p, i): {z: col_face(k, p, i, z) for z in grid[(k, p)]}
                for k in range(1, K + 1) for p in range(-1, P + 1) for i in range(k + 1)}
        con = None
        if contract is not None:
            con = {(k, p): {z: contract(k, p, z) for z in grid[(k, p - 1)]}
                   for k in range(K + 1) for p in range(P + 1)}
        return cls(grid, bases, rows, cols, con)

    # accessors --------------------------------------------------------------
    def cells(self, k, p):
        return self._cells[(k, p)]

    def basepoint(self, k, p):
        return self._base[(k, p)]

    @property
    def has_contraction(self):
        return self._con is not None

    def row_face(self, k, p, i, z):
        """``d_i: Z_k^p -> Z_k^{p-1}`` (at ``p = 0`` this is the row augmentation)."""
        return self._row[(k, p, i)][z]

    def col_face(self, k, p, i, z):
        """``del_i: Z_k^p -> Z_{k-1}^p``."""
        return self._col[(k, p, i)][z]

    def contract(self, k, p, z):
        """``s_k: Z_k^{p-1} -> Z_k^p``."""
        if self._con is None:
            raise StructuralError("no row contraction")
        return self._con[(k, p)][z]

    def size(self):
        return sum(len(v) for v in self._cells.values())

    def row(self, k, top=None) -> FacialSet:
        top = self.P if top is None else top
        levels = [self.cells(k, p) for p in range(top + 1)]
        faces = {(p, i): self._row[(k, p, i)] for p in range(1, top + 1) for i in range(p + 1)}
        con = None if self._con is None else {p: self._con[(k, p)] for p in range(top + 1)}
        return FacialSet(levels, [self.basepoint(k, p) for p in range(top + 1)], faces,
                         aug_cells=self.cells(k, -1), aug_basepoint=self.basepoint(k, -1),
                         augmentation=self._row[(k, 0, 0)], contraction=con)

    def column(self, p, top=None) -> FacialSet:
        top = self.K if top is None else top
        levels = [self.cells(k, p) for k in range(top + 1)]
        faces = {(k, i): self._col[(k, p, i)] for k in range(1, top + 1) for i in range(k + 1)}
        return FacialSet(levels, [self.basepoint(k, p) for k in range(top + 1)], faces)

    def with_contraction(self, contraction):
        return BifacialSet(self._cells, self._base,
                           {key: dict(t) for key, t in self._row.items()},
                           {key: dict(t) for key, t in self._col.items()}, contraction)

    def contraction_tables(self):
        return None if self._con is None else {key: dict(t) for key, t in self._con.items()}

    def tables(self):
        return self._row, self._col

    def __repr__(self):
        return f"BifacialSet(K={self.K}, P={self.P}, cells={self.size()})"


def validate_bifacial(Z: BifacialSet) -> ValidationReport:
    """Rows, columns, row contractions and the commutation ``d_j del_i = del_i d_j``."""
    rep = ValidationReport("bifacial")

    def absorb(sub, where):
        rep.checked += sub.checked
        for v in sub.violations:
            rep.add(f"{where}: {v.identity}", v.level, v.indices, v.cell, v.lhs, v.rhs)

    for k in range(Z.K + 1):
        R = Z.row(k)
        absorb(validate(R, "faces"), f"row {k}")
        absorb(validate(R, "augmentation"), f"row {k}")
        if Z.has_contraction:
            absorb(validate(R, "contraction"), f"row {k}")
    for p in range(-1, Z.P + 1):
        absorb(validate(Z.column(p), "faces"), f"column {p}")
    for k in range(1, Z.K + 1):
        for p in range(Z.P + 1):
            for z in Z.cells(k, p):
                for i in range(k + 1):
                    for j in range(p + 1):
                        rep.checked += 1
                        lhs = Z.row_face(k - 1, p, j, Z.col_face(k, p, i, z))
                        rhs = Z.col_face(k, p - 1, i, Z.row_face(k, p, j, z))
                        if lhs != rhs:
                            rep.add("d_j del_i = del_i d_j", k, (i, j), z, lhs, rhs)
    return rep


# -- realizations -------------------------------------------------------------------

def rows_first_tower(Z: BifacialSet, n, p) -> Tower:
    """Level k is the realization of row k up to ``p``; column faces act cellwise."""
    return Tower([[Z.cells(k, q) for q in range(p + 1)] for k in range(n + 1)],
                 lambda k, q, j, z: Z.row_face(k, q, j, z),
                 lambda k, q, i, z: Z.col_face(k, q, i, z),
                 name="rows first")


def columns_first_tower(Z: BifacialSet, n, p) -> Tower:
    """Level q is the realization of column q up to ``n``; row faces act cellwise."""
    return Tower([[Z.cells(k, q) for k in range(n + 1)] for q in range(p + 1)],
                 lambda q, k, i, z: Z.col_face(k, q, i, z),
                 lambda q, k, j, z: Z.row_face(k, q, j, z),
                 name="columns first")


@dataclass
class CompareReport:
    n: int
    p: int
    ok: bool
    ranks_rows_first: list
    ranks_columns_first: list
    homology_rows_first: object = None
    homology_columns_first: object = None
    failures: list = field(default_factory=list)


def bifacial_compare(Z: BifacialSet, n, p) -> CompareReport:
    """Both iterated truncated realizations and the signed cell bijection between them.

    The cell ``Delta^k x Delta^q`` indexed by ``z`` in ``Z_k^q`` appears in both;
    swapping the factors multiplies the orientation by ``(-1)^{kq}``.
    """
    if n > Z.K or p > Z.P:
        raise StructuralError(f"grid is {Z.K}x{Z.P}, cannot realize up to ({n}, {p})")
    RF = rows_first_tower(Z, n, p).total_chains()
    CF = columns_first_tower(Z, n, p).total_chains()
    rep = CompareReport(n, p, True, [len(g) for g in RF.gens], [len(g) for g in CF.gens])
    if rep.ranks_rows_first != rep.ranks_columns_first:
        rep.ok = False
        rep.failures.append("cell counts differ")
        return rep
    mats = {}
    for deg in range(RF.top + 1):
        M = np.zeros((CF.rank(deg), RF.rank(deg)), dtype=np.int64)
        for j, (k, q, z) in enumerate(RF.gens[deg]):
            M[CF.index(deg, (q, k, z)), j] = (-1) ** (k * q)
        mats[deg] = M
    for deg in range(1, RF.top + 1):
        if not np.array_equal(CF.d(deg) @ mats[deg], mats[deg - 1] @ RF.d(deg)):
            rep.ok = False
            rep.failures.append(f"bijection fails to commute with boundaries in degree {deg}")
    rep.homology_rows_first = homology(RF)
    rep.homology_columns_first = homology(CF)
    if rep.homology_rows_first != rep.homology_columns_first:
        rep.ok = False
        rep.failures.append("homology differs")
    return rep


# -- random instances -------------------------------------------------------------------

def twisted_product(Y: FacialSet, E: FacialSet, c, P) -> BifacialSet:
    """``Z_k^p = Y_k x E_k^{p+1}`` with coordinatewise column faces.

    ``d_j`` drops ``e_j``; the row contraction prepends ``c(k, y)``, an arbitrary
    pointed function ``Y_k -> E_k``, so it usually ignores the column faces.
    """
    K = min(Y.top, E.top)

    def cells(k, p):
        return [(y,) + es for y in Y.cells(k) for es in itertools.product(E.cells(k), repeat=p + 1)]

    def basepoint(k, p):
        return (Y.basepoint(k),) + (E.basepoint(k),) * (p + 1)

    def row_face(k, p, j, z):
        return z[: j + 1] + z[j + 2:]

    def col_face(k, p, i, z):
        return (Y.face(k, i, z[0]),) + tuple(E.face(k, i, e) for e in z[1:])

    def contract(k, p, z):
        return (z[0], c(k, z[0])) + z[1:]

    return BifacialSet.from_functions(K, P, cells, basepoint, row_face, col_face, contract)


def random_twisted_product(rng: random.Random, K, P, y_sizes=None, e_sizes=None) -> BifacialSet:
    from .random_instances import random_facial_set

    y_sizes = y_sizes or [rng.randint(1, 3) for _ in range(K + 1)]
    e_sizes = e_sizes or [rng.randint(1, 2) for _ in range(K + 1)]
    Y = random_facial_set(rng, y_sizes, prefix="y")
    E = random_facial_set(rng, e_sizes, prefix="e")
    table = {}
    for k in range(K + 1):
        for y in Y.cells(k):
            table[(k, y)] = E.basepoint(k) if y == Y.basepoint(k) else rng.choice(E.cells(k))
    return twisted_product(Y, E, lambda k, y: table[(k, y)], P)
