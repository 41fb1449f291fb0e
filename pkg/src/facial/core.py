"""Finite pointed facial (semi-simplicial) sets, their maps, and validation.

Cells are arbitrary hashable names, unique per level.  Internally every face
table is a dense tuple of ordinals so composition and exhaustive checking are
cheap.  Level ``-1`` is the augmentation target when one is present.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

Cell = Hashable


class StructuralError(ValueError):
    """Malformed input: a table is missing an entry or points outside its range."""

    def __init__(self, message, location=None):
        super().__init__(message if location is None else f"{message} at {location}")
        self.location = location


@dataclass(frozen=True)
class Violation:
    identity: str
    level: int
    indices: tuple
    cell: Cell
    lhs: object
    rhs: object

    def describe(self):
        return (f"{self.identity} fails at level {self.level}, indices {self.indices}, "
                f"cell {self.cell!r}: {self.lhs!r} != {self.rhs!r}")


@dataclass
class ValidationReport:
    mode: str
    violations: list = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self):
        return not self.violations

    def add(self, *args):
        self.violations.append(Violation(*args))

    def summary(self):
        head = f"{self.mode}: {self.checked} checks, {len(self.violations)} violations"
        if self.violations:
            head += "; first: " + self.violations[0].describe()
        return head


@dataclass
class Report:
    """Named pass/fail verdicts; the first failure keeps its witness."""

    name: str
    ok: bool = True
    verdicts: list = field(default_factory=list)
    witness: object = None
    details: dict = field(default_factory=dict)

    def check(self, label, passed, witness=None):
        self.verdicts.append((label, bool(passed)))
        if not passed and self.ok:
            self.ok = False
            self.witness = (label, witness)
        return passed

    def lines(self):
        out = [f"{'PASS' if v else 'FAIL'}  {label}" for label, v in self.verdicts]
        if self.witness is not None:
            out.append(f"witness: {self.witness[0]}: {self.witness[1]}")
        return out


class FacialSet:
    """A finite facial set truncated at level ``top``.

    ``faces[(k, i)]`` maps level-k cells to level-(k-1) cells for ``0 <= i <= k``.
    ``augmentation`` (optional) maps level 0 into ``aug_cells`` (level -1).
    ``contraction[k]`` (optional, k = 0..top) maps level k-1 into level k.
    """

    def __init__(self, levels, basepoints, faces, *, aug_cells=None, aug_basepoint=None,
                 augmentation=None, contraction=None):
        self._cells = tuple(tuple(lv) for lv in levels)
        if not self._cells:
            raise StructuralError("a facial set needs at least level 0")
        self._index = []
        for k, lv in enumerate(self._cells):
            idx = {c: j for j, c in enumerate(lv)}
            if len(idx) != len(lv):
                raise StructuralError("duplicate cell name", f"level {k}")
            self._index.append(idx)
        self._base = tuple(basepoints)
        if len(self._base) != len(self._cells):
            raise StructuralError("one basepoint per level required")
        for k, b in enumerate(self._base):
            if b not in self._index[k]:
                raise StructuralError(f"basepoint {b!r} is not a cell", f"level {k}")
        self._faces = {}
        for k in range(1, len(self._cells)):
            for i in range(k + 1):
                table = faces.get((k, i))
                if table is None:
                    raise StructuralError("missing face table", f"d_{i} on level {k}")
                self._faces[(k, i)] = self._dense(table, k, k - 1, f"d_{i} on level {k}")
        self._aug = None
        if augmentation is not None:
            if aug_cells is None:
                aug_cells = sorted(set(augmentation.values()), key=repr)
            self._aug_cells = tuple(aug_cells)
            self._aug_index = {c: j for j, c in enumerate(self._aug_cells)}
            if aug_basepoint is None:
                raise StructuralError("augmentation target needs a basepoint")
            if aug_basepoint not in self._aug_index:
                raise StructuralError("augmentation basepoint is not a target cell")
            self._aug_base = aug_basepoint
            self._aug = self._dense(augmentation, 0, -1, "augmentation")
        self._con = None
        if contraction is not None:
            if self._aug is None:
                raise StructuralError("a contraction requires an augmentation (level -1)")
            self._con = []
            for k in range(len(self._cells)):
                table = contraction.get(k) if isinstance(contraction, dict) else contraction[k]
                if table is None:
                    raise StructuralError("missing contraction table", f"s into level {k}")
                self._con.append(self._dense(table, k - 1, k, f"s into level {k}"))
            self._con = tuple(self._con)

    # -- construction helpers ------------------------------------------------
    def _level_cells(self, k):
        return self._aug_cells if k == -1 else self._cells[k]

    def _level_index(self, k):
        return self._aug_index if k == -1 else self._index[k]

    def _dense(self, table, src, dst, where):
        src_cells = self._level_cells(src)
        dst_index = self._level_index(dst)
        out = []
        for c in src_cells:
            if c not in table:
                raise StructuralError(f"no entry for cell {c!r}", where)
            v = table[c]
            if v not in dst_index:
                raise StructuralError(f"value {v!r} of cell {c!r} is not a cell of level {dst}", where)
            out.append(dst_index[v])
        return tuple(out)

    @classmethod
    def from_functions(cls, levels, basepoints, face: Callable, *, aug_cells=None,
                       aug_basepoint=None, augment: Callable | None = None,
                       contract: Callable | None = None):
        """Tabulate ``face(k, i, cell)``, ``augment(cell)``, ``contract(k, cell)``."""
        levels = [list(lv) for lv in levels]
        faces = {(k, i): {c: face(k, i, c) for c in levels[k]}
                 for k in range(1, len(levels)) for i in range(k + 1)}
        aug = None if augment is None else {c: augment(c) for c in levels[0]}
        con = None
        if contract is not None:
            con = {0: {c: contract(0, c) for c in aug_cells}}
            for k in range(1, len(levels)):
                con[k] = {c: contract(k, c) for c in levels[k - 1]}
        return cls(levels, basepoints, faces, aug_cells=aug_cells, aug_basepoint=aug_basepoint,
                   augmentation=aug, contraction=con)

    # -- accessors -------------------------------------------------------------
    @property
    def top(self):
        return len(self._cells) - 1

    def cells(self, k):
        if k == -1:
            if self._aug is None:
                raise StructuralError("no augmentation target")
            return self._aug_cells
        return self._cells[k]

    def size(self, k):
        return len(self.cells(k))

    def basepoint(self, k):
        if k == -1:
            if self._aug is None:
                raise StructuralError("no augmentation target")
            return self._aug_base
        return self._base[k]

    def index(self, k, cell):
        return self._level_index(k)[cell]

    def has(self, k, cell):
        return cell in self._level_index(k)

    @property
    def has_augmentation(self):
        return self._aug is not None

    @property
    def has_contraction(self):
        return self._con is not None

    def face(self, k, i, cell):
        """``d_i`` of a level-k cell; ``face(0, 0, x)`` is the augmentation."""
        if k == 0:
            if i != 0 or self._aug is None:
                raise StructuralError(f"d_{i} undefined on level 0")
            return self._aug_cells[self._aug[self._index[0][cell]]]
        return self._cells[k - 1][self._faces[(k, i)][self._index[k][cell]]]

    def augment(self, cell):
        return self.face(0, 0, cell)

    def contract(self, k, cell):
        """``s``: level k-1 -> level k (``k = 0`` reads from the augmentation target)."""
        if self._con is None:
            raise StructuralError("no contraction")
        if not 0 <= k <= self.top:
            raise StructuralError(f"contraction into level {k} out of range")
        return self._cells[k][self._con[k][self._level_index(k - 1)[cell]]]

    def face_table(self, k, i):
        return self._faces[(k, i)]

    def faces_of(self, k, cell, indices):
        """Apply ``d_{indices[0]}`` first, then the next, descending in level."""
        for i in indices:
            cell = self.face(k, i, cell)
            k -= 1
        return cell

    def vertices(self, k, cell):
        """Vertex j of a k-cell: drop every other index (highest first)."""
        return [self.span_face(k, cell, (j,)) for j in range(k + 1)]

    def span_face(self, k, cell, keep):
        """The face of a k-cell spanned by the sorted vertex positions ``keep``."""
        lev = k
        for i in range(k, -1, -1):
            if i not in keep:
                cell = self.face(lev, i, cell)
                lev -= 1
        return cell

    def __repr__(self):
        sizes = ",".join(str(len(lv)) for lv in self._cells)
        extra = ("+aug" if self.has_augmentation else "") + ("+s" if self.has_contraction else "")
        return f"FacialSet(sizes=[{sizes}]{extra})"

    # -- serialisation-friendly view -------------------------------------------
    def tables(self):
        faces = {(k, i): {c: self._cells[k - 1][j] for c, j in zip(self._cells[k], t)}
                 for (k, i), t in self._faces.items()}
        aug = None if self._aug is None else {
            c: self._aug_cells[j] for c, j in zip(self._cells[0], self._aug)}
        con = None
        if self._con is not None:
            con = {k: {c: self._cells[k][j] for c, j in zip(self._level_cells(k - 1), t)}
                   for k, t in enumerate(self._con)}
        return faces, aug, con


class FacialMap:
    """Levelwise maps ``f_k`` between facial sets (``f_-1`` optional)."""

    def __init__(self, source: FacialSet, target: FacialSet, maps: Sequence[dict],
                 minus_one: dict | None = None):
        self.source, self.target = source, target
        if len(maps) != source.top + 1 or target.top < source.top:
            raise StructuralError("map needs one table per source level")
        self.maps = []
        for k, table in enumerate(maps):
            for c in source.cells(k):
                if c not in table:
                    raise StructuralError(f"no image for {c!r}", f"level {k}")
                if not target.has(k, table[c]):
                    raise StructuralError(f"image {table[c]!r} not in target", f"level {k}")
            self.maps.append(dict(table))
        self.minus_one = None if minus_one is None else dict(minus_one)

    def __call__(self, k, cell):
        if k == -1:
            return self.minus_one[cell]
        return self.maps[k][cell]


MODES = ("faces", "augmentation", "contraction", "map")


def _check_faces(F: FacialSet, rep: ValidationReport):
    for k in range(1, F.top + 1):
        b = F.basepoint(k)
        for i in range(k + 1):
            rep.checked += 1
            v = F.face(k, i, b)
            if v != F.basepoint(k - 1):
                rep.add("basepoint preserved by d", k, (i,), b, v, F.basepoint(k - 1))
    for k in range(2, F.top + 1):
        for x in F.cells(k):
            for i, j in itertools.combinations(range(k + 1), 2):
                rep.checked += 1
                lhs = F.face(k - 1, i, F.face(k, j, x))
                rhs = F.face(k - 1, j - 1, F.face(k, i, x))
                if lhs != rhs:
                    rep.add("d_i d_j = d_{j-1} d_i", k, (i, j), x, lhs, rhs)


def _check_augmentation(F: FacialSet, rep: ValidationReport):
    if not F.has_augmentation:
        rep.add("augmentation present", 0, (), None, None, "augmentation")
        return
    rep.checked += 1
    if F.augment(F.basepoint(0)) != F.basepoint(-1):
        rep.add("basepoint preserved by augmentation", 0, (0,), F.basepoint(0),
                F.augment(F.basepoint(0)), F.basepoint(-1))
    if F.top >= 1:
        for x in F.cells(1):
            rep.checked += 1
            lhs, rhs = F.augment(F.face(1, 0, x)), F.augment(F.face(1, 1, x))
            if lhs != rhs:
                rep.add("d_0 d_0 = d_0 d_1", 1, (0, 1), x, lhs, rhs)


def _check_contraction(F: FacialSet, rep: ValidationReport):
    if not F.has_contraction:
        rep.add("contraction present", 0, (), None, None, "contraction")
        return
    for k in range(F.top + 1):
        rep.checked += 1
        b = F.contract(k, F.basepoint(k - 1))
        if b != F.basepoint(k):
            rep.add("basepoint preserved by s", k, (), F.basepoint(k - 1), b, F.basepoint(k))
        for x in F.cells(k - 1):
            sx = F.contract(k, x)
            rep.checked += 1
            lhs = F.face(k, 0, sx)
            if lhs != x:
                rep.add("d_0 s = id", k, (0,), x, lhs, x)
            for i in range(1, k + 1):
                rep.checked += 1
                lhs = F.face(k, i, sx)
                rhs = F.contract(k - 1, F.face(k - 1, i - 1, x))
                if lhs != rhs:
                    rep.add("d_i s = s d_{i-1}", k, (i,), x, lhs, rhs)


def _check_map(f: FacialMap, rep: ValidationReport):
    S, T = f.source, f.target
    for k in range(S.top + 1):
        rep.checked += 1
        if f(k, S.basepoint(k)) != T.basepoint(k):
            rep.add("basepoint preserved by f", k, (), S.basepoint(k), f(k, S.basepoint(k)),
                    T.basepoint(k))
    for k in range(1, S.top + 1):
        for x in S.cells(k):
            fx = f(k, x)
            for i in range(k + 1):
                rep.checked += 1
                lhs, rhs = f(k - 1, S.face(k, i, x)), T.face(k, i, fx)
                if lhs != rhs:
                    rep.add("f d_i = d_i f", k, (i,), x, lhs, rhs)
    if f.minus_one is not None and S.has_augmentation and T.has_augmentation:
        for x in S.cells(0):
            rep.checked += 1
            lhs, rhs = f.minus_one[S.augment(x)], T.augment(f(0, x))
            if lhs != rhs:
                rep.add("f d_0 = d_0 f", 0, (0,), x, lhs, rhs)


def validate(obj, mode="faces") -> ValidationReport:
    """Exhaustively check the identities selected by ``mode``.

    ``mode`` is one of ``faces``, ``augmentation``, ``contraction``, ``map`` or
    ``all`` (every mode that applies to ``obj``).
    """
    if mode == "all":
        modes = ["map"] if isinstance(obj, FacialMap) else ["faces"] + (
            ["augmentation"] if obj.has_augmentation else []) + (
            ["contraction"] if obj.has_contraction else [])
        rep = ValidationReport("all")
        for m in modes:
            sub = validate(obj, m)
            rep.checked += sub.checked
            rep.violations.extend(sub.violations)
        return rep
    if mode not in MODES:
        raise ValueError(f"unknown validation mode {mode!r}")
    rep = ValidationReport(mode)
    if mode == "map":
        if not isinstance(obj, FacialMap):
            raise TypeError("mode 'map' needs a FacialMap")
        _check_map(obj, rep)
        return rep
    if not isinstance(obj, FacialSet):
        raise TypeError(f"mode {mode!r} needs a FacialSet")
    {"faces": _check_faces, "augmentation": _check_augmentation,
     "contraction": _check_contraction}[mode](obj, rep)
    return rep


def truncate(F: FacialSet, n: int) -> FacialSet:
    """Keep levels ``<= n``; every level above ``n`` collapses to its basepoint.

    The contraction survives only when nothing is collapsed, since ``d_0 s = id``
    cannot hold into a one-point level above a nontrivial one.
    """
    if n < 0:
        raise ValueError("truncation level must be >= 0")
    if n > F.top:
        raise ValueError(f"truncation level {n} exceeds top level {F.top}")
    faces, aug, con = F.tables()
    levels, bases = [], []
    for k in range(F.top + 1):
        if k <= n:
            levels.append(list(F.cells(k)))
        else:
            levels.append([F.basepoint(k)])
        bases.append(F.basepoint(k))
    new_faces = {}
    for (k, i), table in faces.items():
        if k <= n:
            new_faces[(k, i)] = table
        else:
            new_faces[(k, i)] = {F.basepoint(k): F.basepoint(k - 1)}
    kw = {}
    if aug is not None:
        kw = dict(aug_cells=F.cells(-1), aug_basepoint=F.basepoint(-1), augmentation=aug)
        if con is not None and n == F.top:
            kw["contraction"] = con
    return FacialSet(levels, bases, new_faces, **kw)


def levelwise_power(F: FacialSet, i: int) -> FacialSet:
    """Level k of the result is the ``i``-fold product of level k of ``F``."""
    if i < 1:
        raise ValueError("power must be positive")
    if i == 1:
        return F
    levels = [list(itertools.product(F.cells(k), repeat=i)) for k in range(F.top + 1)]
    bases = [(F.basepoint(k),) * i for k in range(F.top + 1)]

    def face(k, j, c):
        return tuple(F.face(k, j, x) for x in c)

    kw = {}
    if F.has_augmentation:
        kw = dict(aug_cells=list(itertools.product(F.cells(-1), repeat=i)),
                  aug_basepoint=(F.basepoint(-1),) * i,
                  augment=lambda c: tuple(F.augment(x) for x in c))
        if F.has_contraction:
            kw["contract"] = lambda k, c: tuple(F.contract(k, x) for x in c)
    return FacialSet.from_functions(levels, bases, face, **kw)
