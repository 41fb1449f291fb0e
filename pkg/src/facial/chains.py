"""Integer cellular chains, homology and chain-level comparisons.

Boundary and chain-map matrices are numpy ``int64`` arrays with explicit
shapes (so empty degrees still compose); every reduction goes through the
exact Python-int routines in :mod:`facial.smith`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import smith
from .core import FacialSet


class ChainError(ValueError):
    """A boundary or chain-map identity failed; ``degree`` names where."""

    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree


def _zeros(r, c):
    return np.zeros((r, c), dtype=np.int64)


class ChainComplex:
    """Free chain complex in degrees ``0..top`` with named generators.

    ``boundaries[k]`` has shape ``(len(gens[k-1]), len(gens[k]))``.
    """

    def __init__(self, gens: Sequence[Sequence], boundaries: dict, *, check=True, name=""):
        self.gens = [list(g) for g in gens]
        self.name = name
        self._index = [{g: j for j, g in enumerate(gs)} for gs in self.gens]
        for k, idx in enumerate(self._index):
            if len(idx) != len(self.gens[k]):
                raise ChainError(f"duplicate generator in degree {k}", k)
        self._bd = {}
        for k in range(1, len(self.gens)):
            M = boundaries.get(k)
            shape = (len(self.gens[k - 1]), len(self.gens[k]))
            if M is None:
                M = _zeros(*shape)
            M = np.asarray(M, dtype=np.int64).reshape(shape)
            self._bd[k] = M
        if check:
            self.check()

    @classmethod
    def from_boundary(cls, gens, boundary: Callable, **kw):
        """``boundary(k, g)`` returns an iterable of ``(coefficient, generator)``."""
        gens = [list(g) for g in gens]
        index = [{g: j for j, g in enumerate(gs)} for gs in gens]
        mats = {}
        for k in range(1, len(gens)):
            M = _zeros(len(gens[k - 1]), len(gens[k]))
            for j, g in enumerate(gens[k]):
                for c, h in boundary(k, g):
                    if c:
                        try:
                            M[index[k - 1][h], j] += c
                        except KeyError:
                            raise ChainError(f"boundary of {g!r} hits unknown {h!r}", k) from None
            mats[k] = M
        return cls(gens, mats, **kw)

    @property
    def top(self):
        return len(self.gens) - 1

    def rank(self, k):
        return len(self.gens[k]) if 0 <= k < len(self.gens) else 0

    def index(self, k, g):
        return self._index[k][g]

    def d(self, k):
        """Boundary ``C_k -> C_{k-1}`` (zero matrix outside the stored range)."""
        if 1 <= k <= self.top:
            return self._bd[k]
        return _zeros(self.rank(k - 1), self.rank(k))

    def check(self):
        for k in range(2, self.top + 1):
            if np.any(self.d(k - 1) @ self.d(k)):
                raise ChainError(f"boundary squares to nonzero in degree {k}", k)

    def vector(self, k, chain: dict):
        v = np.zeros(self.rank(k), dtype=np.int64)
        for g, c in chain.items():
            v[self._index[k][g]] += c
        return v

    def as_chain(self, k, v):
        return {self.gens[k][j]: int(c) for j, c in enumerate(v) if c}

    def __repr__(self):
        return f"ChainComplex({self.name or 'C'}; ranks={[len(g) for g in self.gens]})"


@dataclass(frozen=True)
class HomologyResult:
    """``groups[k] = (betti, torsion)`` with torsion invariant factors > 1."""

    groups: tuple

    @classmethod
    def of(cls, *groups):
        """Shorthand: ``HomologyResult.of(1, (1, [2]), 0)``."""
        out = []
        for g in groups:
            if isinstance(g, int):
                out.append((g, ()))
            else:
                out.append((g[0], tuple(g[1])))
        return cls(tuple(out))

    def betti(self, k):
        return self.groups[k][0] if k < len(self.groups) else 0

    def torsion(self, k):
        return self.groups[k][1] if k < len(self.groups) else ()

    def upto(self, k):
        return HomologyResult(self.groups[: k + 1])

    def reduced(self):
        if not self.groups or self.groups[0][0] == 0:
            return self
        b, t = self.groups[0]
        return HomologyResult(((b - 1, t),) + self.groups[1:])

    def is_zero(self):
        return all(b == 0 and not t for b, t in self.groups)

    @staticmethod
    def format_group(b, t):
        parts = []
        if b == 1:
            parts.append("Z")
        elif b > 1:
            parts.append(f"Z^{b}")
        parts.extend(f"Z/{d}" for d in t)
        return " + ".join(parts) if parts else "0"

    def table(self):
        return [self.format_group(b, t) for b, t in self.groups]

    def __str__(self):
        return ", ".join(f"H{k} = {s}" for k, s in enumerate(self.table()))


def homology(C: ChainComplex, top=None) -> HomologyResult:
    C.check()
    top = C.top if top is None else top
    ranks, factors = {}, {}

    def facs(k):
        if k not in factors:
            M = C.d(k)
            factors[k] = smith.invariant_factors(M) if M.size else []
        return factors[k]

    out = []
    for k in range(top + 1):
        r_out = len(facs(k)) if k >= 1 else 0
        inc = facs(k + 1)
        betti = C.rank(k) - r_out - len(inc)
        out.append((betti, tuple(d for d in inc if d > 1)))
    return HomologyResult(tuple(out))


class ChainMap:
    """Degreewise matrices ``f_k: source_k -> target_k`` commuting with boundaries."""

    def __init__(self, source: ChainComplex, target: ChainComplex, mats: dict, *, check=True):
        self.source, self.target = source, target
        self.mats = {}
        for k in range(source.top + 1):
            shape = (target.rank(k), source.rank(k))
            M = mats.get(k)
            self.mats[k] = _zeros(*shape) if M is None else np.asarray(M, np.int64).reshape(shape)
        if check:
            self.check()

    def __getitem__(self, k):
        if k in self.mats:
            return self.mats[k]
        return _zeros(self.target.rank(k), self.source.rank(k))

    def check(self):
        for k in range(1, self.source.top + 1):
            lhs = self.target.d(k) @ self[k]
            rhs = self[k - 1] @ self.source.d(k)
            if not np.array_equal(lhs, rhs):
                j = int(np.argwhere(lhs != rhs)[0][1])
                raise ChainError(f"chain map fails to commute with boundary in degree {k} "
                                 f"on generator {self.source.gens[k][j]!r}", k)

    def compose(self, other: "ChainMap") -> "ChainMap":
        """``self . other``."""
        return ChainMap(other.source, self.target,
                        {k: self[k] @ other[k] for k in range(other.source.top + 1)})

    def __sub__(self, other):
        return ChainMap(self.source, self.target,
                        {k: self[k] - other[k] for k in range(self.source.top + 1)}, check=False)

    def __eq__(self, other):
        return all(np.array_equal(self[k], other[k]) for k in range(self.source.top + 1))

    __hash__ = None


def identity_map(C: ChainComplex) -> ChainMap:
    return ChainMap(C, C, {k: np.eye(C.rank(k), dtype=np.int64) for k in range(C.top + 1)})


def mapping_cone(f: ChainMap) -> ChainComplex:
    """``Cone_k = B_k + A_{k-1}`` with boundary ``[[dB, f], [0, -dA]]``."""
    A, B = f.source, f.target
    top = max(B.top, A.top + 1)
    gens = [[("B", g) for g in (B.gens[k] if k <= B.top else [])]
            + [("A", g) for g in (A.gens[k - 1] if 1 <= k <= A.top + 1 else [])]
            for k in range(top + 1)]
    mats = {}
    for k in range(1, top + 1):
        top_row = np.hstack([B.d(k), f[k - 1]])
        bottom = np.hstack([_zeros(A.rank(k - 2), B.rank(k)), -A.d(k - 1)])
        mats[k] = np.vstack([top_row, bottom])
    return ChainComplex(gens, mats, name=f"cone")


def is_quasi_isomorphism(f: ChainMap, top=None) -> bool:
    """True iff the cone is acyclic through degree ``top + 1``."""
    cone = mapping_cone(f)
    top = f.source.top if top is None else top
    H = homology(cone, min(cone.top, top + 1))
    return H.is_zero()


def verify_chain_homotopy(f: ChainMap, g: ChainMap, h: dict) -> bool:
    """``f_k - g_k == d_{k+1} h_k + h_{k-1} d_k`` for every degree.

    ``h[k]`` maps source degree k to target degree k+1.
    """
    A, B = f.source, f.target
    if g.source is not A or g.target is not B:
        if g.source.gens != A.gens or g.target.gens != B.gens:
            raise ValueError("chain maps are not parallel")

    def H(k):
        shape = (B.rank(k + 1), A.rank(k))
        if k < 0 or k not in h:
            return _zeros(*shape)
        M = np.asarray(h[k], np.int64)
        if M.shape != shape:
            raise ValueError(f"homotopy in degree {k} has shape {M.shape}, expected {shape}")
        return M

    for k in range(A.top + 1):
        lhs = f[k] - g[k]
        rhs = B.d(k + 1) @ H(k) + H(k - 1) @ A.d(k)
        if not np.array_equal(lhs, rhs):
            return False
    return True


# -- homology generators and induced maps --------------------------------------

@dataclass
class HomologyBasis:
    """Cycle representatives for ``H_k`` and a way to read off coordinates."""

    degree: int
    free: list          # cycles (np vectors) generating the free part
    torsion: list       # (cycle, order) pairs
    _coord: Callable

    def coordinates(self, cycle):
        """(free coordinates, torsion coordinates mod their orders) of a cycle."""
        return self._coord(cycle)


def homology_basis(C: ChainComplex, k: int) -> HomologyBasis:
    n = C.rank(k)
    Dk = C.d(k)
    if Dk.shape[0] and n:
        sf = smith.smith_normal_form(Dk)
        V, Vinv, r = sf.V, sf.V_inv, sf.rank
    else:
        V, Vinv, r = smith.identity(n), smith.identity(n), 0
    K = [[V[i][j] for j in range(r, n)] for i in range(n)]   # n x (n-r)
    dim = n - r
    Dn = C.d(k + 1)
    B = [[sum(Vinv[r + a][i] * int(Dn[i, j]) for i in range(n)) for j in range(Dn.shape[1])]
         for a in range(dim)]
    if dim and Dn.shape[1]:
        sf2 = smith.smith_normal_form(B)
        U2, U2inv, r2, diag = sf2.U, sf2.U_inv, sf2.rank, sf2.diagonal
    else:
        U2, U2inv, r2, diag = smith.identity(dim), smith.identity(dim), 0, []

    def gen(col):
        return np.array([sum(K[i][a] * U2inv[a][col] for a in range(dim)) for i in range(n)],
                        dtype=np.int64)

    free = [gen(c) for c in range(r2, dim)]
    tors = [(gen(c), diag[c]) for c in range(r2) if diag[c] > 1]

    def coord(z):
        z = [int(a) for a in z]
        if any(sum(int(Dk[i, j]) * z[j] for j in range(n)) for i in range(Dk.shape[0])):
            raise ChainError("not a cycle", k)
        kc = [sum(Vinv[r + a][i] * z[i] for i in range(n)) for a in range(dim)]
        c = [sum(U2[a][b] * kc[b] for b in range(dim)) for a in range(dim)]
        return (tuple(c[r2:]), tuple(c[i] % diag[i] for i in range(r2) if diag[i] > 1))

    return HomologyBasis(k, free, tors, coord)


def induced_map(f: ChainMap, k: int):
    """Matrix of ``f_*`` on the free part of ``H_k`` and the images of torsion generators."""
    src, tgt = homology_basis(f.source, k), homology_basis(f.target, k)
    cols = [tgt.coordinates(f[k] @ z)[0] for z in src.free]
    free = np.array(cols, dtype=np.int64).T.reshape(len(tgt.free), len(src.free))
    tors = [tgt.coordinates(f[k] @ z) for z, _ in src.torsion]
    return free, tors


def is_boundary(C: ChainComplex, k: int, v) -> bool:
    D = C.d(k + 1)
    if not np.any(v):
        return True
    if D.shape[1] == 0:
        return False
    return smith.solve_integer(D, [int(a) for a in v], ncols=D.shape[1]) is not None


def zero_on_homology(f: ChainMap, top=None) -> bool:
    """True iff every cycle is sent to a boundary (``f_* = 0`` with torsion)."""
    top = f.source.top if top is None else top
    for k in range(top + 1):
        Dk = f.source.d(k)
        if Dk.shape[0]:
            cycles = smith.kernel_basis(Dk, ncols=Dk.shape[1])
        else:
            cycles = smith.identity(f.source.rank(k))
        for z in cycles:
            if not is_boundary(f.target, k, f[k] @ np.array(z, dtype=np.int64)):
                return False
    return True


# -- cellular models of facial sets ---------------------------------------------

def fat_chains(F: FacialSet, n: int) -> ChainComplex:
    """One k-cell per level-k element, ``k <= n``; boundary ``sum (-1)^i d_i``."""
    top = min(n, F.top)
    gens = [list(F.cells(k)) for k in range(top + 1)]
    return ChainComplex.from_boundary(
        gens, lambda k, x: (((-1) ** i, F.face(k, i, x)) for i in range(k + 1)),
        name=f"fat stage {n}")


def pointed_chains(F: FacialSet, n: int):
    """Chains of the pointed realization (basepoint cells collapsed) and the collapse map."""
    top = min(n, F.top)
    fat = fat_chains(F, n)
    gens = [[x for x in F.cells(k) if x != F.basepoint(k)] for k in range(top + 1)]

    def bd(k, x):
        for i in range(k + 1):
            y = F.face(k, i, x)
            if y != F.basepoint(k - 1):
                yield (-1) ** i, y

    P = ChainComplex.from_boundary(gens, bd, name=f"pointed stage {n}")
    mats = {}
    for k in range(top + 1):
        M = _zeros(P.rank(k), fat.rank(k))
        for j, x in enumerate(fat.gens[k]):
            if x != F.basepoint(k):
                M[P.index(k, x), j] = 1
        mats[k] = M
    return P, ChainMap(fat, P, mats)


def stage_inclusion(F: FacialSet, n: int, pointed=False) -> ChainMap:
    """Chain map of the inclusion of stage ``n-1`` into stage ``n``."""
    if pointed:
        A, B = pointed_chains(F, n - 1)[0], pointed_chains(F, n)[0]
    else:
        A, B = fat_chains(F, n - 1), fat_chains(F, n)
    mats = {}
    for k in range(A.top + 1):
        M = _zeros(B.rank(k), A.rank(k))
        for j, x in enumerate(A.gens[k]):
            M[B.index(k, x), j] = 1
        mats[k] = M
    return ChainMap(A, B, mats)


def relative_chains(F: FacialSet, n: int, pointed=True) -> ChainComplex:
    """Quotient of stage ``n`` by stage ``n-1``: generators are the new level-n cells."""
    B = pointed_chains(F, n)[0] if pointed else fat_chains(F, n)
    gens = [[] for _ in range(B.top + 1)]
    if n <= F.top:
        gens[n] = list(B.gens[n])
    return ChainComplex(gens, {}, name=f"stage {n} / stage {n - 1}")


# -- face-affine chain maps --------------------------------------------------------

def permutation_sign(seq):
    """Sign of the permutation sorting ``seq`` (distinct entries)."""
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def face_affine_image(degree, image, span: Callable, target_index: dict, collapsed=None):
    """Coefficient and target generator of one source cell, or ``None`` for zero.

    ``image = (target_dim, target_cell, vertex_map)`` says vertex ``j`` of the
    source simplex goes to vertex ``vertex_map[j]`` of the target simplex.
    """
    if image is None:
        return None
    tdim, tcell, vmap = image
    if len(vmap) != degree + 1 or any(not 0 <= v <= tdim for v in vmap):
        raise ChainError(f"vertex map {vmap} is not a map Delta^{degree} -> Delta^{tdim}", degree)
    if len(set(vmap)) < len(vmap):
        return None
    keep = tuple(sorted(vmap))
    face = tcell if len(keep) == tdim + 1 else span(tdim, tcell, keep)
    if face not in target_index:
        if collapsed is not None and collapsed(degree, face):
            return None
        raise ChainError(f"image {face!r} is not a generator of degree {degree}", degree)
    return permutation_sign(vmap), face


def face_affine_chain_map(source: ChainComplex, target: ChainComplex, assign: Callable,
                          span: Callable, collapsed: Callable | None = None) -> ChainMap:
    """Chain map from a cellwise assignment ``assign(k, g) -> (dim, cell, vertex_map) | None``.

    ``span(dim, cell, keep)`` returns the face of a target cell spanned by the
    sorted vertex positions ``keep``.  Degenerate images contribute zero; the
    result is checked against both boundaries.
    """
    mats = {}
    for k in range(source.top + 1):
        M = _zeros(target.rank(k), source.rank(k))
        idx = target._index[k] if k <= target.top else {}
        for j, g in enumerate(source.gens[k]):
            hit = face_affine_image(k, assign(k, g), span, idx, collapsed)
            if hit is not None:
                M[idx[hit[1]], j] += hit[0]
        mats[k] = M
    return ChainMap(source, target, mats)


# -- facial objects in Delta-complexes -------------------------------------------

class Tower:
    """A facial object in Delta-complexes truncated at column level ``top``.

    ``cells[k][d]`` lists the d-simplices of level k.  ``simplex_face(k, d, j, c)``
    is the j-th face of a d-simplex; ``column_face(k, d, i, c)`` maps level k to
    level k-1 preserving dimension and vertex order.  The total complex puts
    the generator ``(k, d, c)`` in degree ``k + d`` (cells ``Delta^k x c``).
    """

    def __init__(self, cells, simplex_face: Callable, column_face: Callable, name=""):
        self.cells = [[list(cs) for cs in lv] for lv in cells]
        self.name = name
        self._sface = {}
        self._cface = {}
        for k, lv in enumerate(self.cells):
            for d, cs in enumerate(lv):
                for c in cs:
                    if d:
                        self._sface[(k, d, c)] = tuple(simplex_face(k, d, j, c) for j in range(d + 1))
                    if k:
                        self._cface[(k, c)] = tuple(column_face(k, d, i, c) for i in range(k + 1))
        self._dim_of = [{c: d for d, cs in enumerate(lv) for c in cs} for lv in self.cells]

    @classmethod
    def discrete(cls, F: FacialSet, n: int, name=""):
        top = min(n, F.top)
        return cls([[list(F.cells(k))] for k in range(top + 1)], None,
                   lambda k, d, i, c: F.face(k, i, c), name=name)

    @property
    def top(self):
        return len(self.cells) - 1

    def dim(self, k, c):
        return self._dim_of[k][c]

    def all_cells(self, k):
        return [c for cs in self.cells[k] for c in cs]

    def simplex_face(self, k, d, j, c):
        return self._sface[(k, d, c)][j]

    def column_face(self, k, i, c):
        return self._cface[(k, c)][i]

    def span(self, k, d, c, keep):
        for j in range(d, -1, -1):
            if j not in keep:
                c = self.simplex_face(k, d, j, c)
                d -= 1
        return c

    def check(self):
        """Simplicial and column identities, and their commutation."""
        bad = []
        for k, lv in enumerate(self.cells):
            for d, cs in enumerate(lv):
                for c in cs:
                    for i, j in itertools.combinations(range(d + 1), 2):
                        if d >= 2 and self.simplex_face(k, d - 1, i, self.simplex_face(k, d, j, c)) != \
                                self.simplex_face(k, d - 1, j - 1, self.simplex_face(k, d, i, c)):
                            bad.append(("simplex", k, d, (i, j), c))
                    if k >= 2:
                        for i, j in itertools.combinations(range(k + 1), 2):
                            if self.column_face(k - 1, i, self.column_face(k, j, c)) != \
                                    self.column_face(k - 1, j - 1, self.column_face(k, i, c)):
                                bad.append(("column", k, d, (i, j), c))
                    if k >= 1 and d >= 1:
                        for i in range(k + 1):
                            for j in range(d + 1):
                                if self.column_face(k, i, c) not in self._dim_of[k - 1] or \
                                        self.simplex_face(k - 1, d, j, self.column_face(k, i, c)) != \
                                        self.column_face(k, i, self.simplex_face(k, d, j, c)):
                                    bad.append(("commute", k, d, (i, j), c))
        return bad

    def level_chains(self, k) -> ChainComplex:
        lv = self.cells[k]
        return ChainComplex.from_boundary(
            lv, lambda d, c: (((-1) ** j, self.simplex_face(k, d, j, c)) for j in range(d + 1)))

    def total_chains(self) -> ChainComplex:
        top = self.top + max((len(lv) - 1 for lv in self.cells), default=0)
        gens = [[] for _ in range(top + 1)]
        for k, lv in enumerate(self.cells):
            for d, cs in enumerate(lv):
                gens[k + d].extend((k, d, c) for c in cs)

        def bd(deg, g):
            k, d, c = g
            for i in range(k + 1 if k else 0):
                yield (-1) ** i, (k - 1, d, self.column_face(k, i, c))
            sign = (-1) ** k
            for j in range(d + 1 if d else 0):
                yield sign * (-1) ** j, (k, d - 1, self.simplex_face(k, d, j, c))

        return ChainComplex.from_boundary(gens, bd, name=f"total {self.name}".strip())


def tower_map(A: Tower, B: Tower, assign: Callable, CA: ChainComplex | None = None,
              CB: ChainComplex | None = None) -> ChainMap:
    """Total chain map of a levelwise face-affine map commuting with column faces.

    ``assign(k, d, c)`` returns ``(target_dim, target_cell, vertex_map)`` or ``None``.
    """
    CA = A.total_chains() if CA is None else CA
    CB = B.total_chains() if CB is None else CB
    mats = {}
    for deg in range(CA.top + 1):
        M = _zeros(CB.rank(deg), CA.rank(deg))
        idx = CB._index[deg] if deg <= CB.top else {}
        for j, (k, d, c) in enumerate(CA.gens[deg]):
            img = assign(k, d, c)
            if img is None:
                continue
            hit = face_affine_image(d, img, lambda td, tc, keep: B.span(k, td, tc, keep),
                                    _LevelIndex(idx, k, d))
            if hit is not None:
                M[idx[(k, d, hit[1])], j] += hit[0]
        mats[deg] = M
    return ChainMap(CA, CB, mats)


class _LevelIndex:
    """Membership view of total-degree generators restricted to one level and dimension."""

    def __init__(self, idx, k, d):
        self.idx, self.k, self.d = idx, k, d

    def __contains__(self, cell):
        return (self.k, self.d, cell) in self.idx


def tower_homotopy(A: Tower, B: Tower, h: Callable, CA: ChainComplex, CB: ChainComplex):
    """Total chain homotopy from a levelwise one commuting with column faces.

    ``h(k, d, c)`` returns an iterable of ``(coefficient, cell of dimension d+1)``
    in level k of ``B``; the total version carries the sign ``(-1)^k``.
    """
    mats = {}
    for deg in range(CA.top + 1):
        M = _zeros(CB.rank(deg + 1), CA.rank(deg))
        for j, (k, d, c) in enumerate(CA.gens[deg]):
            for coef, t in h(k, d, c):
                M[CB.index(deg + 1, (k, d + 1, t)), j] += (-1) ** k * coef
        mats[deg] = M
    return mats
