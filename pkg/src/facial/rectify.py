"""The J/I rectification calculus over a facial set and its consequences.

A J-point of level ``k`` is ``(word, y, t)``: a word ``(i_1..i_m)`` of formal
face operators with ``i_j <= k + j``, a cell ``y`` of level ``k + m`` and
``m + 1`` barycentric coordinates.  I-points carry ``m + 2`` coordinates.
Identifications:

* drop the last operator into ``y`` when the last coordinate vanishes;
* at an inner zero with ``i_p < i_{p+1}``, rewrite the pair to ``(i_{p+1}-1, i_p)``.

For J the inner zero is ``t_p``; for I it is ``t_{p+1}``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import smith
from .bifacial import BifacialSet, rows_first_tower, validate_bifacial
from .chains import (ChainError, ChainMap, Tower, homology, identity_map, induced_map,
                     is_quasi_isomorphism, tower_homotopy, tower_map,
                     verify_chain_homotopy)
from .core import FacialMap, FacialSet, Report, StructuralError, validate
from .points import RealPoint, as_fraction, canonicalize, section_sigma
from .points import augment as row_augment

KINDS = ("J", "I")


@dataclass(frozen=True)
class JIPoint:
    kind: str
    k: int
    word: tuple
    cell: object
    coords: tuple

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be J or I, not {self.kind!r}")
        coords = tuple(as_fraction(t) for t in self.coords)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "word", tuple(self.word))
        m = len(self.word)
        want = m + 1 if self.kind == "J" else m + 2
        if len(coords) != want:
            raise ValueError(f"{self.kind}-point with word length {m} needs {want} coordinates")
        if any(t < 0 for t in coords) or sum(coords) != 1:
            raise ValueError(f"{coords} is not a point of a simplex")
        for j, i in enumerate(self.word, start=1):
            if not 0 <= i <= self.k + j:
                raise ValueError(f"operator index {i} at position {j} exceeds {self.k + j}")

    @property
    def m(self):
        return len(self.word)

    def __str__(self):
        w = ",".join(f"d{i}" for i in self.word)
        return f"{self.kind}[{w}; {self.cell!r}; {', '.join(map(str, self.coords))}]"


def JPoint(k, word, cell, coords):
    return JIPoint("J", k, word, cell, coords)


def IPoint(k, word, cell, coords):
    return JIPoint("I", k, word, cell, coords)


def _shift(kind):
    return 0 if kind == "J" else 1


def apply_word(Y: FacialSet, k, word, y):
    """``d_{i_1} ... d_{i_m} y``: the rightmost operator acts first."""
    lev = k + len(word)
    for i in reversed(word):
        y = Y.face(lev, i, y)
        lev -= 1
    return y


def _check_point(Y: FacialSet, n, p: JIPoint):
    if not 0 <= p.k <= n:
        raise ValueError(f"level {p.k} outside 0..{n}")
    if p.m > n - p.k:
        raise ValueError(f"word length {p.m} exceeds n - k = {n - p.k}")
    if not Y.has(p.k + p.m, p.cell):
        raise ValueError(f"{p.cell!r} is not a cell of level {p.k + p.m}")


def _drop_last(Y, kind, k, word, y, coords):
    m = len(word)
    return word[:-1], Y.face(k + m, word[-1], y), coords[:-1]


def canonicalize_JI(Y: FacialSet, p: JIPoint, n=None) -> JIPoint:
    """Drop trailing zeros into the cell, then sort inner pairs leftmost first."""
    if n is not None:
        _check_point(Y, n, p)
    sh = _shift(p.kind)
    word, y, coords = p.word, p.cell, p.coords
    while word and coords[-1] == 0:
        word, y, coords = _drop_last(Y, p.kind, p.k, word, y, coords)
    word = list(word)
    changed = True
    while changed:
        changed = False
        for q in range(1, len(word)):
            if coords[q + sh] == 0 and word[q - 1] < word[q]:
                word[q - 1], word[q] = word[q] - 1, word[q - 1]
                changed = True
                break
    return JIPoint(p.kind, p.k, tuple(word), y, coords)


def forward_moves(Y: FacialSet, p: JIPoint):
    """Every single forward rewrite of ``p``."""
    sh = _shift(p.kind)
    out = []
    if p.word and p.coords[-1] == 0:
        w, y, c = _drop_last(Y, p.kind, p.k, p.word, p.cell, p.coords)
        out.append(JIPoint(p.kind, p.k, w, y, c))
    for q in range(1, p.m):
        if p.coords[q + sh] == 0 and p.word[q - 1] < p.word[q]:
            w = list(p.word)
            w[q - 1], w[q] = w[q] - 1, w[q - 1]
            out.append(JIPoint(p.kind, p.k, tuple(w), p.cell, p.coords))
    return out


def backward_moves(Y: FacialSet, n, p: JIPoint):
    sh = _shift(p.kind)
    out = []
    if p.m < n - p.k:
        lev = p.k + p.m + 1
        if lev <= Y.top:
            for i in range(lev + 1):
                for x in Y.cells(lev):
                    if Y.face(lev, i, x) == p.cell:
                        out.append(JIPoint(p.kind, p.k, p.word + (i,), x, p.coords + (Fraction(0),)))
    for q in range(1, p.m):
        a, b = p.word[q - 1], p.word[q]
        if p.coords[q + sh] == 0 and a >= b and a + 1 <= p.k + q + 1:
            w = list(p.word)
            w[q - 1], w[q] = b, a + 1
            out.append(JIPoint(p.kind, p.k, tuple(w), p.cell, p.coords))
    return out


def irreducible_forms(Y: FacialSet, p: JIPoint):
    """Irreducible points reachable from ``p`` along every order of forward rewrites."""
    seen, pending, irr = {p}, [p], set()
    while pending:
        q = pending.pop()
        nxt = forward_moves(Y, q)
        if not nxt:
            irr.add(q)
        for r in nxt:
            if r not in seen:
                seen.add(r)
                pending.append(r)
    return irr


def equivalence_class(Y: FacialSet, n, p: JIPoint, limit=20_000):
    seen, pending = {p}, deque([p])
    while pending:
        q = pending.popleft()
        for r in forward_moves(Y, q) + backward_moves(Y, n, q):
            if r not in seen:
                seen.add(r)
                pending.append(r)
                if len(seen) > limit:
                    raise RuntimeError("equivalence class exceeds limit")
    return seen


def JI_face(Y: FacialSet, p: JIPoint, i: int) -> JIPoint:
    """``J d_i`` prepends ``d_i`` with a zero in front; ``I d_i`` puts the zero in slot 1."""
    if not 0 <= i <= p.k or p.k == 0:
        raise ValueError(f"face index {i} out of range on level {p.k}")
    z = (Fraction(0),)
    if p.kind == "J":
        coords = z + p.coords
    else:
        coords = p.coords[:1] + z + p.coords[1:]
    return canonicalize_JI(Y, JIPoint(p.kind, p.k - 1, (i,) + p.word, p.cell, coords))


# -- morphisms --------------------------------------------------------------------

def eta(Y, k, y):
    return canonicalize_JI(Y, IPoint(k, (), y, (1, 0)))


def zeta(Y, p: JIPoint):
    if p.kind != "J":
        raise ValueError("zeta is defined on J-points")
    return canonicalize_JI(Y, IPoint(p.k, p.word, p.cell, (Fraction(0),) + p.coords))


def pi(Y, p: JIPoint):
    if p.kind != "I":
        raise ValueError("pi is defined on I-points")
    return apply_word(Y, p.k, p.word, p.cell)


def pi_bar(Y, p: JIPoint):
    if p.kind != "J":
        raise ValueError("pi_bar is defined on J-points")
    return pi(Y, zeta(Y, p))


def phi(Y, k, y):
    return JPoint(k, (), y, (1,))


def eval_morphism(Y: FacialSet, name, p, k=None):
    """Evaluate ``eta``, ``zeta``, ``pi``, ``pi_bar`` or ``phi``.

    Points of the truncation itself are passed as ``(k, cell)`` pairs.
    """
    if name in ("eta", "phi"):
        if isinstance(p, JIPoint):
            raise ValueError(f"{name} takes a cell of the facial set")
        k, y = p
        return eta(Y, k, y) if name == "eta" else phi(Y, k, y)
    if not isinstance(p, JIPoint):
        raise ValueError(f"{name} takes a J- or I-point")
    if name == "zeta":
        return zeta(Y, p)
    if name == "pi":
        return (p.k, pi(Y, p))
    if name == "pi_bar":
        return (p.k, pi_bar(Y, p))
    raise ValueError(f"unknown morphism {name!r}")


def eval_homotopy(Y: FacialSet, p: JIPoint, u):
    """``H`` on I-points and ``H-bar`` on J-points: slide toward vertex 0."""
    u = as_fraction(u)
    if not 0 <= u <= 1:
        raise ValueError(f"homotopy parameter {u} outside [0, 1]")
    t = p.coords
    coords = (u + (1 - u) * t[0],) + tuple((1 - u) * x for x in t[1:])
    return canonicalize_JI(Y, JIPoint(p.kind, p.k, p.word, p.cell, coords))


# -- cellular towers ----------------------------------------------------------------

def _pattern(S, length):
    return tuple(Fraction(1) if j in S else Fraction(0) for j in range(length))


def canonical_cell(Y, kind, k, word, y, S):
    """Canonical ``(word, y, support)`` of the open cell containing the pattern."""
    length = len(word) + (1 if kind == "J" else 2)
    coords = _pattern(S, length)
    total = sum(coords)
    q = canonicalize_JI(Y, JIPoint(kind, k, word, y, tuple(c / total for c in coords)))
    return (q.word, q.cell, tuple(j for j, c in enumerate(q.coords) if c))


def ji_tower(Y: FacialSet, n, kind) -> Tower:
    """Level k lists canonical cells ``(word, y, support)`` by dimension ``|support| - 1``."""
    if n > Y.top:
        raise StructuralError(f"facial set stops at level {Y.top}, need {n}")
    extra = 1 if kind == "J" else 2
    levels = []
    for k in range(n + 1):
        cells = set()
        for m in range(n - k + 1):
            words = itertools.product(*[range(k + j + 1) for j in range(1, m + 1)])
            for word in words:
                for y in Y.cells(k + m):
                    for r in range(1, m + extra + 1):
                        for S in itertools.combinations(range(m + extra), r):
                            cells.add(canonical_cell(Y, kind, k, word, y, S))
        by_dim = [[] for _ in range(n - k + extra)]
        for c in sorted(cells, key=repr):
            by_dim[len(c[2]) - 1].append(c)
        while len(by_dim) > 1 and not by_dim[-1]:
            by_dim.pop()
        levels.append(by_dim)

    def simplex_face(k, d, j, c):
        word, y, S = c
        return canonical_cell(Y, kind, k, word, y, S[:j] + S[j + 1:])

    def column_face(k, d, i, c):
        word, y, S = c
        if kind == "J":
            S2 = tuple(s + 1 for s in S)
        else:
            S2 = tuple(s if s == 0 else s + 1 for s in S)
        return canonical_cell(Y, kind, k - 1, (i,) + word, y, S2)

    return Tower(levels, simplex_face, column_face, name=f"{kind}^{n}")


def cell_of_point(p: JIPoint):
    return (p.word, p.cell, tuple(j for j, c in enumerate(p.coords) if c))


@dataclass
class JIComplexes:
    """Towers and total chains of ``T^n``, ``J^n``, ``I^n`` with the comparison maps."""

    Y: FacialSet
    n: int
    T: Tower
    J: Tower
    I: Tower
    CT: object
    CJ: object
    CI: object
    eta: ChainMap
    zeta: ChainMap
    pi: ChainMap
    pi_bar: ChainMap
    homotopy: dict


def ji_complexes(Y: FacialSet, n) -> JIComplexes:
    T = Tower.discrete(Y, n, name=f"T^{n}")
    J, I = ji_tower(Y, n, "J"), ji_tower(Y, n, "I")
    CT, CJ, CI = T.total_chains(), J.total_chains(), I.total_chains()

    def eta_cell(k, d, y):
        return 0, canonical_cell(Y, "I", k, (), y, (0,)), (0,)

    def zeta_cell(k, d, c):
        word, y, S = c
        return d, canonical_cell(Y, "I", k, word, y, tuple(s + 1 for s in S)), tuple(range(d + 1))

    def pi_cell(k, d, c):
        word, y, S = c
        return 0, apply_word(Y, k, word, y), (0,) * (d + 1)

    f_eta = tower_map(T, I, eta_cell, CT, CI)
    f_zeta = tower_map(J, I, zeta_cell, CJ, CI)
    f_pi = tower_map(I, T, pi_cell, CI, CT)
    f_pibar = tower_map(J, T, pi_cell, CJ, CT)

    def cone_to_zero(k, d, c):
        word, y, S = c
        if 0 in S:
            return []
        return [(1, canonical_cell(Y, "I", k, word, y, (0,) + S))]

    h = tower_homotopy(I, I, cone_to_zero, CI, CI)
    return JIComplexes(Y, n, T, J, I, CT, CJ, CI, f_eta, f_zeta, f_pi, f_pibar, h)


# -- the rectified section over a bifacial set ---------------------------------------

def _psi_cell(Z: BifacialSet, n, k, word, z):
    """``s_k^{n+1-m} d_{i_1} s_{k+1} ... d_{i_m} s_{k+m} z`` in ``Z_k^n``."""
    m = len(word)
    c, row = z, -1
    for j in range(m, 0, -1):
        row += 1
        c = Z.contract(k + j, row, c)
        c = Z.col_face(k + j, row, word[j - 1], c)
    for _ in range(n + 1 - m):
        row += 1
        c = Z.contract(k, row, c)
    return c


def psi_bar(Z: BifacialSet, n, p: JIPoint, rows=None) -> RealPoint:
    """The point ``[psi-cell, 0, ..., 0, t_0, ..., t_m]`` of row ``p.k`` at stage ``n``."""
    if not Z.has_contraction:
        raise StructuralError("psi_bar needs row contractions")
    if p.kind != "J":
        raise ValueError("psi_bar is defined on J-points")
    if n > min(Z.K, Z.P):
        raise StructuralError(f"grid {Z.K}x{Z.P} too small for stage {n}")
    c = _psi_cell(Z, n, p.k, p.word, p.cell)
    row = rows[p.k] if rows else Z.row(p.k, n)
    coords = (Fraction(0),) * (n - p.m) + p.coords
    return canonicalize(row, RealPoint(n, c, coords))


def psi(Z: BifacialSet, n, k, z, rows=None) -> RealPoint:
    row = rows[k] if rows else Z.row(k, n)
    return section_sigma(row, z, n)


def column_face_point(Z: BifacialSet, n, k, q: RealPoint, i, rows=None) -> RealPoint:
    """``del_i [z, t] = [del_i z, t]`` from row k to row k-1."""
    row = rows[k - 1] if rows else Z.row(k - 1, n)
    return canonicalize(row, RealPoint(q.level, Z.col_face(k, q.level, i, q.cell), q.coords))


def l_tower(Z: BifacialSet, n) -> Tower:
    """Level k is row k realized up to ``n`` (quotient model cells = row cells)."""
    return rows_first_tower(Z, n, n)


def psi_bar_chain_map(Z: BifacialSet, n, J: Tower, L: Tower, CJ, CL) -> ChainMap:
    def assign(k, d, c):
        word, z, S = c
        m = len(word)
        return n, _psi_cell(Z, n, k, word, z), tuple(n - m + j for j in S)

    return tower_map(J, L, assign, CJ, CL)


def epsilon_chain_map(Z: BifacialSet, n, L: Tower, T: Tower, CL, CT) -> ChainMap:
    def assign(k, q, z):
        x = z
        for p in range(q, -1, -1):
            x = Z.row_face(k, p, 0, x)
        return 0, x, (0,) * (q + 1)

    return tower_map(L, T, assign, CL, CT)


def raw_points(Y: FacialSet, n, k, kind="J", denominators=(1, 2, 3)):
    """Every (not necessarily canonical) point of level k over the given denominators."""
    extra = 1 if kind == "J" else 2
    out = set()
    for m in range(n - k + 1):
        for word in itertools.product(*[range(k + j + 1) for j in range(1, m + 1)]):
            for y in Y.cells(k + m):
                for d in denominators:
                    for nums in itertools.product(range(d + 1), repeat=m + extra):
                        if sum(nums) == d:
                            out.add(JIPoint(kind, k, word, y, tuple(Fraction(a, d) for a in nums)))
    return sorted(out, key=repr)


def j_points(Y: FacialSet, n, k, denominators=(1, 2, 3)):
    """Canonical J-points of level k with coordinates over small denominators."""
    return sorted({canonicalize_JI(Y, p) for p in raw_points(Y, n, k, "J", denominators)}, key=repr)


def appendix_suite(Y: FacialSet, n, denominators=(1, 2), params=(0, Fraction(1, 3), 1)) -> Report:
    """Point-level identities of the J/I calculus on every small-denominator point."""
    rep = Report("appendix identities")
    if n > Y.top:
        raise StructuralError(f"facial set stops at level {Y.top}, need {n}")
    fails = {}

    def note(label, ok, witness):
        fails.setdefault(label, None)
        if not ok and fails[label] is None:
            fails[label] = witness

    phi_violation = None
    for k in range(n + 1):
        for y in Y.cells(k):
            note("pi eta = id", pi(Y, eta(Y, k, y)) == y, (k, y))
            note("pi_bar phi = id", pi_bar(Y, phi(Y, k, y)) == y, (k, y))
            for i in range(k + 1 if k else 0):
                note("eta is facial", JI_face(Y, eta(Y, k, y), i) == eta(Y, k - 1, Y.face(k, i, y)),
                     (k, y, i))
                if phi_violation is None and JI_face(Y, phi(Y, k, y), i) != phi(Y, k - 1, Y.face(k, i, y)):
                    phi_violation = (k, y, i)
        for kind in KINDS:
            for raw in raw_points(Y, n, k, kind, denominators):
                p = canonicalize_JI(Y, raw)
                note("normal form is idempotent", canonicalize_JI(Y, p) == p, str(raw))
                note("rewrite orders agree", irreducible_forms(Y, raw) == {p}, str(raw))
                if raw != p:
                    continue
                for i in range(k + 1 if k else 0):
                    q = JI_face(Y, p, i)
                    if kind == "J":
                        note("zeta is facial", zeta(Y, q) == JI_face(Y, zeta(Y, p), i), (str(p), i))
                    else:
                        note("pi is facial", pi(Y, q) == Y.face(k, i, pi(Y, p)), (str(p), i))
                    for j in range(i + 1, k + 1 if k >= 2 else 0):
                        lhs = JI_face(Y, JI_face(Y, p, j), i)
                        rhs = JI_face(Y, JI_face(Y, p, i), j - 1)
                        note(f"{kind}d_i {kind}d_j = {kind}d_(j-1) {kind}d_i", lhs == rhs,
                             (str(p), i, j, str(lhs), str(rhs)))
                name = "H" if kind == "I" else "H-bar"
                note(f"{name}(-, 0) = id", eval_homotopy(Y, p, 0) == p, str(p))
                end = eta(Y, k, pi(Y, p)) if kind == "I" else phi(Y, k, pi_bar(Y, p))
                note(f"{name}(-, 1) = {'eta pi' if kind == 'I' else 'phi pi_bar'}",
                     eval_homotopy(Y, p, 1) == end, str(p))
                if p.cell == Y.basepoint(p.k + p.m):
                    for u in params:
                        h = eval_homotopy(Y, p, u)
                        note(f"{name} fixes the basepoint", h.cell == Y.basepoint(h.k + h.m), (str(p), u))
    for label, w in fails.items():
        rep.check(label, w is None, w)
    if n >= 1 and any(Y.size(k) for k in range(1, n + 1)):
        rep.check("phi fails to commute with faces somewhere", phi_violation is not None)
    rep.details["phi_violation"] = phi_violation
    return rep


def libman_check(Z: BifacialSet, n, denominators=(1, 2)) -> Report:
    """Rectified section of the augmentation of the double realization, checked exactly."""
    rep = Report("libman")
    v = validate_bifacial(Z)
    if not rep.check("bifacial identities and row contractions", v.ok,
                     v.violations[0].describe() if v.violations else None):
        return rep
    if not Z.has_contraction:
        rep.check("row contractions present", False, "no contraction")
        return rep
    if n > min(Z.K, Z.P):
        raise StructuralError(f"grid {Z.K}x{Z.P} too small for stage {n}")
    Y = Z.column(-1, n)
    rows = [Z.row(k, n) for k in range(n + 1)]

    # pointwise identities
    bad = None
    for k in range(n + 1):
        for z in Y.cells(k):
            if psi_bar(Z, n, phi(Y, k, z), rows) != psi(Z, n, k, z, rows):
                bad = bad or ("psi_bar phi != psi", k, z)
        for p in j_points(Y, n, k, denominators):
            q = psi_bar(Z, n, p, rows)
            if row_augment(rows[k], q) != pi_bar(Y, p):
                bad = bad or ("eps psi_bar != pi_bar", str(p))
            for r in equivalence_class(Y, n, p):
                if psi_bar(Z, n, r, rows) != q:
                    bad = bad or ("psi_bar depends on representative", str(p), str(r))
            if k >= 1:
                for i in range(k + 1):
                    lhs = column_face_point(Z, n, k, q, i, rows)
                    rhs = psi_bar(Z, n, JI_face(Y, p, i), rows)
                    if lhs != rhs:
                        bad = bad or ("del psi_bar != psi_bar J-del", str(p), i, str(lhs), str(rhs))
    rep.check("pointwise: psi_bar phi = psi, eps psi_bar = pi_bar, faces commute", bad is None, bad)

    # chain level
    jc = ji_complexes(Y, n)
    L = l_tower(Z, n)
    CL = L.total_chains()
    try:
        f_psi = psi_bar_chain_map(Z, n, jc.J, L, jc.CJ, CL)
    except ChainError as exc:
        rep.check("psi_bar is a chain map", False, str(exc))
        return rep
    rep.check("psi_bar is a chain map", True)
    f_eps = epsilon_chain_map(Z, n, L, jc.T, CL, jc.CT)
    composite = f_eps.compose(f_psi)
    rep.check("eps psi_bar = pi_bar on chains", composite == jc.pi_bar)
    for name in ("eta", "zeta", "pi", "pi_bar"):
        rep.check(f"{name} is a homology isomorphism", is_quasi_isomorphism(getattr(jc, name)))
    HT = homology(jc.CT)
    rep.details["homology_base"] = HT
    rep.details["homology_double"] = homology(CL)
    ok = True
    for deg in range(jc.CT.top + 1):
        A, At = induced_map(jc.pi_bar, deg)
        B, Bt = induced_map(composite, deg)
        if A.shape[0] != A.shape[1] or abs(smith.determinant(A)) != 1:
            ok = False
        if not np.array_equal(A, B) or At != Bt:
            ok = False
    rep.check("(eps psi_bar)_* (pi_bar_*)^-1 = id on homology", ok)
    return rep


# -- the two-row lemma ----------------------------------------------------------------

def petitlibman_check(A: FacialSet, B: FacialSet, C: FacialSet, alpha: FacialMap,
                      beta: FacialMap) -> Report:
    """Exact checks behind the homotopy section for two contracted 1-truncated rows.

    ``alpha: B -> A`` and ``beta: B -> C`` are facial maps including level -1.
    Both chains of equalities end in the same 1-cell with coordinates (0, 1)
    and (1, 0), and collapse to the basepoint over the basepoint.
    """
    rep = Report("petitlibman")
    for name, F in (("A", A), ("B", B), ("C", C)):
        v = validate(F, "all")
        rep.check(f"row {name} valid with contraction", v.ok and F.has_contraction and F.top >= 1,
                  v.violations[0].describe() if v.violations else None)
    for name, f in (("alpha", alpha), ("beta", beta)):
        v = validate(f, "map")
        rep.check(f"{name} is facial", v.ok and f.minus_one is not None,
                  v.violations[0].describe() if v.violations else "level -1 missing")
    if not rep.ok:
        return rep
    readings = {}
    for name, T, f in (("alpha", A, alpha), ("beta", C, beta)):
        for b in B.cells(-1):
            sb = B.contract(0, b)
            ssb = B.contract(1, sb)
            # first chain: ||f|| g(b)
            x1 = f(1, ssb)
            step = T.contract(1, T.face(1, 0, x1))
            rep.check(f"{name}: [f1 s s b,0,1] = [s d0 f1 s s b,0,1]",
                      canonicalize(T, RealPoint(1, x1, (0, 1))) == canonicalize(T, RealPoint(1, step, (0, 1))), b)
            rep.check(f"{name}: d0 f1 = f0 d0", T.face(1, 0, x1) == f(0, B.face(1, 0, ssb)), b)
            rep.check(f"{name}: d0 s = id", B.face(1, 0, ssb) == sb, b)
            cell = T.contract(1, f(0, sb))
            end1 = canonicalize(T, RealPoint(1, cell, (0, 1)))
            rep.check(f"{name}: ||f|| g(b) = [s f0 s b, 0, 1]",
                      canonicalize(T, RealPoint(1, x1, (0, 1))) == end1, b)
            # second chain, level -1 reading
            fb = f(-1, b)
            rep.check(f"{name}: f_-1 b = d0 f0 s b", fb == T.augment(f(0, sb)), b)
            y = f(0, sb)
            rep.check(f"{name}: s d0 = d1 s on level 0",
                      T.contract(0, T.augment(y)) == T.face(1, 1, T.contract(1, y)), b)
            end2 = canonicalize(T, RealPoint(1, T.contract(1, T.contract(0, fb)), (0, 1)))
            rep.check(f"{name}: f_-1 reading ends at [s f0 s b, 1, 0]",
                      end2 == canonicalize(T, RealPoint(1, cell, (1, 0))), b)
            rep.check(f"{name}: both endpoints in the cell s f0 s b",
                      RealPoint(1, cell, (0, 1)).cell == RealPoint(1, cell, (1, 0)).cell, b)
            if b == B.basepoint(-1):
                rep.check(f"{name}: path collapses over the basepoint", cell == T.basepoint(1), b)
        # the level-1 reading applies f_1 to an element of B_{-1}
        names_match = set(B.cells(-1)) <= set(B.cells(1))
        readings[name] = "level -1 reading verified; level 1 reading " + (
            "evaluable (names coincide)" if names_match else
            "ill-typed: f_1 is defined on B_1, not on B_-1")
    rep.details["readings"] = readings
    return rep
