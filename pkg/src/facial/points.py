"""Exact points of truncated realizations of contracted facial sets.

A point of stage ``n`` is a level-n cell with barycentric coordinates
``(t_0, ..., t_n)``.  When ``t_k = 0`` the point is identified with
``(s d_k x, 0, t_0, ..., t_k omitted, ..., t_n)``; every class has a unique
representative ``(s^j y, 0, ..., 0, t_+)`` with all of ``t_+`` positive.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .core import FacialSet, Report, StructuralError


def as_fraction(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, float):
        raise TypeError("coordinates must be exact (int, Fraction or 'p/q' string)")
    return Fraction(v)


@dataclass(frozen=True)
class RealPoint:
    level: int
    cell: object
    coords: tuple

    def __post_init__(self):
        coords = tuple(as_fraction(t) for t in self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) != self.level + 1:
            raise ValueError(f"stage {self.level} needs {self.level + 1} coordinates")
        if any(t < 0 for t in coords):
            raise ValueError(f"negative coordinate in {coords}")
        if sum(coords) != 1:
            raise ValueError(f"coordinates {coords} do not sum to 1")

    def __str__(self):
        return f"[{self.cell!r}; {', '.join(str(t) for t in self.coords)}]"


class _Basepoint:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "*"


BASEPOINT = _Basepoint()


def _require_contraction(F: FacialSet):
    if not F.has_contraction:
        raise StructuralError("point calculus needs a contracted facial set")


def _check(F: FacialSet, p: RealPoint):
    if p.level > F.top:
        raise ValueError(f"stage {p.level} beyond top level {F.top}")
    if not F.has(p.level, p.cell):
        raise ValueError(f"{p.cell!r} is not a level-{p.level} cell")


def move(F: FacialSet, p: RealPoint, k: int) -> RealPoint:
    """The elementary identification at a zero coordinate ``t_k``."""
    if p.coords[k] != 0:
        raise ValueError(f"t_{k} is not zero")
    n = p.level
    y = F.contract(n, F.face(n, k, p.cell))
    return RealPoint(n, y, (Fraction(0),) + p.coords[:k] + p.coords[k + 1:])


def canonicalize(F: FacialSet, p: RealPoint) -> RealPoint:
    """Apply the move at the smallest zero index that changes the point, until stable."""
    _require_contraction(F)
    _check(F, p)
    seen = {p}
    while True:
        for k, t in enumerate(p.coords):
            if t == 0:
                q = move(F, p, k)
                if q != p:
                    break
        else:
            return p
        if q in seen:
            raise RuntimeError(f"rewriting cycles at {q}")
        seen.add(q)
        p = q


def interior_representative(F: FacialSet, p: RealPoint) -> RealPoint:
    """Closed-form normal form: the face spanned by the positive coordinates, lifted by ``s``."""
    _require_contraction(F)
    _check(F, p)
    n = p.level
    keep = tuple(j for j, t in enumerate(p.coords) if t != 0)
    y = F.span_face(n, p.cell, keep)
    lev = len(keep) - 1
    for _ in range(n - lev):
        lev += 1
        y = F.contract(lev, y)
    zeros = (Fraction(0),) * (n + 1 - len(keep))
    return RealPoint(n, y, zeros + tuple(p.coords[j] for j in keep))


def rewrite_class(F: FacialSet, p: RealPoint, limit: int = 100_000):
    """All representatives reachable by moves in either direction from ``p``.

    Backward moves invert ``move``: a point with ``t_0 = 0`` whose cell is
    ``s d_k x`` for some ``x`` can come from ``x`` with the zero moved to slot k.
    """
    n = p.level
    preimages = {}
    for x in F.cells(n):
        for k in range(n + 1):
            preimages.setdefault((F.contract(n, F.face(n, k, x)), k), []).append(x)
    seen = {p}
    pending = deque([p])
    while pending:
        q = pending.popleft()
        nbrs = [move(F, q, k) for k, t in enumerate(q.coords) if t == 0]
        if q.coords[0] == 0:
            rest = q.coords[1:]
            for k in range(n + 1):
                for x in preimages.get((q.cell, k), ()):
                    nbrs.append(RealPoint(n, x, rest[:k] + (Fraction(0),) + rest[k:]))
        for r in nbrs:
            if r not in seen:
                seen.add(r)
                pending.append(r)
                if len(seen) > limit:
                    raise RuntimeError("rewrite class exceeds limit")
    return seen


def stable_forms(F: FacialSet, p: RealPoint):
    """Every point reachable from ``p`` by forward moves at which no move changes anything."""
    seen, pending, stable = {p}, [p], set()
    while pending:
        q = pending.pop()
        succ = {move(F, q, k) for k, t in enumerate(q.coords) if t == 0} - {q}
        if not succ:
            stable.add(q)
        for r in succ - seen:
            seen.add(r)
            pending.append(r)
    return stable


def include_up(F: FacialSet, p: RealPoint) -> RealPoint:
    """Stage n-1 to stage n: ``[x, t] -> [s x, 0, t]``."""
    _require_contraction(F)
    n = p.level + 1
    if n > F.top:
        raise ValueError(f"stage {n} beyond top level {F.top}")
    return canonicalize(F, RealPoint(n, F.contract(n, p.cell), (Fraction(0),) + p.coords))


def augment(F: FacialSet, p: RealPoint):
    """``(d_0)^{n+1}`` of the cell: the image in the augmentation target."""
    _check(F, p)
    x = p.cell
    for k in range(p.level, -1, -1):
        x = F.face(k, 0, x)
    return x


def section_sigma(F: FacialSet, x, n: int) -> RealPoint:
    """``[s^{n+1} x, 0, ..., 0, 1]`` for ``x`` in the augmentation target."""
    _require_contraction(F)
    if n > F.top:
        raise ValueError(f"stage {n} beyond top level {F.top}")
    for k in range(n + 1):
        x = F.contract(k, x)
    return canonicalize(F, RealPoint(n, x, (Fraction(0),) * n + (Fraction(1),)))


def homotopy_H(F: FacialSet, p: RealPoint, u) -> RealPoint:
    """``[s x, u, (1-u) t]``: from ``include_up`` at 0 to ``section_sigma . augment`` at 1."""
    _require_contraction(F)
    u = as_fraction(u)
    if not 0 <= u <= 1:
        raise ValueError(f"homotopy parameter {u} outside [0, 1]")
    n = p.level + 1
    if n > F.top:
        raise ValueError(f"stage {n} beyond top level {F.top}")
    coords = (u,) + tuple((1 - u) * t for t in p.coords)
    return canonicalize(F, RealPoint(n, F.contract(n, p.cell), coords))


def is_basepoint(F: FacialSet, p: RealPoint) -> bool:
    return canonicalize(F, p).cell == F.basepoint(p.level)


def pointed_collapse(F: FacialSet, p: RealPoint):
    """Image in the pointed realization: a canonical point, or ``BASEPOINT``."""
    q = canonicalize(F, p)
    if q.cell == F.basepoint(q.level):
        return BASEPOINT
    return q


def pointed_augment(F: FacialSet, q):
    if q is BASEPOINT:
        return F.basepoint(-1)
    return augment(F, q)


def points_on_grid(F: FacialSet, n: int, denominators=(1, 2, 3)):
    """Every stage-n point whose coordinates have one of the given denominators."""
    from itertools import product

    out = []
    for d in denominators:
        for nums in product(range(d + 1), repeat=n + 1):
            if sum(nums) != d:
                continue
            coords = tuple(Fraction(a, d) for a in nums)
            for x in F.cells(n):
                out.append(RealPoint(n, x, coords))
    return list(dict.fromkeys(out))


def point_suite(F: FacialSet, n: int, denominators=(1, 2, 3), params=(0, Fraction(1, 2), 1)) -> Report:
    """Section, homotopy and pointed-factorization identities on every grid point up to stage ``n``."""
    _require_contraction(F)
    if n > F.top:
        raise StructuralError(f"stage {n} beyond top level {F.top}")
    rep = Report("realization points")
    fails = {}

    def note(label, ok, witness):
        fails.setdefault(label, None)
        if not ok and fails[label] is None:
            fails[label] = witness

    for m in range(n + 1):
        for x in F.cells(-1):
            note("augment . sigma = id", augment(F, section_sigma(F, x, m)) == x, (m, x))
        for p in points_on_grid(F, m, denominators):
            q = canonicalize(F, p)
            note("normal form matches the closed form", q == interior_representative(F, p), str(p))
            note("normal form is order independent", stable_forms(F, p) == {q}, str(p))
            note("augmentation is constant on classes", augment(F, q) == augment(F, p), str(p))
            note("free -> pointed -> augmentation commutes",
                 pointed_augment(F, pointed_collapse(F, p)) == augment(F, p), str(p))
            if m < n:
                note("H(-, 0) = inclusion", homotopy_H(F, p, 0) == include_up(F, p), str(p))
                note("H(-, 1) = sigma . augment",
                     homotopy_H(F, p, 1) == section_sigma(F, augment(F, p), m + 1), str(p))
                for u in params:
                    h = homotopy_H(F, p, u)
                    note("H stays over the augmentation", augment(F, h) == augment(F, p), (str(p), u))
    for label, w in fails.items():
        rep.check(label, w is None, w)
    return rep
