"""Finite monoids, their bar facial sets, Milnor stages, joins and the Hopf map."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .chains import ChainComplex, ChainMap
from .core import FacialSet, StructuralError


class FiniteMonoid:
    """Multiplication table on a finite set, with identity ``identity``."""

    def __init__(self, elements, identity, table, name=""):
        self.elements = tuple(elements)
        self.identity = identity
        self.name = name or f"monoid{len(self.elements)}"
        self._pos = {a: i for i, a in enumerate(self.elements)}
        if len(self._pos) != len(self.elements):
            raise StructuralError("duplicate monoid element")
        if identity not in self._pos:
            raise StructuralError(f"identity {identity!r} is not an element")
        n = len(self.elements)
        if isinstance(table, dict):
            rows = [[table[(a, b)] for b in self.elements] for a in self.elements]
        else:
            rows = [list(r) for r in table]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise StructuralError(f"table must be {n}x{n}")
        self._mul = {}
        for a, r in zip(self.elements, rows):
            for b, c in zip(self.elements, r):
                if c not in self._pos:
                    raise StructuralError(f"product {a!r}*{b!r} = {c!r} is not an element")
                self._mul[(a, b)] = c

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FiniteMonoid({self.name}, order {len(self)})"

    def mul(self, a, b):
        return self._mul[(a, b)]

    def prod(self, seq):
        out = self.identity
        for a in seq:
            out = self.mul(out, a)
        return out

    def table(self):
        return [[self.mul(a, b) for b in self.elements] for a in self.elements]

    def violations(self):
        bad = []
        e = self.identity
        for a in self.elements:
            if self.mul(e, a) != a or self.mul(a, e) != a:
                bad.append(("identity", a))
        for a, b, c in itertools.product(self.elements, repeat=3):
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                bad.append(("associativity", (a, b, c)))
        return bad

    def validate(self):
        bad = self.violations()
        if bad:
            raise StructuralError(f"not a monoid: {bad[0][0]} fails at {bad[0][1]!r}")
        return self

    def inverse(self, a):
        for b in self.elements:
            if self.mul(a, b) == self.identity and self.mul(b, a) == self.identity:
                return b
        return None

    @property
    def is_group(self):
        return all(self.inverse(a) is not None for a in self.elements)

    # named instances -------------------------------------------------------
    @classmethod
    def cyclic(cls, n):
        els = ["e"] + [f"g{j}" for j in range(1, n)]
        return cls(els, "e", [[els[(i + j) % n] for j in range(n)] for i in range(n)],
                   name="trivial" if n == 1 else f"z{n}")

    @classmethod
    def symmetric3(cls):
        perms = list(itertools.permutations(range(3)))
        names = {p: "e" if p == (0, 1, 2) else "".join(map(str, p)) for p in perms}

        def comp(p, q):  # p after q
            return tuple(p[q[i]] for i in range(3))

        return cls([names[p] for p in perms], "e",
                   [[names[comp(p, q)] for q in perms] for p in perms], name="s3")

    @classmethod
    def and_monoid(cls):
        """``{1, 0}`` under multiplication: a monoid that is not a group."""
        return cls(["1", "0"], "1", [["1", "0"], ["0", "0"]], name="and")

    @classmethod
    def named(cls, name):
        name = name.lower()
        if name in ("trivial", "z1"):
            return cls.cyclic(1)
        if name.startswith("z") and name[1:].isdigit():
            return cls.cyclic(int(name[1:]))
        if name == "s3":
            return cls.symmetric3()
        if name == "and":
            return cls.and_monoid()
        raise StructuralError(f"unknown monoid {name!r}")


def bar_facial(M: FiniteMonoid, variant="G", depth=3) -> FacialSet:
    """The bar facial set (``G``) or its contracted free version (``P``) up to ``depth``.

    ``G``: level n is ``M^n``; ``d_0`` drops the first entry, ``d_n`` the last,
    and ``d_i`` multiplies entries ``i`` and ``i+1``.  ``P``: level n is
    ``M^{n+1}``; ``d_i`` multiplies entries ``i`` and ``i+1`` for ``i < n`` and
    ``d_n`` drops the last; ``s`` prepends the identity and the augmentation
    goes to a point.
    """
    M.validate()
    e = M.identity
    if variant == "G":
        levels = [list(itertools.product(M.elements, repeat=n)) for n in range(depth + 1)]

        def face(n, i, a):
            if i == 0:
                return a[1:]
            if i == n:
                return a[:-1]
            return a[: i - 1] + (M.mul(a[i - 1], a[i]),) + a[i + 1:]

        return FacialSet.from_functions(levels, [(e,) * n for n in range(depth + 1)], face)
    if variant == "P":
        levels = [list(itertools.product(M.elements, repeat=n + 1)) for n in range(depth + 1)]

        def face(n, i, a):
            if i == n:
                return a[:-1]
            return a[:i] + (M.mul(a[i], a[i + 1]),) + a[i + 2:]

        return FacialSet.from_functions(
            levels, [(e,) * (n + 1) for n in range(depth + 1)], face,
            aug_cells=["pt"], aug_basepoint="pt", augment=lambda a: "pt",
            contract=lambda n, a: (e,) if n == 0 else (e,) + a)
    raise ValueError(f"unknown bar variant {variant!r}")


# -- CW complexes -------------------------------------------------------------------

@dataclass
class CWComplex:
    """Cells by dimension with integer boundary data and an optional cell action."""

    cells: list
    boundary: dict            # cell -> list of (coefficient, cell)
    action: Callable | None = None   # (group element, cell) -> cell
    name: str = ""

    def chains(self) -> ChainComplex:
        return ChainComplex.from_boundary(self.cells, lambda k, c: self.boundary.get(c, ()),
                                          name=self.name)

    def counts(self):
        return [len(cs) for cs in self.cells]


def milnor_cell_counts(order, n):
    """Total cell count of ``E_0, ..., E_n`` for a group of the given order."""
    c = [order]
    for _ in range(n):
        c.append(c[-1] + order * (1 + c[-1]))
    return c


def milnor_stage(M: FiniteMonoid, n, budget=200_000):
    """``(E_n, B_n)``: iterated equivariant cones on ``M`` and the orbit complex.

    ``E_{k+1} = E_k`` with, for each ``h`` in ``M``, an apex ``("apex", k, h)``
    and a cone cell ``("cone", k, h, c)`` on every cell ``c`` of ``E_k``, whose
    base is glued to ``h . c``.
    """
    M.validate()
    if not M.is_group:
        raise StructuralError(f"{M.name} is not a group; the orbit complex needs a free action")
    projected = milnor_cell_counts(len(M), n)[-1]
    if projected > budget:
        raise StructuralError(f"E_{n} would have {projected} cells, over the budget of {budget}")
    e = M.identity
    cells = [[("pt", g) for g in M.elements]]
    bd = {}

    def act(g, c):
        if c[0] == "pt":
            return ("pt", M.mul(g, c[1]))
        if c[0] == "apex":
            return ("apex", c[1], M.mul(g, c[2]))
        return ("cone", c[1], M.mul(g, c[2]), c[3])

    def cone_boundary(k, h, c, dim):
        out = [(1, act(h, c))]
        if dim == 0:
            out.append((-1, ("apex", k, h)))
        else:
            out.extend((-coef, ("cone", k, h, t)) for coef, t in bd.get(c, ()))
        return out

    for k in range(n):
        old = [list(cs) for cs in cells]
        cells.append([])
        for h in M.elements:
            cells[0].append(("apex", k, h))
        for dim, cs in enumerate(old):
            for c in cs:
                for h in M.elements:
                    cell = ("cone", k, h, c)
                    cells[dim + 1].append(cell)
                    bd[cell] = cone_boundary(k, h, c, dim)
    while cells and not cells[-1]:
        cells.pop()
    E = CWComplex(cells, bd, act, name=f"E_{n}({M.name})")
    return E, orbit_complex(E, M)


def orbit_complex(E: CWComplex, M: FiniteMonoid) -> CWComplex:
    """Cells are orbits (named by their representative with identity label)."""
    e = M.identity

    def rep(c):
        if c[0] == "pt":
            return ("pt", e)
        return c[:2] + (e,) + c[3:]

    cells, bd = [], {}
    for dim, cs in enumerate(E.cells):
        seen = []
        for c in cs:
            orbit = {E.action(g, c) for g in M.elements}
            if len(orbit) != len(M):
                raise StructuralError(f"action is not free on {c!r}")
            r = rep(c)
            if r not in orbit:
                raise StructuralError(f"orbit of {c!r} has no identity-labelled cell")
            image = {}
            for coef, t in E.boundary.get(c, ()):
                image[rep(t)] = image.get(rep(t), 0) + coef
            image = {t: v for t, v in image.items() if v}
            if r in bd:
                if bd[r] != image:
                    raise StructuralError(f"orbit boundary not well defined at {c!r}")
            else:
                bd[r] = image
                seen.append(r)
        cells.append(seen)
    return CWComplex(cells, {c: [(v, t) for t, v in b.items()] for c, b in bd.items()},
                     name=E.name.replace("E_", "B_"))


# -- abstract simplicial complexes --------------------------------------------------

class SimplicialComplex:
    """Closed family of simplices, each a sorted tuple of comparable vertices."""

    def __init__(self, simplices):
        faces = set()
        for s in simplices:
            s = tuple(sorted(s))
            for r in range(1, len(s) + 1):
                faces.update(itertools.combinations(s, r))
        self.simplices = faces

    @property
    def vertices(self):
        return sorted({v for s in self.simplices for v in s})

    def by_dim(self):
        top = max((len(s) for s in self.simplices), default=0)
        out = [[] for _ in range(top)]
        for s in sorted(self.simplices):
            out[len(s) - 1].append(s)
        return out

    def chains(self) -> ChainComplex:
        return ChainComplex.from_boundary(
            self.by_dim() or [[]],
            lambda k, s: (((-1) ** i, s[:i] + s[i + 1:]) for i in range(len(s))))

    @classmethod
    def discrete(cls, points):
        return cls([(p,) for p in points])


def simplicial_join(A: SimplicialComplex, B: SimplicialComplex) -> SimplicialComplex:
    """Simplices ``a u b`` with vertices tagged ``(0, .)`` and ``(1, .)``."""
    sa = [()] + [tuple((0, v) for v in s) for s in A.simplices]
    sb = [()] + [tuple((1, v) for v in s) for s in B.simplices]
    return SimplicialComplex([a + b for a in sa for b in sb if a + b])


def join_power(points, copies) -> SimplicialComplex:
    """The ``copies``-fold join of a discrete set (vertices ``(factor, point)``)."""
    pts = list(points)
    simplices = []
    for choice in itertools.product([None] + pts, repeat=copies):
        s = tuple((j, p) for j, p in enumerate(choice) if p is not None)
        if s:
            simplices.append(s)
    return SimplicialComplex(simplices)


def wedge_of_circles(M: FiniteMonoid) -> ChainComplex:
    """The reduced suspension of discrete ``M``: a circle ``[g]`` per non-identity ``g``."""
    return ChainComplex([["*"], [("S", g) for g in M.elements if g != M.identity]], {})


def hopf_chain_map(M: FiniteMonoid):
    """Chain map from the join ``M * M`` to the suspension: edge ``(a, b)`` goes to ``[a^-1 b]``."""
    M.validate()
    if not M.is_group:
        raise StructuralError(f"{M.name} is not a group")
    J = simplicial_join(SimplicialComplex.discrete(M.elements),
                        SimplicialComplex.discrete(M.elements))
    src = J.chains()
    tgt = wedge_of_circles(M)
    mats = {0: np.ones((1, src.rank(0)), dtype=np.int64)}
    M1 = np.zeros((tgt.rank(1), src.rank(1)), dtype=np.int64)
    for j, edge in enumerate(src.gens[1]):
        (_, a), (_, b) = edge
        g = M.mul(M.inverse(a), b)
        if g != M.identity:
            M1[tgt.index(1, ("S", g)), j] = 1
    mats[1] = M1
    return ChainMap(src, tgt, mats)
