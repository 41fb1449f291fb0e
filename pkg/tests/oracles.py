"""Reference computations that share no code with the package.

Homology here goes through sympy's Smith normal form over the integers; the
complexes are built directly from their textbook descriptions.
"""

from __future__ import annotations

import itertools

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form


def invariant_factors(rows):
    M = Matrix(rows)
    if M.rows == 0 or M.cols == 0:
        return []
    S = smith_normal_form(M, domain=ZZ)
    return [abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0]


def homology_from_boundaries(ranks, boundaries):
    """``boundaries[k]`` is the matrix of ``C_k -> C_{k-1}`` as a list of rows."""
    facs = {k: invariant_factors(boundaries[k]) if k in boundaries else [] for k in range(len(ranks) + 1)}
    out = []
    for k, r in enumerate(ranks):
        rank_out = len(facs[k]) if k > 0 else 0
        incoming = facs.get(k + 1, [])
        out.append((r - rank_out - len(incoming), tuple(d for d in incoming if d > 1)))
    return out


def normalized_bar_homology(elements, mul, identity, top):
    """Integral group homology from the normalized bar complex, degrees ``0..top``.

    Degree ``top + 1`` is included so that ``H_top`` is correct.
    """
    nonid = [g for g in elements if g != identity]
    gens = [list(itertools.product(nonid, repeat=k)) for k in range(top + 2)]
    index = [{g: j for j, g in enumerate(gs)} for gs in gens]
    bd = {}
    for k in range(1, top + 2):
        rows = [[0] * len(gens[k]) for _ in gens[k - 1]]
        for j, g in enumerate(gens[k]):
            terms = [(1, g[1:])]
            for i in range(1, k):
                terms.append(((-1) ** i, g[: i - 1] + (mul(g[i - 1], g[i]),) + g[i + 1:]))
            terms.append(((-1) ** k, g[:-1]))
            for sign, t in terms:
                if identity in t:
                    continue
                rows[index[k - 1][t]][j] += sign
        bd[k] = rows
    return homology_from_boundaries([len(g) for g in gens], bd)[: top + 1]


def rp_homology(n):
    """``H_*(RP^n)`` from the antipodal quotient of the boundary of the cross-polytope.

    Simplices of the sphere choose a sign for each coordinate in a subset; the
    antipodal map flips every sign and preserves the vertex order, so orbit
    chains carry the induced boundary with no extra signs.
    """
    d = n + 1
    cells = []
    for k in range(n + 1):
        reps = []
        for support in itertools.combinations(range(d), k + 1):
            for signs in itertools.product((1, -1), repeat=k + 1):
                if signs[0] == 1:
                    reps.append(tuple(zip(support, signs)))
        cells.append(reps)

    def rep(s):
        if s[0][1] == 1:
            return s
        return tuple((i, -e) for i, e in s)

    index = [{c: j for j, c in enumerate(cs)} for cs in cells]
    bd = {}
    for k in range(1, n + 1):
        rows = [[0] * len(cells[k]) for _ in cells[k - 1]]
        for j, s in enumerate(cells[k]):
            for i in range(k + 1):
                rows[index[k - 1][rep(s[:i] + s[i + 1:])]][j] += (-1) ** i
        bd[k] = rows
    return homology_from_boundaries([len(c) for c in cells], bd)


def rp_homology_closed_form(n):
    out = [(1, ())]
    for k in range(1, n + 1):
        if k == n and n % 2 == 1:
            out.append((1, ()))
        elif k % 2 == 1:
            out.append((0, (2,)))
        else:
            out.append((0, ()))
    return out


def join_reduced_betti(m, copies):
    """Reduced Betti numbers of the join of ``copies`` discrete sets of size ``m``.

    The join of (c-1)-connected pieces is highly connected, and the Euler
    characteristic of the ``copies``-fold join fixes the one surviving rank.
    """
    # simplices pick a nonempty subset of factors and a point in each
    euler = sum((-1) ** (len(fs) - 1) * m ** len(fs)
                for r in range(1, copies + 1) for fs in itertools.combinations(range(copies), r))
    top = copies - 1
    reduced_top = (euler - 1) * (-1) ** top
    return [0] * top + [reduced_top]


def bipartite_fundamental_cycles(elements):
    """Fundamental cycles of the complete bipartite graph with a star spanning tree.

    Edges are ``(a, b)`` oriented from the left copy to the right copy; the
    tree uses every edge at ``a0`` and every edge at ``b0``.  The cycle of
    the non-tree edge ``(a, b)`` is ``(a, b) - (a0, b) + (a0, b0) - (a, b0)``.
    """
    a0 = b0 = elements[0]
    cycles = []
    for a in elements[1:]:
        for b in elements[1:]:
            cycles.append({(a, b): 1, (a0, b): -1, (a0, b0): 1, (a, b0): -1})
    return cycles


def hopf_image(cycle, inverse, mul, identity):
    """The edge ``(a, b)`` goes to the circle ``a^-1 b`` (nothing when trivial)."""
    image = {}
    for (a, b), c in cycle.items():
        g = mul(inverse(a), b)
        if g != identity:
            image[g] = image.get(g, 0) + c
    return {g: c for g, c in image.items() if c}
