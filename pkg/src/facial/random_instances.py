"""Seeded generators of small random facial sets for property tests."""

from __future__ import annotations

import random

from .core import FacialSet


def _compatible_faces(rng: random.Random, prev_cells, face, k):
    """A random tuple (y_0..y_k) of level k-1 cells with d_i y_j = d_{j-1} y_i."""
    chosen = []

    def extend(j):
        if j > k:
            return True
        cands = list(prev_cells)
        rng.shuffle(cands)
        for y in cands:
            if k >= 2 and any(face(k - 1, i, y) != face(k - 1, j - 1, chosen[i]) for i in range(j)):
                continue
            chosen.append(y)
            if extend(j + 1):
                return True
            chosen.pop()
        return False

    if not extend(0):
        raise RuntimeError("no compatible boundary")
    return tuple(chosen)


def random_facial_set(rng: random.Random, sizes, *, augmented=False, aug_size=None,
                      prefix="c") -> FacialSet:
    """Random facial set with ``sizes[k]`` cells on level k (basepoint included).

    Faces of each new cell are drawn uniformly among compatible boundaries; the
    basepoint always has the all-basepoint boundary.  With ``augmented`` the
    augmentation is constant on connected components and pointed.
    """
    levels, bases, faces = [], [], {}
    for k, size in enumerate(sizes):
        base = f"{prefix}{k}*"
        cells = [base] + [f"{prefix}{k}.{j}" for j in range(1, max(size, 1))]
        levels.append(cells)
        bases.append(base)
        if k == 0:
            continue
        tables = {i: {base: bases[k - 1]} for i in range(k + 1)}

        def face(lev, i, c):
            return faces[(lev, i)][c]

        for c in cells[1:]:
            bd = _compatible_faces(rng, levels[k - 1], face, k)
            for i, y in enumerate(bd):
                tables[i][c] = y
        for i in range(k + 1):
            faces[(k, i)] = tables[i]
    kw = {}
    if augmented:
        comp = _components(levels, faces)
        if aug_size is None:
            aug_size = rng.randint(1, 3)
        target = ["e*"] + [f"e{j}" for j in range(1, aug_size)]
        label = {}
        for c in levels[0]:
            r = comp[c]
            if r not in label:
                label[r] = target[0] if r == comp[bases[0]] else rng.choice(target)
        kw = dict(aug_cells=target, aug_basepoint="e*",
                  augmentation={c: label[comp[c]] for c in levels[0]})
    return FacialSet(levels, bases, faces, **kw)


def _components(levels, faces):
    parent = {c: c for c in levels[0]}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    if len(levels) > 1:
        for c in levels[1]:
            a, b = find(faces[(1, 0)][c]), find(faces[(1, 1)][c])
            if a != b:
                parent[a] = b
    return {c: find(c) for c in levels[0]}


def free_contraction(Y: FacialSet) -> FacialSet:
    """Adjoin formal cones: ``X_n = Y_n + C X_{n-1}`` with ``s = C``.

    ``d_0 C z = z`` and ``d_i C z = C d_{i-1} z``; the new basepoints are
    ``C^{n+1}`` of the target basepoint, so ``s`` is pointed.
    """
    if not Y.has_augmentation:
        raise ValueError("free contraction needs an augmented facial set")
    prev = list(Y.cells(-1))
    base = Y.basepoint(-1)
    levels, bases = [], []
    for k in range(Y.top + 1):
        base = ("C", base)
        cells = [("C", z) for z in prev] + [("Y", y) for y in Y.cells(k)]
        levels.append(cells)
        bases.append(base)
        prev = cells

    def face(k, i, c):
        tag, z = c
        if k == 0:
            return augment(c)
        if tag == "Y":
            return ("Y", Y.face(k, i, z))
        if i == 0:
            return z
        return ("C", face(k - 1, i - 1, z))

    def augment(c):
        tag, z = c
        return Y.augment(z) if tag == "Y" else z

    return FacialSet.from_functions(
        levels, bases, face, aug_cells=list(Y.cells(-1)), aug_basepoint=Y.basepoint(-1),
        augment=augment, contract=lambda k, c: ("C", c))


def random_contracted(rng: random.Random, sizes, aug_size=None) -> FacialSet:
    """A contracted facial set built as the free contraction of a random one."""
    Y = random_facial_set(rng, sizes, augmented=True, aug_size=aug_size, prefix="y")
    return free_contraction(Y)
