"""Exact integer linear algebra: Smith normal form and friends.

Matrices are lists of rows of Python ints (numpy arrays are accepted and
converted).  Everything is arbitrary precision; nothing here overflows.
"""

from __future__ import annotations

from dataclasses import dataclass


def to_rows(M, ncols=None):
    """Copy ``M`` into a list of lists of Python ints."""
    rows = [[int(a) for a in row] for row in M]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
        shape = getattr(M, "shape", None)
        if shape is not None and len(shape) == 2:
            ncols = shape[1]
    return rows, ncols


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B, ncols_b=None):
    if ncols_b is None:
        ncols_b = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else [()] * ncols_b
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def xgcd(a, b):
    """Return (g, x, y) with x*a + y*b == g == gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def determinant(M):
    """Bareiss fraction-free determinant of a square integer matrix."""
    A, n = to_rows(M)
    if len(A) != n:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


class _Reducer:
    """Row/column reduction of an integer matrix, optionally recording the
    unimodular transforms ``U`` (rows) and ``V`` (columns) and their inverses,
    so that ``U @ M @ V`` equals the current working matrix at every step."""

    def __init__(self, M, track):
        self.A, self.n = to_rows(M)
        self.m = len(self.A)
        self.track = track
        if track:
            self.U, self.Ui = identity(self.m), identity(self.m)
            self.V, self.Vi = identity(self.n), identity(self.n)

    # elementary operations -------------------------------------------------
    def swap_rows(self, i, j):
        if i == j:
            return
        A = self.A
        A[i], A[j] = A[j], A[i]
        if self.track:
            self.U[i], self.U[j] = self.U[j], self.U[i]
            for row in self.Ui:
                row[i], row[j] = row[j], row[i]

    def swap_cols(self, i, j):
        if i == j:
            return
        for row in self.A:
            row[i], row[j] = row[j], row[i]
        if self.track:
            for row in self.V:
                row[i], row[j] = row[j], row[i]
            self.Vi[i], self.Vi[j] = self.Vi[j], self.Vi[i]

    def add_row(self, dst, src, q):
        """row[dst] += q * row[src]"""
        if q == 0:
            return
        rd, rs = self.A[dst], self.A[src]
        for j, a in enumerate(rs):
            if a:
                rd[j] += q * a
        if self.track:
            ud, us = self.U[dst], self.U[src]
            for j, a in enumerate(us):
                if a:
                    ud[j] += q * a
            for row in self.Ui:
                if row[dst]:
                    row[src] -= q * row[dst]

    def add_col(self, dst, src, q):
        """col[dst] += q * col[src]"""
        if q == 0:
            return
        for row in self.A:
            if row[src]:
                row[dst] += q * row[src]
        if self.track:
            for row in self.V:
                if row[src]:
                    row[dst] += q * row[src]
            vd, vs = self.Vi[dst], self.Vi[src]
            for j, a in enumerate(vd):
                if a:
                    vs[j] -= q * a

    def negate_row(self, i):
        self.A[i] = [-a for a in self.A[i]]
        if self.track:
            self.U[i] = [-a for a in self.U[i]]
            for row in self.Ui:
                row[i] = -row[i]

    def _combine_rows(self, i, j, x, y, p, q):
        # [row_i; row_j] <- [[x, y], [p, q]] @ [row_i; row_j]   (xq - yp == 1)
        def mix(R):
            ri, rj = R[i], R[j]
            R[i] = [x * a + y * b for a, b in zip(ri, rj)]
            R[j] = [p * a + q * b for a, b in zip(ri, rj)]

        mix(self.A)
        if self.track:
            mix(self.U)
            # inverse is [[q, -y], [-p, x]] applied on the right of Ui
            for row in self.Ui:
                ci, cj = row[i], row[j]
                row[i] = q * ci - p * cj
                row[j] = -y * ci + x * cj

    def _combine_cols(self, i, j, x, y, p, q):
        # [col_i, col_j] <- [col_i, col_j] @ [[x, p], [y, q]]   (xq - yp == 1)
        def mix(R):
            for row in R:
                ci, cj = row[i], row[j]
                row[i] = x * ci + y * cj
                row[j] = p * ci + q * cj

        mix(self.A)
        if self.track:
            mix(self.V)
            Vi = self.Vi
            ri, rj = Vi[i], Vi[j]
            Vi[i] = [q * a - p * b for a, b in zip(ri, rj)]
            Vi[j] = [-y * a + x * b for a, b in zip(ri, rj)]

    # diagonalisation -------------------------------------------------------
    def _pivot(self, t):
        best = None
        A = self.A
        for i in range(t, self.m):
            row = A[i]
            for j in range(t, self.n):
                a = row[j]
                if a:
                    if a == 1 or a == -1:
                        return i, j
                    if best is None or abs(a) < best[0]:
                        best = (abs(a), i, j)
        return None if best is None else best[1:]

    def diagonalize(self):
        """Reduce to a diagonal matrix; returns the rank."""
        A = self.A
        t = 0
        while t < min(self.m, self.n):
            piv = self._pivot(t)
            if piv is None:
                break
            self.swap_rows(t, piv[0])
            self.swap_cols(t, piv[1])
            while True:
                clean = True
                for i in range(t + 1, self.m):
                    if A[i][t]:
                        q = A[i][t] // A[t][t]
                        self.add_row(i, t, -q)
                        if A[i][t]:
                            clean = False
                for j in range(t + 1, self.n):
                    if A[t][j]:
                        q = A[t][j] // A[t][t]
                        self.add_col(j, t, -q)
                        if A[t][j]:
                            clean = False
                if clean:
                    break
                # move the smallest remainder in row/column t onto the pivot
                best = (abs(A[t][t]), None, None)
                for i in range(t + 1, self.m):
                    if A[i][t] and abs(A[i][t]) < best[0]:
                        best = (abs(A[i][t]), i, None)
                for j in range(t + 1, self.n):
                    if A[t][j] and abs(A[t][j]) < best[0]:
                        best = (abs(A[t][j]), None, j)
                if best[1] is not None:
                    self.swap_rows(t, best[1])
                elif best[2] is not None:
                    self.swap_cols(t, best[2])
            if A[t][t] < 0:
                self.negate_row(t)
            t += 1
        return t

    def fix_divisibility(self, r):
        """Turn diag(d_0..d_{r-1}) into invariant-factor order d_0 | d_1 | ..."""
        A = self.A
        for i in range(r):
            for j in range(i + 1, r):
                a, b = A[i][i], A[j][j]
                if b % a == 0:
                    continue
                g, x, y = xgcd(a, b)
                # diag(a, b) -> diag(g, ab/g) by L diag(a,b) R
                self._combine_rows(i, j, x, y, -b // g, a // g)
                self._combine_cols(i, j, 1, 1, -y * b // g, x * a // g)
                if A[j][j] < 0:
                    self.negate_row(j)


@dataclass
class SmithForm:
    """``S == U @ M @ V`` with ``U``, ``V`` unimodular and ``S`` in Smith form."""

    S: list
    U: list
    V: list
    U_inv: list
    V_inv: list
    rank: int

    @property
    def diagonal(self):
        return [self.S[i][i] for i in range(self.rank)]


def smith_normal_form(M) -> SmithForm:
    red = _Reducer(M, track=True)
    r = red.diagonalize()
    red.fix_divisibility(r)
    return SmithForm(red.A, red.U, red.V, red.Ui, red.Vi, r)


def invariant_factors(M):
    """Nonzero diagonal of the Smith form of ``M`` (transforms not recorded)."""
    red = _Reducer(M, track=False)
    r = red.diagonalize()
    red.fix_divisibility(r)
    return [red.A[i][i] for i in range(r)]


def rank(M):
    red = _Reducer(M, track=False)
    return red.diagonalize()


def solve_integer(A, b, ncols=None):
    """An integer solution ``x`` of ``A x = b``, or ``None`` if none exists."""
    rows, n = to_rows(A, ncols)
    b = [int(v) for v in b]
    if len(b) != len(rows):
        raise ValueError("right-hand side length mismatch")
    if not rows:
        return [0] * n
    sf = smith_normal_form(rows)
    ub = [sum(u * v for u, v in zip(row, b)) for row in sf.U]
    y = [0] * n
    for i, c in enumerate(ub):
        if i < sf.rank:
            d = sf.S[i][i]
            if c % d:
                return None
            y[i] = c // d
        elif c:
            return None
    return [sum(v * yy for v, yy in zip(row, y)) for row in sf.V]


def kernel_basis(M, ncols=None):
    """Columns spanning the integer kernel of ``M`` (a saturated lattice basis)."""
    rows, n = to_rows(M, ncols)
    if not rows:
        return identity(n)
    sf = smith_normal_form(rows)
    return [[sf.V[i][j] for i in range(n)] for j in range(sf.rank, n)]
