"""Exact piecewise-linear Moore loops in Q^d and the suspension point calculus.

A Moore loop carries its own length, so concatenation is strictly associative
with the length-zero loop as unit.  Loops are stored in a canonical form
(consecutive segments of equal velocity merged), which makes equality of
loops plain equality of breakpoint tuples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .core import ValidationReport
from .points import as_fraction


def _vec(coords, dim=None):
    v = tuple(as_fraction(c) for c in coords)
    if dim is not None and len(v) != dim:
        raise ValueError(f"expected {dim} coordinates, got {len(v)}")
    return v


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _lerp(a, b, s):
    return tuple(x + s * (y - x) for x, y in zip(a, b))


@dataclass(frozen=True)
class MooreLoop:
    """Breakpoints ``(t_0 = 0, origin), ..., (t_r = length, origin)``, linear in between."""

    dim: int
    breakpoints: tuple

    def __post_init__(self):
        pts = tuple((as_fraction(t), _vec(x, self.dim)) for t, x in self.breakpoints)
        if not pts:
            raise ValueError("a loop needs at least one breakpoint")
        origin = (Fraction(0),) * self.dim
        if pts[0][0] != 0:
            raise ValueError("loops start at time 0")
        if pts[0][1] != origin or pts[-1][1] != origin:
            raise ValueError("loops start and end at the origin")
        for (t1, _), (t2, _) in zip(pts, pts[1:]):
            if t2 <= t1:
                raise ValueError("breakpoint times must increase strictly")
        object.__setattr__(self, "breakpoints", _merge(pts))

    @classmethod
    def unit(cls, dim=2):
        return cls(dim, ((0, (0,) * dim),))

    @classmethod
    def through(cls, points, speeds=None, dim=None):
        """Closed polygon origin -> points... -> origin; segment ``j`` takes ``speeds[j]`` time."""
        dim = dim if dim is not None else len(points[0])
        origin = (0,) * dim
        route = [origin] + [tuple(p) for p in points] + [origin]
        speeds = speeds or [1] * (len(route) - 1)
        t, bps = Fraction(0), [(Fraction(0), origin)]
        for p, dt in zip(route[1:], speeds):
            t += as_fraction(dt)
            bps.append((t, p))
        return cls(dim, tuple(bps))

    @property
    def length(self) -> Fraction:
        return self.breakpoints[-1][0]

    @property
    def is_unit(self):
        return self.length == 0

    @property
    def is_constant(self):
        return all(x == (0,) * self.dim for _, x in self.breakpoints)

    def __call__(self, t):
        t = as_fraction(t)
        if t < 0 or t > self.length:
            raise ValueError(f"time {t} outside [0, {self.length}]")
        bps = self.breakpoints
        lo, hi = 0, len(bps) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if bps[mid][0] <= t:
                lo = mid
            else:
                hi = mid
        (t1, a), (t2, b) = bps[lo], bps[min(hi, len(bps) - 1)]
        if t2 == t1:
            return a
        return _lerp(a, b, (t - t1) / (t2 - t1))

    def times(self):
        return [t for t, _ in self.breakpoints]

    def __str__(self):
        body = ", ".join(f"{t}:({','.join(map(str, x))})" for t, x in self.breakpoints)
        return f"loop[{body}]"


def _merge(pts):
    out = [pts[0]]
    for t, x in pts[1:]:
        if len(out) >= 2:
            (t0, a), (t1, b) = out[-2], out[-1]
            v1 = tuple(c / (t1 - t0) for c in _sub(b, a))
            v2 = tuple(c / (t - t1) for c in _sub(x, b))
            if v1 == v2:
                out[-1] = (t, x)
                continue
        out.append((t, x))
    return tuple(out)


def concat(a: MooreLoop, b: MooreLoop) -> MooreLoop:
    """Run ``a`` then ``b``; lengths add."""
    if a.dim != b.dim:
        raise ValueError("loops live in different dimensions")
    shift = a.length
    return MooreLoop(a.dim, a.breakpoints + tuple((t + shift, x) for t, x in b.breakpoints[1:]))


def inverse(a: MooreLoop) -> MooreLoop:
    L = a.length
    return MooreLoop(a.dim, tuple((L - t, x) for t, x in reversed(a.breakpoints)))


def reparam_unit(a: MooreLoop) -> MooreLoop:
    """``s -> a(length * s)`` on [0, 1]; the unit loop stays the unit loop."""
    if a.is_unit:
        return a
    L = a.length
    return MooreLoop(a.dim, tuple((t / L, x) for t, x in a.breakpoints))


def product(loops, dim=2) -> MooreLoop:
    out = MooreLoop.unit(dim)
    for w in loops:
        out = concat(out, w)
    return out


# -- suspension points ------------------------------------------------------------------

@dataclass(frozen=True)
class SuspPoint:
    """A point ``[loop, t]`` of the reduced suspension of the loop space, or the basepoint."""

    loop: MooreLoop | None = None
    t: Fraction | None = None

    @classmethod
    def make(cls, loop: MooreLoop, t) -> "SuspPoint":
        t = as_fraction(t)
        if not 0 <= t <= 1:
            raise ValueError(f"suspension coordinate {t} outside [0, 1]")
        if t in (0, 1) or loop.is_constant:
            return SUSP_BASE
        return cls(loop, t)

    @property
    def is_base(self):
        return self.loop is None

    def __str__(self):
        return "*" if self.is_base else f"[{self.loop}, {self.t}]"


SUSP_BASE = SuspPoint()


def ev(p: SuspPoint, dim=2):
    """``[a, t] -> a(t * length(a))``; the basepoint goes to the origin."""
    if p.is_base:
        return (Fraction(0),) * dim
    return p.loop(p.t * p.loop.length)


@dataclass(frozen=True)
class GammaPath:
    """The Moore path ``u -> [w, u / length]`` (basepoint once ``u >= length``).

    Only the suspension coordinate varies with ``u``, so the path is kept as
    the loop itself and evaluated on demand.
    """

    loop: MooreLoop

    @property
    def length(self):
        return self.loop.length

    def __call__(self, u) -> SuspPoint:
        u = as_fraction(u)
        if u < 0:
            raise ValueError("negative time")
        if u >= self.length:
            return SUSP_BASE
        return SuspPoint.make(self.loop, u / self.length)

    def unit_form(self):
        """The loop component as stored in the point, parameterized on [0, 1]."""
        return reparam_unit(self.loop)


def gamma(w: MooreLoop) -> GammaPath:
    return GammaPath(w)


def loop_ev(path: GammaPath, times):
    """``Omega'(ev)`` of a suspension-valued Moore path, sampled at ``times``."""
    dim = path.loop.dim
    return [ev(path(u), dim) for u in times]


def retraction_witness(w: MooreLoop, times):
    """First time where ``ev(gamma(w)(u)) != w(u)``, or None."""
    g = gamma(w)
    if g.length != w.length:
        return ("length", g.length, w.length)
    for u in times:
        lhs, rhs = ev(g(u), w.dim), w(u)
        if lhs != rhs:
            return (u, lhs, rhs)
    return None


# -- bar faces on loop tuples ------------------------------------------------------------

def bar_face(loops: tuple, i: int) -> tuple:
    n = len(loops)
    if not 0 <= i <= n:
        raise ValueError(f"face index {i} out of range for level {n}")
    if i == 0:
        return loops[1:]
    if i == n:
        return loops[:-1]
    return loops[: i - 1] + (concat(loops[i - 1], loops[i]),) + loops[i + 1:]


def bar_identities_on_loops(loops) -> ValidationReport:
    """``d_i d_j = d_{j-1} d_i`` for ``i < j`` on one tuple, compared exactly."""
    loops = tuple(loops)
    n = len(loops)
    rep = ValidationReport("loop bar faces")
    for j in range(1, n + 1):
        for i in range(j):
            rep.checked += 1
            lhs = bar_face(bar_face(loops, j), i)
            rhs = bar_face(bar_face(loops, i), j - 1)
            if lhs != rhs:
                rep.add("d_i d_j = d_{j-1} d_i", n, (i, j), loops,
                        tuple(map(str, lhs)), tuple(map(str, rhs)))
    return rep


# -- random loops ------------------------------------------------------------------

def random_loop(rng: random.Random, max_breakpoints=12, dim=2, coord_range=5) -> MooreLoop:
    """Between 1 and ``max_breakpoints`` breakpoints, origin at both ends."""
    r = rng.randint(1, max_breakpoints)
    if r == 1:
        return MooreLoop.unit(dim)
    t, bps = Fraction(0), [(Fraction(0), (0,) * dim)]
    for j in range(1, r):
        t += Fraction(rng.randint(1, 9), rng.randint(1, 6))
        x = (0,) * dim if j == r - 1 else tuple(
            Fraction(rng.randint(-coord_range * 4, coord_range * 4), rng.randint(1, 4))
            for _ in range(dim))
        bps.append((t, x))
    return MooreLoop(dim, tuple(bps))


def random_times(rng: random.Random, length, count=50):
    if length == 0:
        return [Fraction(0)] * count
    out = []
    for _ in range(count):
        den = rng.randint(1, 97)
        out.append(Fraction(rng.randint(0, den), den) * length)
    return out
