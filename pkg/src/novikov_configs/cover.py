"""Finite windows of the Gamma-cover with the lifted function f.

A lifted vertex is a pair (v, m) with m in Z^k and value phi(v) + <m, g>,
where g is the period-lattice basis. A base simplex [v0, ..., vr] lifts at
(v0, m) to the vertices (vj, m + deck(v0, vj)); the lift is kept iff all of
its vertices are in the window.

For k = 1 the window is a value interval [L, U]. For k = 0 it is the whole
complex. For k >= 2 value intervals contain infinitely many lifted vertices,
so the window is the lattice box |m_i| <= R instead, with R derived from
(U - L) and the largest basis value.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .cocycle import CocycleComplex, PotentialAssignment, potentials
from .linalg import Field, field as gf
from .values import Generators, ValueVector


class WindowError(ValueError):
    """Window parameters do not describe a usable window."""


@dataclass(frozen=True)
class WindowSpec:
    """Value window [lo, hi] with a value margin.

    For k >= 2 the window is also cut to the lattice box |m| <= box_radius,
    and central lifts must keep box_margin lattice steps from the box faces.
    """

    lo: ValueVector | None = None
    hi: ValueVector | None = None
    margin: ValueVector | None = None
    box_radius: int | None = None
    box_margin: int | None = None

    def resolve(self, pot: PotentialAssignment, gens: Generators):
        """Fill defaults: [-3P, 3P] with margin P, P the period scale."""
        basis = pot.lattice.basis
        n = gens.n
        if not basis:
            z = ValueVector.zero(n)
            return (self.lo or z, self.hi or z, self.margin or z)
        big = pot.lattice.period_scale(gens)
        lo = self.lo if self.lo is not None else big.scale(-3)
        hi = self.hi if self.hi is not None else big.scale(3)
        margin = self.margin if self.margin is not None else big
        return lo, hi, margin


@dataclass
class CoverWindow:
    """A finite piece of the lifted complex, filtered by f."""

    cx: CocycleComplex
    pot: PotentialAssignment
    lo: ValueVector
    hi: ValueVector
    margin: ValueVector
    vertices: list[tuple[int, tuple[int, ...]]]
    values: list[ValueVector]
    simplices: list[list[tuple[int, ...]]]
    critical: list[ValueVector]
    vertex_level: list[int]
    orbit_of_level: list[int]
    orbit_residues: list[ValueVector]
    central_levels: list[bool]
    box_radius: int | None = None
    box_margin: int | None = None
    level_radius: list[int] | None = None
    _sub: "FiltrationIndex | None" = field(default=None, repr=False)
    _sup: "FiltrationIndex | None" = field(default=None, repr=False)
    _levels: "dict | None" = field(default=None, repr=False)
    _lifts: "dict | None" = field(default=None, repr=False)
    _level_lift: "list | None" = field(default=None, repr=False)

    @property
    def gens(self) -> Generators:
        return self.cx.generators

    @property
    def k(self) -> int:
        return self.pot.k

    @property
    def p(self) -> int:
        return self.cx.field_prime

    @property
    def field(self) -> Field:
        return gf(self.p)

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def n_simplices(self, r: int) -> int:
        return len(self.simplices[r]) if 0 <= r < len(self.simplices) else 0

    def level_index(self, a: ValueVector) -> int:
        """Index of critical value a, or a ValueError when a is not critical."""
        i = self._exact_levels().get(a)
        if i is None:
            raise ValueError(f"{a} is not a critical value of the window")
        return i

    def _exact_levels(self) -> dict[ValueVector, int]:
        if self._levels is None:
            self._levels = {c: i for i, c in enumerate(self.critical)}
        return self._levels

    def _search(self, a: ValueVector) -> int:
        lo, hi = 0, len(self.critical)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.gens.compare(self.critical[mid], a) < 0:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def levels_at_most(self, a: ValueVector, strict: bool = False) -> int:
        """Number of critical values <= a (or < a when strict)."""
        i = self._search(a)
        if not strict and i < len(self.critical) and self.critical[i] == a:
            i += 1
        return i

    def central_indices(self) -> list[int]:
        return [i for i, c in enumerate(self.central_levels) if c]

    def simplex_level(self, s: tuple[int, ...]) -> int:
        return max(self.vertex_level[v] for v in s)

    def simplex_suplevel(self, s: tuple[int, ...]) -> int:
        return min(self.vertex_level[v] for v in s)

    def lift_index(self) -> dict[tuple[int, tuple[int, ...]], int]:
        return {x: i for i, x in enumerate(self.vertices)}

    def lift_of_level(self, level: int) -> tuple[int, tuple[int, ...]]:
        self._index_lifts()
        return self._level_lift[level]

    def deck_offset(self, src: int, dst: int) -> tuple[int, ...]:
        """g with dst = src + <g, basis>; both levels must be in one orbit."""
        (v, m), (u, n) = self.lift_of_level(src), self.lift_of_level(dst)
        if u == v:
            return tuple(b - a for a, b in zip(m, n))
        g = self.pot.lattice.coordinates(self.critical[dst] - self.critical[src])
        if g is None:
            raise ValueError("levels lie in different orbits")
        return g

    def _index_lifts(self) -> None:
        if self._lifts is None:
            self._lifts = {x: self.vertex_level[i] for i, x in enumerate(self.vertices)}
            self._level_lift = [None] * len(self.critical)
            for i, x in enumerate(self.vertices):
                self._level_lift[self.vertex_level[i]] = x

    def translate(self, level: int, g: Sequence[int]) -> int | None:
        """Critical level of a + <g, basis>, or None when it leaves the window.

        Looks up the deck translate of one lifted vertex at the level. For
        k >= 2 that lift may leave the box while another lift at the target
        value stays, in which case None is returned as well.
        """
        if not self.k:
            return level if not any(g) else None
        self._index_lifts()
        v, m = self._level_lift[level]
        return self._lifts.get((v, tuple(a + b for a, b in zip(m, g))))

    @property
    def sublevel(self) -> "FiltrationIndex":
        if self._sub is None:
            self._sub = FiltrationIndex.build(self, superlevel=False)
        return self._sub

    @property
    def superlevel(self) -> "FiltrationIndex":
        if self._sup is None:
            self._sup = FiltrationIndex.build(self, superlevel=True)
        return self._sup

    def summary(self) -> dict:
        g = self.gens
        return {
            "k": self.k,
            "window": [g.to_float(self.lo), g.to_float(self.hi)],
            "margin": g.to_float(self.margin),
            "box_radius": self.box_radius,
            "n_vertices": len(self.vertices),
            "simplex_counts": [len(s) for s in self.simplices],
            "critical_values": [g.to_float(c) for c in self.critical],
            "orbit_labels": list(self.orbit_of_level),
            "central": list(self.central_levels),
        }


@dataclass
class FiltrationIndex:
    """Total order of lifted simplices for the sublevel (or superlevel) filtration.

    ``order[i] = (r, simplex)``; ``level_end[l]`` is the prefix length covering
    every simplex of level <= l (sublevel) or >= l (superlevel, where levels
    are visited from the top).
    """

    order: list[tuple[int, tuple[int, ...]]]
    levels: list[int]
    level_end: dict[int, int]
    position: dict[tuple[int, ...], int]
    superlevel: bool

    @classmethod
    def build(cls, w: CoverWindow, superlevel: bool) -> "FiltrationIndex":
        keyed = []
        for r, layer in enumerate(w.simplices):
            for s in layer:
                if superlevel:
                    keyed.append(((-w.simplex_suplevel(s), r, s), r, s))
                else:
                    keyed.append(((w.simplex_level(s), r, s), r, s))
        keyed.sort(key=lambda t: t[0])
        order = [(r, s) for _, r, s in keyed]
        levels = [(-key[0] if superlevel else key[0]) for key, _, _ in keyed]
        level_end: dict[int, int] = {}
        for i, lv in enumerate(levels):
            level_end[lv] = i + 1
        position = {s: i for i, (_, s) in enumerate(order)}
        return cls(order, levels, level_end, position, superlevel)

    def prefix_length(self, level: int, strict: bool = False) -> int:
        """Number of simplices in X_a (or X_{<a}); for superlevel X^b (or X^{>b})."""
        if self.superlevel:
            # levels descend along the order
            if strict:
                return sum(1 for lv in self.levels if lv > level)
            return sum(1 for lv in self.levels if lv >= level)
        keys = self.levels
        return bisect_left(keys, level) if strict else bisect_right(keys, level)

    def prefix(self, level: int, strict: bool = False) -> list[tuple[int, tuple[int, ...]]]:
        return self.order[: self.prefix_length(level, strict)]

    def boundary_columns(self, F: Field) -> list:
        """Boundary of every simplex as a vector over filtration positions."""
        cols = []
        pos = self.position
        p2 = F.p == 2
        for r, s in self.order:
            if r == 0:
                cols.append(F.zero())
                continue
            if p2:
                x = 0
                for i in range(len(s)):
                    x ^= 1 << pos[s[:i] + s[i + 1:]]
                cols.append(x)
            else:
                cols.append(F.from_entries(
                    (pos[s[:i] + s[i + 1:]], (-1) ** i) for i in range(len(s))))
        return cols


def _value_range(gens: Generators, base: ValueVector, step: ValueVector,
                 lo: ValueVector, hi: ValueVector) -> list[int]:
    """All m with lo <= base + m*step <= hi (step > 0)."""
    s = gens.evaluate(step)
    m0 = math.floor((gens.evaluate(lo) - gens.evaluate(base)) / s) - 1
    m1 = math.ceil((gens.evaluate(hi) - gens.evaluate(base)) / s) + 1
    out = []
    for m in range(m0, m1 + 1):
        v = base + step.scale(m)
        if gens.compare(lo, v) <= 0 and gens.compare(v, hi) <= 0:
            out.append(m)
    return out


def lattice_extent(pot: PotentialAssignment) -> int:
    """Sum over edges of the largest deck coordinate: a lattice-step scale for cycles."""
    return sum(max((abs(c) for c in d), default=0) for d in pot.deck.values())


def orbit_offset(pot: PotentialAssignment, gens: Generators, n: int) -> int:
    """Largest lattice distance between lifts of distinct base vertices at one value."""
    out = 0
    for u in range(n):
        for v in range(u + 1, n):
            g = pot.lattice.coordinates(pot.phi[v] - pot.phi[u]) if pot.k else None
            if g is not None:
                out = max(out, max((abs(c) for c in g), default=0))
    return out


def build_window(cx: CocycleComplex, pot: PotentialAssignment | None = None,
                 lo: ValueVector | None = None, hi: ValueVector | None = None,
                 margin: ValueVector | None = None, box_radius: int | None = None,
                 box_margin: int | None = None) -> CoverWindow:
    """Enumerate the lifted complex inside the window."""
    if pot is None:
        pot = potentials(cx)
    gens = cx.generators
    lo, hi, margin = WindowSpec(lo, hi, margin).resolve(pot, gens)
    k = pot.k
    basis = pot.lattice.basis

    def value_of(x):
        v, m = x
        if not k:
            return pot.phi[v]
        q = pot.phi[v].rational + sum((c * b.rational for c, b in zip(m, basis)), Fraction(0))
        lat = [sum(c * b.lattice[j] for c, b in zip(m, basis)) + pot.phi[v].lattice[j]
               for j in range(gens.n)]
        return ValueVector(q, tuple(lat))

    lift_vertices: list[tuple[int, tuple[int, ...]]] = []
    box_r = box_m = None
    if k == 0:
        lift_vertices = [(v, ()) for v in range(cx.n_vertices)]
    elif k == 1:
        if gens.compare(margin, ValueVector.zero(gens.n)) < 0:
            raise WindowError("margin must be non-negative")
        if gens.compare(lo + margin.scale(2), hi) >= 0:
            raise WindowError("window is too short for its margin: need lo + 2*margin < hi")
        for v in range(cx.n_vertices):
            for m in _value_range(gens, pot.phi[v], basis[0], lo, hi):
                lift_vertices.append((v, (m,)))
    else:
        if gens.compare(lo + margin.scale(2), hi) >= 0:
            raise WindowError("window is too short for its margin: need lo + 2*margin < hi")
        box_m = box_margin if box_margin is not None else max(1, lattice_extent(pot))
        box_r = box_radius if box_radius is not None else (
            2 * box_m + orbit_offset(pot, gens, cx.n_vertices))
        if box_m > box_r:
            raise WindowError("box margin leaves no central region")
        flo, fhi = gens.to_float(lo), gens.to_float(hi)
        fb = [gens.to_float(b) for b in basis]
        slack = 1e-6 * (1 + abs(flo) + abs(fhi))
        rng = range(-box_r, box_r + 1)
        for v in range(cx.n_vertices):
            base = gens.to_float(pot.phi[v])
            for m in product(rng, repeat=k):
                x = base + sum(c * b for c, b in zip(m, fb))
                if x < flo - slack or x > fhi + slack:
                    continue
                val = value_of((v, m))
                if gens.compare(lo, val) <= 0 and gens.compare(val, hi) <= 0:
                    lift_vertices.append((v, tuple(m)))
    if not lift_vertices:
        raise WindowError("empty window")


    raw_values = [value_of(x) for x in lift_vertices]
    critical = gens.sorted_distinct(raw_values)
    lvl = {c: i for i, c in enumerate(critical)}
    # index lifted vertices in value order
    perm = sorted(range(len(lift_vertices)),
                  key=lambda i: (lvl[raw_values[i]], lift_vertices[i]))
    vertices = [lift_vertices[i] for i in perm]
    values = [raw_values[i] for i in perm]
    vertex_level = [lvl[v] for v in values]
    index = {x: i for i, x in enumerate(vertices)}

    simplices: list[list[tuple[int, ...]]] = [[(i,) for i in range(len(vertices))]]
    lifts_of: dict[int, list[tuple[int, ...]]] = {}
    for v, m in vertices:
        lifts_of.setdefault(v, []).append(m)
    for r in range(1, cx.dim + 1):
        layer = []
        for s in cx.simplices[r]:
            v0 = s[0]
            shifts = [pot.deck_between(v0, vj) for vj in s]
            for m in lifts_of.get(v0, ()):
                lifted = []
                for vj, d in zip(s, shifts):
                    key = (vj, tuple(a + b for a, b in zip(m, d)))
                    i = index.get(key)
                    if i is None:
                        break
                    lifted.append(i)
                else:
                    layer.append(tuple(sorted(lifted)))
        layer.sort()
        simplices.append(layer)
    while len(simplices) > 1 and not simplices[-1]:
        simplices.pop()

    # orbit labels by residue mod Gamma; a generic level is one lifted vertex,
    # so its orbit is that of its base vertex
    residues: list[ValueVector] = []
    res_index: dict[ValueVector, int] = {}
    base_res = [pot.lattice.residue(pot.phi[v]) for v in range(cx.n_vertices)]
    orbit_of_level = [0] * len(critical)
    for (v, _), lv in sorted(zip(vertices, vertex_level), key=lambda t: t[1]):
        rr = base_res[v]
        if rr not in res_index:
            res_index[rr] = len(residues)
            residues.append(rr)
        orbit_of_level[lv] = res_index[rr]

    level_radius = None
    if k == 0:
        central = [True] * len(critical)
    elif k == 1:
        clo, chi = lo + margin, hi - margin
        central = [gens.compare(clo, c) <= 0 and gens.compare(c, chi) <= 0 for c in critical]
    else:
        # a level is central when every lift at that value, one per base
        # vertex of the orbit, sits inside the inner box
        inner = box_r - box_m
        clo, chi = lo + margin, hi - margin
        central = [gens.compare(clo, c) <= 0 and gens.compare(c, chi) <= 0 for c in critical]
        same: dict[int, list[tuple[int, ...]]] = {}
        for v in range(cx.n_vertices):
            same[v] = [pot.lattice.coordinates(pot.phi[v] - pot.phi[u])
                       for u in range(cx.n_vertices) if base_res[u] == base_res[v]]
        level_radius = [0] * len(critical)
        for (v, m), l in zip(vertices, vertex_level):
            level_radius[l] = max(max(abs(a + c) for a, c in zip(m, off)) for off in same[v])
        for l, rad in enumerate(level_radius):
            if rad > inner:
                central[l] = False
    return CoverWindow(cx=cx, pot=pot, lo=lo, hi=hi, margin=margin, vertices=vertices,
                       values=values, simplices=simplices, critical=critical,
                       vertex_level=vertex_level, orbit_of_level=orbit_of_level,
                       orbit_residues=residues, central_levels=central,
                       box_radius=box_r, box_margin=box_m, level_radius=level_radius)


def critical_values(w: CoverWindow) -> list[tuple[ValueVector, int]]:
    return list(zip(w.critical, w.orbit_of_level))


def level_prefix(w: CoverWindow, a: ValueVector, strict: bool = False):
    """Simplices of X_a (or X_{<a}) in filtration order."""
    n = w.levels_at_most(a, strict)
    if n == 0:
        return []
    return w.sublevel.prefix(n - 1)


def superlevel_prefix(w: CoverWindow, b: ValueVector, strict: bool = False):
    """Simplices of X^b (or X^{>b}) in superlevel order."""
    n = w.levels_at_most(b, strict=not strict)
    if n >= len(w.critical):
        return []
    return w.superlevel.prefix(n)


def evaluate_levels(w: CoverWindow) -> list[float]:
    return [w.gens.to_float(c) for c in w.critical]


def as_fraction(w: CoverWindow, v: ValueVector) -> Fraction:
    return w.gens.evaluate(v)
