"""Homological invariants of a cover window.

Two independent routes are implemented for each quantity.

Fast path: one persistence reduction of the sublevel filtration and one of
the superlevel filtration. gamma is read off the finite pairs. delta comes
from writing the superlevel essential cycles in the sublevel essential basis
and reducing that square matrix; a pivot (i, j) is a class born at the birth
of sublevel class i that survives in the superlevel set of superlevel class j.

Oracle path: explicit subspaces. I_a and I^b are spans of cycle
coordinates in H_r(window); Z_a and B_b are cycle and boundary spaces of
prefixes in chain coordinates; delta_hat and gamma_hat are the quotient
formulas evaluated literally.

Level indices: sublevel arguments range over -1 (empty) .. N-1 and
superlevel arguments over 0 .. N (N = empty), with N critical values.
"""

from __future__ import annotations

from bisect import bisect_right

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .cover import CoverWindow
from .linalg import EchelonTable, Field, Subspace, SparseMatrix, intersect, kernel, \
    persistence_reduce, quotient_dim, rank, subspace_sum
from .values import ValueVector


@dataclass(frozen=True)
class SupportPoint:
    a: ValueVector
    b: ValueVector
    multiplicity: int
    kind: str
    r: int
    a_level: int
    b_level: int
    orbit: int

    def to_json(self, gens) -> dict:
        return {
            "r": self.r, "kind": self.kind, "multiplicity": self.multiplicity,
            "orbit": self.orbit,
            "a": gens.to_float(self.a), "b": gens.to_float(self.b),
            "a_exact": self.a.to_json(), "b_exact": self.b.to_json(),
        }


@dataclass
class HomologyPresentation:
    """Cycles and boundaries as subspaces of one chain space."""

    r: int
    cycle_basis: Subspace
    boundary_basis: Subspace

    @property
    def homology_dim(self) -> int:
        return quotient_dim(self.cycle_basis, self.boundary_basis)


# -- fast path ---------------------------------------------------------------


class FastPath:
    """Persistence-based delta and gamma for every degree of a window."""

    def __init__(self, w: CoverWindow):
        self.w = w
        F = w.field
        self.F = F
        sub, sup = w.sublevel, w.superlevel
        self.sub_cols = sub.boundary_columns(F)
        self.sup_cols = sup.boundary_columns(F)
        self.sub_pair, self.sub_red, self.sub_cyc = persistence_reduce(
            self.sub_cols, w.p, return_reduced=True, cycles=True)
        self.sup_pair, self.sup_cyc = persistence_reduce(self.sup_cols, w.p, cycles=True)
        self._delta: dict[int, Counter] = {}

    def gamma_pairs(self, r: int) -> Counter:
        """Finite bars (birth level, death level) of degree r with positive length."""
        sub = self.w.sublevel
        out: Counter = Counter()
        for b, d in self.sub_pair.pairs:
            if sub.order[b][0] != r:
                continue
            a, c = sub.levels[b], sub.levels[d]
            if a < c:
                out[(a, c)] += 1
        return out

    def delta_pairs(self, r: int) -> Counter:
        if r in self._delta:
            return self._delta[r]
        w, F = self.w, self.F
        sub, sup = w.sublevel, w.superlevel
        ess_sub = [j for j in self.sub_pair.essential if sub.order[j][0] == r]
        ess_sup = [j for j in self.sup_pair.essential if sup.order[j][0] == r]
        if len(ess_sub) != len(ess_sup):
            raise AssertionError("sub- and superlevel essential counts differ")
        coord = {j: i for i, j in enumerate(ess_sub)}
        # boundary echelon of the window plus essential cycles, keyed by low
        rtab = {}
        for d_pos in (d for _, d in self.sub_pair.pairs if sub.order[_][0] == r):
            x = self.sub_red[d_pos]
            rtab[F.low(x)] = x
        etab = {j: self.sub_cyc[j] for j in ess_sub}
        to_sub = [sub.position[s] for _, s in sup.order]
        cols = []
        for j in ess_sup:
            c = F.from_entries((to_sub[i], v) for i, v in F.entries(self.sup_cyc[j]))
            cols.append(self._coordinates(c, rtab, etab, coord))
        # lowest-one reduction of the coordinate matrix
        piv: dict[int, object] = {}
        out: Counter = Counter()
        for j, x in enumerate(cols):
            while True:
                lo = F.low(x)
                if lo < 0:
                    raise AssertionError("superlevel essential cycles are dependent")
                if lo not in piv:
                    break
                y = piv[lo]
                x = F.iaxpy(x, -F.coeff(x, lo) * F.inv(F.coeff(y, lo)), y)
            piv[lo] = x
            a = sub.levels[ess_sub[lo]]
            b = sup.levels[ess_sup[j]]
            out[(a, b)] += 1
        self._delta[r] = out
        return out

    def _coordinates(self, c, rtab, etab, coord):
        F = self.F
        out = F.zero()
        while True:
            lo = F.low(c)
            if lo < 0:
                return out
            if lo in rtab:
                y = rtab[lo]
            elif lo in etab:
                y = etab[lo]
                cf = F.coeff(c, lo) * F.inv(F.coeff(y, lo))
                out = F.iaxpy(out, cf, F.unit(coord[lo]))
            else:
                raise AssertionError("vector is not a cycle of the window")
            c = F.iaxpy(c, -F.coeff(c, lo) * F.inv(F.coeff(y, lo)), y)

    def essential_births(self, r: int) -> list[int]:
        sub = self.w.sublevel
        return [sub.levels[j] for j in self.sub_pair.essential if sub.order[j][0] == r]


def fast_path(w: CoverWindow) -> FastPath:
    fp = getattr(w, "_fast", None)
    if fp is None:
        fp = FastPath(w)
        w._fast = fp
    return fp


# -- oracle path -------------------------------------------------------------


class ChainPresentation:
    """Chain-level data of one degree r of a window.

    Coordinates of C_r are positions of r-simplices in the sublevel order.
    """

    def __init__(self, w: CoverWindow, r: int):
        self.w, self.r = w, r
        F = w.field
        self.F = F
        self.N = len(w.critical)
        sub = w.sublevel
        self.simp_r = [s for d, s in sub.order if d == r]
        self.idx_r = {s: i for i, s in enumerate(self.simp_r)}
        self.simp_rm = [s for d, s in sub.order if d == r - 1]
        self.idx_rm = {s: i for i, s in enumerate(self.simp_rm)}
        self.simp_rp = [s for d, s in sub.order if d == r + 1]
        self.n = len(self.simp_r)
        self.d_r = [self._bd(s, self.idx_rm) for s in self.simp_r]
        self.d_rp = [self._bd(s, self.idx_r) for s in self.simp_rp]
        self.lvl_r = [w.simplex_level(s) for s in self.simp_r]
        self.suplvl_r = [w.simplex_suplevel(s) for s in self.simp_r]
        self.lvl_rp = [w.simplex_level(s) for s in self.simp_rp]
        self._zsub = self._incremental_kernel(sorted(range(self.n), key=lambda i: self.lvl_r[i]),
                                              self.lvl_r)
        self._zsup = self._incremental_kernel(
            sorted(range(self.n), key=lambda i: -self.suplvl_r[i]), self.suplvl_r)
        self._bsub = self._incremental_span(self.d_rp, self.lvl_rp)
        self._hcoord_setup()
        self._cache: dict = {}

    def _bd(self, s, idx):
        if len(s) == 1:
            return self.F.zero()
        return self.F.from_entries((idx[s[:i] + s[i + 1:]], (-1) ** i) for i in range(len(s)))

    def _incremental_kernel(self, order, lvl):
        """Cycles (level, vector) such that those of level in a prefix span Z(prefix)."""
        F = self.F
        t = EchelonTable(F, track=True)
        out = []
        for i in order:
            if not t.insert(self.d_r[i], F.unit(i)):
                out.append((lvl[i], t._last_tag))
        return out

    def _incremental_span(self, vecs, lvl):
        F = self.F
        t = EchelonTable(F)
        out = []
        for i in sorted(range(len(vecs)), key=lambda i: lvl[i]):
            if t.insert(vecs[i]):
                out.append((lvl[i], vecs[i]))
        return out

    def _hcoord_setup(self):
        """Coordinates on H_r(window): boundary echelon plus a complement of cycles."""
        F = self.F
        bspace = Subspace.span(self.n, self.d_rp, self.w.p)
        zspace = kernel(SparseMatrix(max(len(self.simp_rm), 1), self.n, tuple(self.d_r), self.w.p)) \
            if self.n else Subspace.zero(0, self.w.p)
        t = EchelonTable(F, track=True)
        for b in bspace.basis:
            t.insert(b, F.zero())
        h = 0
        for z in zspace.basis:
            if t.insert(z, F.unit(h)):
                h += 1
        self.h = h
        self._htab = t
        self.boundary_space = bspace
        self.cycle_space = zspace

    def coords(self, z):
        x, tag = self._htab.reduce(z, self.F.zero())
        if self.F.low(x) >= 0:
            raise ValueError("vector is not a cycle")
        return self.F.scale(tag, -1)

    # subspaces keyed by level
    def Z(self, a: int) -> Subspace:
        key = ("Z", a)
        if key not in self._cache:
            self._cache[key] = Subspace.span(self.n, (z for l, z in self._zsub if l <= a), self.w.p)
        return self._cache[key]

    def Zsup(self, b: int) -> Subspace:
        key = ("Zs", b)
        if key not in self._cache:
            self._cache[key] = Subspace.span(self.n, (z for l, z in self._zsup if l >= b), self.w.p)
        return self._cache[key]

    def B(self, b: int) -> Subspace:
        key = ("B", b)
        if key not in self._cache:
            self._cache[key] = Subspace.span(self.n, (x for l, x in self._bsub if l <= b), self.w.p)
        return self._cache[key]

    def I_sub(self, a: int) -> Subspace:
        key = ("I", a)
        if key not in self._cache:
            self._cache[key] = Subspace.span(
                self.h, (self.coords(z) for l, z in self._zsub if l <= a), self.w.p)
        return self._cache[key]

    def I_sup(self, b: int) -> Subspace:
        key = ("Is", b)
        if key not in self._cache:
            self._cache[key] = Subspace.span(
                self.h, (self.coords(z) for l, z in self._zsup if l >= b), self.w.p)
        return self._cache[key]

    def dim_Z(self, a: int) -> int:
        return sum(1 for l, _ in self._zsub if l <= a)

    def dim_B(self, b: int) -> int:
        return sum(1 for l, _ in self._bsub if l <= b)

    def kernel_dims_from(self, a: int) -> list[int]:
        """t(a, y) = dim ker(H_r(W_a) -> H_r(W_y)) for y = a .. N-1."""
        key = ("t", a)
        if key in self._cache:
            return self._cache[key]
        F = self.F
        t = EchelonTable(F)
        zs = [z for l, z in self._zsub if l <= a]
        for z in zs:
            t.insert(z)
        dz, db_a = len(zs), self.dim_B(a)
        out = []
        bl = self._bsub
        i = 0
        for y in range(max(a, 0), self.N):
            while i < len(bl) and bl[i][0] <= y:
                t.insert(bl[i][1])
                i += 1
            # i = dim B_y since _bsub keeps independent boundaries in level order
            out.append(dz + i - len(t) - db_a)
        self._cache[key] = out
        return out

    def image_dims(self, side: str = "sub") -> list[int]:
        """dim I_sub(a) for a = -1 .. N-1 (side "sub"), or dim I_sup(b) for
        b = 0 .. N (side "sup"), from one incremental echelon pass each."""
        key = ("dims", side)
        if key in self._cache:
            return self._cache[key]
        F = self.F
        t = EchelonTable(F)
        zs = self._zsub if side == "sub" else self._zsup
        levels = range(-1, self.N) if side == "sub" else range(self.N, -1, -1)
        out, i = [], 0
        for a in levels:
            while i < len(zs) and (zs[i][0] <= a if side == "sub" else zs[i][0] >= a):
                t.insert(self.coords(zs[i][1]))
                i += 1
            out.append(len(t))
        if side == "sup":
            out.reverse()
        self._cache[key] = out
        return out

    def step_kernel_dims(self) -> list[int]:
        """t(a - 1, a) for a = 0 .. N-1, via dim(Z_{a-1} + B_a) in one pass."""
        if ("step",) in self._cache:
            return self._cache[("step",)]
        t = EchelonTable(self.F)
        zs, bs = self._zsub, self._bsub
        out, i, j = [], 0, 0
        db_prev = 0
        for a in range(self.N):
            while i < len(zs) and zs[i][0] <= a - 1:
                t.insert(zs[i][1])
                i += 1
            while j < len(bs) and bs[j][0] <= a:
                t.insert(bs[j][1])
                j += 1
            # dim(Z_{a-1} cap B_a) - dim B_{a-1}
            out.append(i + j - len(t) - db_prev)
            db_prev = j
        self._cache[("step",)] = out
        return out

    def kernel_to_window_dims(self) -> list[int]:
        """t(a, N-1) = dim Z_a - dim B_a - dim I_sub(a) for a = -1 .. N-1."""
        zl = [l for l, _ in self._zsub]
        bl = [l for l, _ in self._bsub]
        img = self.image_dims("sub")
        return [bisect_right(zl, a) - bisect_right(bl, a) - img[a + 1]
                for a in range(-1, self.N)]

    def t(self, a: int, b: int) -> int:
        if a < 0:
            return 0
        if b < a:
            raise ValueError("t(a, b) needs a <= b")
        return self.kernel_dims_from(a)[b - max(a, 0)]


def presentation(w: CoverWindow, r: int) -> ChainPresentation:
    cache = getattr(w, "_pres", None)
    if cache is None:
        cache = {}
        w._pres = cache
    if r not in cache:
        cache[r] = ChainPresentation(w, r)
    return cache[r]


# -- level helpers -----------------------------------------------------------


def _lvl(w: CoverWindow, a) -> int:
    if isinstance(a, int):
        return a
    return w.level_index(a)


def image_sublevel(w: CoverWindow, r: int, a) -> Subspace:
    """I_a(r) as a subspace of H_r(window) coordinates."""
    return presentation(w, r).I_sub(_lvl(w, a))


def image_superlevel(w: CoverWindow, r: int, b) -> Subspace:
    return presentation(w, r).I_sup(_lvl(w, b))


def delta_hat(w: CoverWindow, r: int, a, b) -> int:
    """Literal quotient (I_a & I^b) / (I_{<a} & I^b + I_a & I^{>b})."""
    P = presentation(w, r)
    a, b = _lvl(w, a), _lvl(w, b)
    Ia, Ib = P.I_sub(a), P.I_sup(b)
    num = intersect(Ia, Ib)
    den = subspace_sum(intersect(P.I_sub(a - 1), Ib), intersect(Ia, P.I_sup(b + 1)))
    return quotient_dim(num, den)


def kernel_T(w: CoverWindow, r: int, a, b) -> HomologyPresentation:
    """T_r(a, b) = (Z_a & B_b) / B_a inside C_r(window)."""
    P = presentation(w, r)
    a, b = _lvl(w, a), _lvl(w, b)
    if a > b:
        raise ValueError("kernel_T needs a <= b")
    return HomologyPresentation(r, intersect(P.Z(a), P.B(b)), P.B(a))


def gamma_hat(w: CoverWindow, r: int, a, b) -> int:
    """Literal T(a,b) / (i T(a-,b) + T(a,b-)), computed in chain coordinates."""
    P = presentation(w, r)
    a, b = _lvl(w, a), _lvl(w, b)
    if not a < b:
        raise ValueError("gamma_hat needs a < b")
    num = intersect(P.Z(a), P.B(b))
    den = subspace_sum(subspace_sum(intersect(P.Z(a - 1), P.B(b)),
                                    intersect(P.Z(a), P.B(b - 1))), P.B(a))
    return quotient_dim(num, den)


def gamma_hat_rank(w: CoverWindow, r: int, a, b) -> int:
    """Rank form t(a,b) - t(a-,b) - t(a,b-) + t(a-,b-) of gamma_hat."""
    P = presentation(w, r)
    a, b = _lvl(w, a), _lvl(w, b)
    if not a < b:
        raise ValueError("gamma_hat needs a < b")
    return P.t(a, b) - P.t(a - 1, b) - P.t(a, b - 1) + P.t(a - 1, b - 1)


def _level_of(w, a):
    return w.critical[a]


def _points(w: CoverWindow, r: int, pairs: Counter, kind: str, central_only: bool):
    out = []
    for (a, b), m in sorted(pairs.items()):
        if central_only and not (w.central_levels[a] and w.central_levels[b]):
            continue
        out.append(SupportPoint(w.critical[a], w.critical[b], m, kind, r, a, b,
                                w.orbit_of_level[a]))
    return out


def delta_support_scan(w: CoverWindow, r: int, central_only: bool = True) -> list[SupportPoint]:
    return _points(w, r, fast_path(w).delta_pairs(r), "delta", central_only)


def gamma_support_scan(w: CoverWindow, r: int, central_only: bool = True) -> list[SupportPoint]:
    return _points(w, r, fast_path(w).gamma_pairs(r), "gamma", central_only)


def delta_jump_scan(w: CoverWindow, r: int, a) -> Counter:
    """Jumps of b -> dim (I_a & I^b) / (I_{<a} & I^b) scanning b downwards.

    The jump at b is the multiplicity of (a, b) in supp delta.
    """
    P = presentation(w, r)
    a = _lvl(w, a)
    out: Counter = Counter()
    prev = 0
    for b in range(P.N - 1, -1, -1):
        Ib = P.I_sup(b)
        s = quotient_dim(intersect(P.I_sub(a), Ib), intersect(P.I_sub(a - 1), Ib))
        if s > prev:
            out[(a, b)] = s - prev
        prev = s
    return out


def relative_lowerstar_dim(w: CoverWindow, r: int, a) -> int:
    """dim H_r(W_a, W_{<a}) from the relative chain complex of level a."""
    a = _lvl(w, a)
    F = w.field
    by_level = getattr(w, "_by_level", None)
    if by_level is None:
        by_level = {}
        for d, simps in enumerate(w.simplices):
            for s in simps:
                by_level.setdefault((d, w.simplex_level(s)), []).append(s)
        w._by_level = by_level
    layers = [by_level.get((d, a), []) for d in (r - 1, r, r + 1)]
    low, mid, high = layers
    idx_low = {s: i for i, s in enumerate(low)}
    idx_mid = {s: i for i, s in enumerate(mid)}

    def rel_rank(cols, idx):
        vecs = []
        for s in cols:
            ent = [(idx[s[:i] + s[i + 1:]], (-1) ** i) for i in range(len(s))
                   if s[:i] + s[i + 1:] in idx]
            vecs.append(F.from_entries(ent))
        t = EchelonTable(F)
        return sum(1 for v in vecs if t.insert(v))

    rk_r = rel_rank(mid, idx_low) if r >= 1 else 0
    rk_rp = rel_rank(high, idx_mid)
    return len(mid) - rk_r - rk_rp


def box_F(w: CoverWindow, r: int, a0: int, a1: int, b0: int, b1: int) -> int:
    """dim F_r of the box (a0, a1] x [b0, b1) by the literal quotient.

    ``a0 < a1`` are sublevel indices (a0 may be -1); ``b0 < b1`` superlevel
    indices (b1 may be N).
    """
    P = presentation(w, r)
    num = intersect(P.I_sub(a1), P.I_sup(b0))
    den = subspace_sum(intersect(P.I_sub(a0), P.I_sup(b0)), intersect(P.I_sub(a1), P.I_sup(b1)))
    return quotient_dim(num, den)


def box_T(w: CoverWindow, r: int, a0: int, a1: int, b0: int, b1: int) -> int:
    """dim T_r of the box (a0, a1] x (b0, b1] by the literal quotient; a1 <= b0."""
    P = presentation(w, r)
    if not (a0 < a1 <= b0 < b1):
        raise ValueError("malformed box")
    num = intersect(P.Z(a1), P.B(b1))
    den = subspace_sum(subspace_sum(intersect(P.Z(a0), P.B(b1)),
                                    intersect(P.Z(a1), P.B(b0))), P.B(a1))
    return quotient_dim(num, den)


def box_dims(w: CoverWindow, r: int, a0: int, a1: int, b0: int, b1: int) -> tuple[int, int]:
    """(dim F_r, dim T_r) of a box; a degenerate side gives 0."""
    f = box_F(w, r, a0, a1, b0, b1) if a0 < a1 and b0 < b1 else 0
    t = box_T(w, r, a0, a1, b0, b1) if a0 < a1 <= b0 < b1 else 0
    return f, t


# -- Novikov-Betti numbers ---------------------------------------------------


def orbit_representatives(w: CoverWindow) -> dict[int, int]:
    """Orbit label -> representative level.

    The central critical value of the orbit closest to 0 for k <= 1 (the
    middle of the central region, ties to the lower one); for k >= 2 the
    central level whose lifts lie closest to the middle of the lattice box.
    """
    reps: dict[int, int] = {}
    best: dict[int, tuple] = {}
    for lv in w.central_indices():
        o = w.orbit_of_level[lv]
        d = abs(w.gens.evaluate(w.critical[lv]))
        key = (w.level_radius[lv], d) if w.k >= 2 else (d,)
        if o not in best or key < best[o]:
            reps[o], best[o] = lv, key
    return reps


def betti_window_top(w: CoverWindow, r: int, route: str = "subspace") -> int:
    """Sum over orbit representatives of dim I_a / I_{<a} in window homology."""
    reps = orbit_representatives(w)
    if route == "subspace":
        P = presentation(w, r)
        return sum(quotient_dim(P.I_sub(a), P.I_sub(a - 1)) for a in reps.values())
    births = Counter(fast_path(w).essential_births(r))
    return sum(births[a] for a in reps.values())


def ordinary_betti(cx, r: int) -> int:
    """Plain Betti number of the base complex over GF(p) by rank-nullity."""
    from .linalg import field
    F = field(cx.field_prime)
    idx = [{s: i for i, s in enumerate(layer)} for layer in cx.simplices]

    def bd(d):
        if d <= 0 or d > cx.dim:
            return SparseMatrix(max(cx.n_simplices(d - 1), 0), cx.n_simplices(d), tuple(
                F.zero() for _ in range(cx.n_simplices(d))), cx.field_prime)
        cols = tuple(F.from_entries((idx[d - 1][s[:i] + s[i + 1:]], (-1) ** i)
                                    for i in range(len(s))) for s in cx.simplices[d])
        return SparseMatrix(cx.n_simplices(d - 1), len(cols), cols, cx.field_prime)

    return cx.n_simplices(r) - rank(bd(r)) - rank(bd(r + 1))
