"""Folded configurations, their metrics, and the identity/duality/stability checks."""

from __future__ import annotations

import random
import statistics
from itertools import combinations
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .cocycle import CocycleComplex, form_distance, negate, perturb, potentials
from .cover import CoverWindow, WindowError, WindowSpec, build_window
from .invariants import SupportPoint, betti_window_top, delta_support_scan, fast_path, \
    gamma_support_scan, orbit_representatives, presentation, quotient_dim, \
    relative_lowerstar_dim
from .twisted import OracleResult, novikov_betti_alg_oracle, novikov_betti_exact_k1
from .values import Generators, ValueVector


class FoldError(ValueError):
    """A support point has no orbit representative in the central region."""

    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


@dataclass
class Configuration:
    """Finitely supported multiplicity function on bar lengths."""

    kind: str
    r: int
    points: dict[ValueVector, int]
    gens: Generators = field(default_factory=Generators, compare=False, repr=False)

    def __post_init__(self):
        self.points = {s: m for s, m in self.points.items() if m}
        if any(m < 0 for m in self.points.values()):
            raise ValueError("negative multiplicity")
        if self.kind == "gamma":
            for s in self.points:
                if self.gens.sign(s) <= 0:
                    raise ValueError("gamma configurations live on positive lengths")

    @property
    def total(self) -> int:
        return sum(self.points.values())

    def floats(self) -> list[float]:
        out = []
        for s, m in sorted(self.points.items(), key=lambda kv: self.gens.evaluate(kv[0])):
            out.extend([self.gens.to_float(s)] * m)
        return out

    def as_dict(self) -> dict[float, int]:
        return {self.gens.to_float(s): m for s, m in self.sorted_items()}

    def sorted_items(self):
        return sorted(self.points.items(), key=lambda kv: self.gens.evaluate(kv[0]))

    def reflected(self) -> "Configuration":
        return Configuration(self.kind, self.r, {-s: m for s, m in self.points.items()}, self.gens)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "r": self.r,
            "points": [{"s_exact": s.to_json(), "s": self.gens.to_float(s), "mult": m}
                       for s, m in self.sorted_items()],
        }

    @classmethod
    def from_json(cls, obj: dict, gens: Generators | None = None) -> "Configuration":
        """Read a configuration; without generators every length must be rational."""
        pts: dict[ValueVector, int] = {}
        for p in obj["points"]:
            if "s_exact" in p:
                s = ValueVector.from_json(p["s_exact"])
            else:
                s = ValueVector.of(str(p["s"]), (0,) * (gens.n if gens else 0))
            pts[s] = pts.get(s, 0) + int(p["mult"])
        if gens is None:
            if any(any(s.lattice) for s in pts):
                raise ValueError("irrational lengths need the generator list")
            n = len(next(iter(pts)).lattice) if pts else 0
            gens = Generators(("theta",) * n, (Fraction(0),) * n, (Fraction(0),) * n)
        return cls(obj["kind"], int(obj["r"]), pts, gens)


@dataclass(frozen=True)
class BaseSelection:
    """One representative critical level per orbit."""

    reps: dict[int, int]

    @classmethod
    def of(cls, w: CoverWindow) -> "BaseSelection":
        return cls(orbit_representatives(w))


def fold(w: CoverWindow, points: Sequence[SupportPoint], base: BaseSelection,
         by: str = "birth") -> Configuration:
    """Fold central support points into translation classes.

    A class is keyed by the orbit of its birth (or death) level and its length
    b - a. Every central member of a class must carry the same multiplicity,
    and so must every translate whose endpoints are both central.
    """
    kind = points[0].kind if points else "delta"
    r = points[0].r if points else 0
    table = {(p.a_level, p.b_level): p.multiplicity for p in points}
    members: dict[int, list[int]] = {}
    for lv in w.central_indices():
        members.setdefault(w.orbit_of_level[lv], []).append(lv)
    classes: dict[tuple[int, ValueVector], int] = {}
    for p in points:
        lv = p.a_level if by == "birth" else p.b_level
        orbit = w.orbit_of_level[lv]
        witness = {"a": w.gens.to_float(p.a), "b": w.gens.to_float(p.b), "r": r, "kind": kind}
        if orbit not in base.reps:
            raise FoldError("support point has no orbit representative in the central region",
                            witness)
        key = (orbit, p.b - p.a)
        if classes.setdefault(key, p.multiplicity) != p.multiplicity:
            raise FoldError("support is not invariant under deck translation", witness)
        if not w.k:
            continue
        for other in members.get(orbit, ()):
            if other == lv:
                continue
            g = w.deck_offset(lv, other)
            a2, b2 = w.translate(p.a_level, g), w.translate(p.b_level, g)
            if a2 is None or b2 is None or not (w.central_levels[a2] and w.central_levels[b2]):
                continue
            if table.get((a2, b2), 0) != p.multiplicity:
                raise FoldError("support is not invariant under deck translation", witness)
    out: dict[ValueVector, int] = {}
    for (_, s), m in classes.items():
        out[s] = out.get(s, 0) + m
    return Configuration(kind, r, out, w.gens)


# -- metrics -----------------------------------------------------------------


def _perfect_at(adj: np.ndarray) -> bool:
    n = adj.shape[0]
    if n == 0:
        return True
    match = maximum_bipartite_matching(csr_matrix(adj.astype(np.int8)), perm_type="column")
    return bool(np.all(match >= 0))


def _search(cands: Iterable[float], feasible) -> float:
    cs = sorted(set(cands))
    lo, hi = 0, len(cs) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(cs[mid]):
            hi = mid
        else:
            lo = mid + 1
    return cs[lo]


def bottleneck_delta(c1: Configuration, c2: Configuration) -> float:
    """Min over perfect matchings of the largest |s - s'|."""
    x, y = np.array(c1.floats()), np.array(c2.floats())
    if len(x) != len(y):
        raise ValueError("configurations have different total multiplicity")
    if len(x) == 0:
        return 0.0
    dist = np.abs(x[:, None] - y[None, :])
    return float(_search(dist.ravel().tolist(), lambda rho: _perfect_at(dist <= rho + 1e-12)))


def bottleneck_gamma(c1: Configuration, c2: Configuration) -> float:
    """Partial matching where an unmatched point costs its distance to (-inf, 0]."""
    x, y = np.array(c1.floats()), np.array(c2.floats())
    n, m = len(x), len(y)
    if n + m == 0:
        return 0.0
    dist = np.abs(x[:, None] - y[None, :]) if n and m else np.zeros((n, m))
    cands = [0.0] + dist.ravel().tolist() + x.tolist() + y.tolist()

    def feasible(rho):
        rho += 1e-12
        adj = np.zeros((n + m, m + n), dtype=bool)
        adj[:n, :m] = dist <= rho
        adj[:n, m:] = np.diag(x <= rho) if n else np.zeros((0, n), bool)
        adj[n:, :m] = np.diag(y <= rho) if m else np.zeros((0, m), bool)
        adj[n:, m:] = True
        return _perfect_at(adj)

    return float(_search(cands, feasible))


# -- analysis of one cocycle ------------------------------------------------


@dataclass
class DegreeResult:
    r: int
    delta: Configuration
    gamma: Configuration
    delta_points: list[SupportPoint]
    gamma_points: list[SupportPoint]
    betti_top: int
    betti_fast: int
    lowerstar_sum: int
    betti_oracle: list[OracleResult] = field(default_factory=list)
    betti_exact: int | None = None

    @property
    def rank_d(self) -> int:
        return self.gamma.total

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "delta": self.delta.to_json(),
            "gamma": self.gamma.to_json(),
            "betti": self.betti_top,
            "rank_d": self.rank_d,
            "lowerstar_orbit_sum": self.lowerstar_sum,
            "betti_oracle": [o.to_json() for o in self.betti_oracle],
            "betti_exact": self.betti_exact,
        }


@dataclass
class Analysis:
    cx: CocycleComplex
    window: CoverWindow
    base: BaseSelection
    degrees: list[int]
    results: dict[int, DegreeResult]

    def to_json(self) -> dict:
        return {
            "window": self.window.summary(),
            "degrees": {str(r): self.results[r].to_json() for r in self.degrees},
            "betti": [self.results[r].betti_top for r in self.degrees],
        }


def default_degrees(cx: CocycleComplex) -> list[int]:
    return list(range(cx.dim + 1))


def potential_spread(pot, gens: Generators) -> ValueVector:
    """Value diameter of a lifted fundamental domain: max phi - min phi + P."""
    big = pot.lattice.period_scale(gens)
    return gens.max(list(pot.phi)) - gens.min(list(pot.phi)) + big


def build_analysis_window(cx: CocycleComplex, spec: WindowSpec | None = None,
                          pilot: bool = True, rounds: int = 3) -> CoverWindow:
    """Build the window; with no margin given, size it from pilot passes.

    The margin is the largest of P, twice the longest central gamma bar and
    the value spread of a fundamental domain. Unless lo/hi were given, the
    central region is [-H, H] with H the largest of 2P, the spread and the
    longest central bar plus P, so every support class has a translate with
    both ends central. With both lo and hi given the margin is capped so the
    central region keeps width P plus the longest gamma bar (a third of the
    window if that is impossible). Passes repeat until the sizes stop growing.
    """
    spec = spec or WindowSpec()
    pot = potentials(cx)
    w = build_window(cx, pot, spec.lo, spec.hi, spec.margin, spec.box_radius, spec.box_margin)
    if not pilot or spec.margin is not None or w.k == 0:
        return w
    gens = cx.generators
    big = pot.lattice.period_scale(gens)
    spread = potential_spread(pot, gens)
    for _ in range(rounds):
        margins = [big, spread]
        halves = [big.scale(2), spread]
        spans = [big]
        for r in range(w.dim + 1):
            for p in gamma_support_scan(w, r):
                margins.append((p.b - p.a).scale(2))
                halves.append(p.b - p.a + big)
                spans.append(p.b - p.a + big)
            for p in delta_support_scan(w, r):
                d = p.b - p.a
                halves.append((d if gens.sign(d) >= 0 else -d) + big)
        margin, half = gens.max(margins), gens.max(halves)
        if spec.lo is not None and spec.hi is not None:
            # leave a central region of width P + longest gamma bar when
            # possible; delta lengths of a truncated window are not reliable
            width = spec.hi - spec.lo
            cap = (width - gens.max(spans)).scale(Fraction(1, 2))
            if gens.sign(cap) <= 0:
                cap = width.scale(Fraction(1, 3))
            margin = gens.min([margin, cap])
        lo = spec.lo if spec.lo is not None else -half - margin
        hi = spec.hi if spec.hi is not None else half + margin
        if margin == w.margin and lo == w.lo and hi == w.hi:
            break
        w = build_window(cx, pot, lo, hi, margin, spec.box_radius, spec.box_margin)
    return w


def analyze(cx: CocycleComplex, spec: WindowSpec | None = None,
            degrees: Sequence[int] | None = None, oracle_trials: int = 0,
            seed: int = 0, literal: bool = True, pilot: bool = True) -> Analysis:
    w = build_analysis_window(cx, spec, pilot)
    degrees = list(degrees) if degrees is not None else default_degrees(cx)
    base = BaseSelection.of(w)
    results = {}
    for r in degrees:
        dp, gp = delta_support_scan(w, r), gamma_support_scan(w, r)
        dconf = fold(w, dp, base) if dp else Configuration("delta", r, {}, w.gens)
        gconf = fold(w, gp, base) if gp else Configuration("gamma", r, {}, w.gens)
        dconf.r = gconf.r = r
        res = DegreeResult(
            r=r, delta=dconf, gamma=gconf, delta_points=dp, gamma_points=gp,
            betti_top=betti_window_top(w, r, "subspace" if literal else "fast"),
            betti_fast=betti_window_top(w, r, "fast"),
            lowerstar_sum=sum(relative_lowerstar_dim(w, r, a) for a in base.reps.values()),
        )
        if oracle_trials:
            res.betti_oracle.append(novikov_betti_alg_oracle(cx, r, seed, oracle_trials, w.pot))
            if w.k <= 1:
                res.betti_exact = novikov_betti_exact_k1(cx, r, w.pot)
        results[r] = res
    return Analysis(cx, w, base, degrees, results)


# -- checks ------------------------------------------------------------------


@dataclass
class CheckReport:
    name: str
    passed: bool
    per_degree: dict[int, bool] = field(default_factory=dict)
    witnesses: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    def fail(self, degree: int | None, **witness) -> None:
        self.passed = False
        if degree is not None:
            self.per_degree[degree] = False
        witness.setdefault("r", degree)
        self.witnesses.append(witness)

    def to_json(self) -> dict:
        return {"check": self.name, "pass": self.passed,
                "per_degree": {str(r): ok for r, ok in sorted(self.per_degree.items())},
                "witnesses": self.witnesses, "summary": self.summary}


def theorem_tt_check(cx: CocycleComplex, degrees: Sequence[int] | None = None,
                     spec: WindowSpec | None = None, trials: int = 5, seed: int = 0,
                     primes: Sequence[int] = ()) -> CheckReport:
    """Total delta mass vs Novikov-Betti numbers, the lower-star identity, rank d_r.

    rank d_r is cross-checked through rho_r = c_r - beta_r - rho_{r-1}
    (rho_{-1} = 0), where c_r is the orbit sum of lower-star dimensions and
    beta_r the oracle value; neither side uses persistence pairs.
    """
    rep = CheckReport("tt", True)
    try:
        an = analyze(cx, spec, degrees, oracle_trials=trials, seed=seed, literal=False)
    except FoldError as exc:
        rep.fail(None, reason=str(exc), **exc.witness)
        return rep
    extra = {p: {r: novikov_betti_alg_oracle(cx.with_prime(p), r, seed, trials).betti
                 for r in an.degrees} for p in primes if p != cx.field_prime}
    rho_prev = 0
    for r in an.degrees:
        res = an.results[r]
        rep.per_degree[r] = True
        oracle = res.betti_oracle[0].betti
        sd, sg = res.delta.total, res.gamma.total
        sg_prev = an.results[r - 1].gamma.total if (r - 1) in an.results else 0
        cell = {"r": r, "sum_delta": sd, "betti_top": res.betti_top, "betti_oracle": oracle,
                "betti_exact": res.betti_exact, "lowerstar": res.lowerstar_sum,
                "sum_gamma": sg, "sum_gamma_prev": sg_prev}
        if not (sd == res.betti_top == oracle):
            rep.fail(r, reason="total delta mass differs from the Novikov-Betti number", **cell)
        if res.betti_exact is not None and res.betti_exact != oracle:
            rep.fail(r, reason="exact and random-evaluation ranks disagree", **cell)
        for p, vals in extra.items():
            cell[f"betti_oracle_p{p}"] = vals[r]
        if res.lowerstar_sum != sd + sg + sg_prev:
            rep.fail(r, reason="lower-star identity fails", **cell)
        rho = res.lowerstar_sum - oracle - rho_prev
        cell["rank_d"] = sg
        cell["rank_d_from_counts"] = rho
        if an.degrees[: r + 1] == list(range(r + 1)):
            if rho != sg:
                rep.fail(r, reason="rank d_r differs from total gamma mass", **cell)
        rho_prev = rho
        rep.summary[str(r)] = cell
    return rep


def is_closed_pseudomanifold(cx: CocycleComplex, n: int) -> bool:
    if cx.dim != n or n < 1:
        return False
    count: Counter = Counter()
    for s in cx.simplices[n]:
        for i in range(n + 1):
            count[s[:i] + s[i + 1:]] += 1
    if any(count.get(f, 0) != 2 for f in cx.simplices[n - 1]):
        return False
    # every simplex lies in a top simplex
    for r in range(n):
        covered = set()
        for s in cx.simplices[n]:
            covered.update(combinations(s, r + 1))
        if any(f not in covered for f in cx.simplices[r]):
            return False
    return True


def duality_check(cx: CocycleComplex, n: int, degrees: Sequence[int] | None = None,
                  spec: WindowSpec | None = None, check_manifold: bool = True) -> CheckReport:
    """delta_r(t) = delta_{n-r}(-t) and gamma_r(t) for w = gamma_{n-r-1}(t) for -w."""
    rep = CheckReport("duality", True)
    if check_manifold and not is_closed_pseudomanifold(cx, n):
        rep.fail(None, reason=f"complex is not a closed {n}-dimensional pseudomanifold")
        return rep
    degrees = list(degrees) if degrees is not None else list(range(n + 1))
    all_r = list(range(n + 1))
    try:
        pos = analyze(cx, spec, all_r)
        neg = analyze(negate(cx), spec, all_r)
    except FoldError as exc:
        rep.fail(None, reason=str(exc), **exc.witness)
        return rep
    for r in degrees:
        rep.per_degree[r] = True
        d_left = pos.results[r].delta
        d_right = pos.results[n - r].delta.reflected()
        if d_left.points != d_right.points:
            rep.fail(r, reason="delta duality", left=d_left.to_json(), right=d_right.to_json())
        if 0 <= n - r - 1 <= n:
            g_left = pos.results[r].gamma
            g_right = neg.results[n - r - 1].gamma
            if g_left.points != g_right.points:
                rep.fail(r, reason="gamma duality", left=g_left.to_json(),
                         right=g_right.to_json())
        rep.summary[str(r)] = {"delta": d_left.as_dict(), "gamma": pos.results[r].gamma.as_dict(),
                               "gamma_neg_dual": neg.results[n - r - 1].gamma.as_dict()
                               if n - r - 1 >= 0 else {}}
    return rep


def stability_probe(cx: CocycleComplex, epsilons: Sequence, trials: int = 20, seed: int = 0,
                    degrees: Sequence[int] = (0,), spec: WindowSpec | None = None,
                    factor: float = 2.0) -> CheckReport:
    """Empirical continuity probe of the configurations under small perturbations.

    The bound ``factor * form_distance`` is a regression threshold, not a
    proven inequality.
    """
    rep = CheckReport("stability", True)
    base = analyze(cx, spec, degrees, literal=False)
    master = random.Random(seed)
    eps_sorted = sorted((Fraction(str(e)) for e in epsilons), reverse=True)
    seeds = {e: [master.randrange(2 ** 31) for _ in range(trials)] for e in eps_sorted}
    medians: dict[int, list[float]] = {r: [] for r in degrees}
    for e in eps_sorted:
        dists: dict[int, list[float]] = {r: [] for r in degrees}
        for s in seeds[e]:
            other = perturb(cx, e, s)
            fd = form_distance(cx, other)
            an = analyze(other, _same_spec(base), degrees, literal=False, pilot=False)
            for r in degrees:
                dg = bottleneck_gamma(base.results[r].gamma, an.results[r].gamma)
                res_d = base.results[r].delta
                if res_d.total != an.results[r].delta.total:
                    rep.fail(r, reason="total delta mass changed", eps=float(e), seed=s)
                    dd = float("inf")
                else:
                    dd = bottleneck_delta(res_d, an.results[r].delta)
                dists[r].append(dg)
                if dg > factor * fd + 1e-9 or dd > factor * fd + 1e-9:
                    rep.fail(r, reason="configuration moved more than the bound", eps=float(e),
                             seed=s, form_distance=fd, gamma_distance=dg, delta_distance=dd)
        for r in degrees:
            medians[r].append(statistics.median(dists[r]) if dists[r] else 0.0)
    for r in degrees:
        rep.per_degree.setdefault(r, True)
        m = medians[r]
        if any(m[i + 1] > m[i] + 1e-12 for i in range(len(m) - 1)):
            rep.fail(r, reason="median distance not non-increasing in epsilon",
                     medians=m, epsilons=[float(e) for e in eps_sorted])
        rep.summary[str(r)] = {"epsilons": [float(e) for e in eps_sorted], "medians": m}
    return rep


def _same_spec(an: Analysis) -> WindowSpec:
    w = an.window
    return WindowSpec(w.lo, w.hi, w.margin)


def configurations_equal(a: Analysis, b: Analysis, degrees: Sequence[int]) -> list[dict]:
    diffs = []
    for r in degrees:
        for kind in ("delta", "gamma"):
            x = getattr(a.results[r], kind)
            y = getattr(b.results[r], kind)
            if x.points != y.points:
                diffs.append({"r": r, "kind": kind, "first": x.as_dict(), "second": y.as_dict()})
    return diffs


def window_stabilization_check(cx: CocycleComplex, w1: WindowSpec, w2: WindowSpec,
                               degrees: Sequence[int] | None = None) -> CheckReport:
    rep = CheckReport("windows", True)
    degrees = list(degrees) if degrees is not None else default_degrees(cx)
    try:
        a1 = analyze(cx, w1, degrees, literal=False)
        a2 = analyze(cx, w2, degrees, literal=False)
    except (FoldError, WindowError) as exc:
        rep.fail(None, reason=str(exc), **getattr(exc, "witness", {}))
        return rep
    orbits = len(set(a1.window.orbit_of_level))
    if len(a1.base.reps) < orbits or len(a2.base.reps) < len(set(a2.window.orbit_of_level)):
        missing = sorted(set(a1.window.orbit_of_level) - set(a1.base.reps))
        rep.fail(None, reason="central region misses an orbit representative",
                 orbits=missing)
    for d in configurations_equal(a1, a2, degrees):
        rep.fail(d["r"], reason="configurations differ between windows", **d)
    for r in degrees:
        rep.per_degree.setdefault(r, True)
    rep.summary = {"first": a1.window.summary()["simplex_counts"],
                   "second": a2.window.summary()["simplex_counts"]}
    return rep


def sum_identity_check(w: CoverWindow, degrees: Sequence[int]) -> CheckReport:
    """Row/column sums of the persistence pairs against ranks of image subspaces.

    At every central level a: delta births at a equal the jump of the sublevel
    image, delta deaths at a the jump of the superlevel image, gamma births and
    deaths match the kernel counts t(., .), and the lower-star dimension splits
    into delta and gamma births plus degree r-1 gamma deaths. The pair tables
    must also be invariant under the deck generators.
    """
    rep = CheckReport("sum-identities", True)
    fp = fast_path(w)
    central = w.central_indices()
    cset = set(central)
    moves = []
    for i in range(w.k):
        for sgn in (1, -1):
            g = [0] * w.k
            g[i] = sgn
            moves.append(tuple(g))
    for r in degrees:
        rep.per_degree[r] = True
        P = presentation(w, r)
        dl = fp.delta_pairs(r)
        gm = fp.gamma_pairs(r)
        gm_prev = fp.gamma_pairs(r - 1) if r >= 1 else Counter()
        row_d, col_d, row_g, col_g, col_gp = Counter(), Counter(), Counter(), Counter(), Counter()
        for (a, b), m in dl.items():
            row_d[a] += m
            col_d[b] += m
        for (a, b), m in gm.items():
            row_g[a] += m
            col_g[b] += m
        for (a, b), m in gm_prev.items():
            col_gp[b] += m
        img_sub, img_sup = P.image_dims("sub"), P.image_dims("sup")
        to_window, step = P.kernel_to_window_dims(), P.step_kernel_dims()
        for a in central:
            births = img_sub[a + 1] - img_sub[a]
            if row_d[a] != births:
                rep.fail(r, identity="delta births", a=a, lhs=row_d[a], rhs=births)
            deaths = img_sup[a] - img_sup[a + 1]
            if col_d[a] != deaths:
                rep.fail(r, identity="delta deaths", b=a, lhs=col_d[a], rhs=deaths)
            g_births = to_window[a + 1] - to_window[a] + step[a]
            if row_g[a] != g_births:
                rep.fail(r, identity="gamma births", a=a, lhs=row_g[a], rhs=g_births)
            if col_g[a] != step[a]:
                rep.fail(r, identity="gamma deaths", b=a, lhs=col_g[a], rhs=step[a])
            rel = relative_lowerstar_dim(w, r, a)
            if rel != row_d[a] + row_g[a] + col_gp[a]:
                rep.fail(r, identity="lower-star split", a=a, lhs=rel,
                         rhs=[row_d[a], row_g[a], col_gp[a]])
        # a mismatch (a, b) -> (a2, b2) is seen from whichever side is nonzero
        for table, name in ((dl, "delta"), (gm, "gamma")):
            for (a, b), m in table.items():
                if a not in cset or b not in cset:
                    continue
                for g in moves:
                    a2, b2 = w.translate(a, g), w.translate(b, g)
                    if a2 is None or b2 is None or a2 not in cset or b2 not in cset:
                        continue
                    if table.get((a2, b2), 0) != m:
                        rep.fail(r, identity=f"{name} deck invariance", a=a, b=b, g=list(g))
    return rep
