"""Simplicial 1-cocycles with values in Q + sum Z.theta_i.

Parsing of the JSON input format, validation (triangle condition, genericity,
period group), spanning-tree potentials with deck vectors, the sup-distance
between two cocycles in one class, and seeded perturbation by coboundaries.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Any, Iterable, Mapping

from .lattice import PeriodLattice, lattice_from_periods, small_deck_basis
from .values import Generators, IndeterminateComparison, ValueVector, to_fraction


class ComplexFormatError(ValueError):
    """The input document does not describe a well-formed cocycle complex."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


Edge = tuple[int, int]


@dataclass(frozen=True)
class CocycleComplex:
    """A finite simplicial complex with an edge cocycle.

    Simplices are stored as sorted tuples of vertex indices, grouped by
    dimension. ``edge_values[(i, j)]`` with ``i < j`` is the value on the edge
    oriented from ``i`` to ``j``.
    """

    vertex_names: tuple[str, ...]
    simplices: tuple[tuple[tuple[int, ...], ...], ...]
    edge_values: Mapping[Edge, ValueVector]
    generators: Generators = field(default_factory=Generators)
    field_prime: int = 2

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_names)

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.simplices[1] if self.dim >= 1 else ()

    def n_simplices(self, r: int) -> int:
        return len(self.simplices[r]) if 0 <= r <= self.dim else 0

    def value(self, u: int, v: int) -> ValueVector:
        if u < v:
            return self.edge_values[(u, v)]
        return -self.edge_values[(v, u)]

    def replace_values(self, values: Mapping[Edge, ValueVector]) -> "CocycleComplex":
        return CocycleComplex(self.vertex_names, self.simplices, dict(values),
                              self.generators, self.field_prime)

    def with_prime(self, p: int) -> "CocycleComplex":
        if not is_prime(p):
            raise ComplexFormatError(f"field prime {p} is not prime")
        return CocycleComplex(self.vertex_names, self.simplices, self.edge_values,
                              self.generators, p)

    def to_document(self) -> dict:
        names = self.vertex_names
        maximal = _maximal_simplices(self.simplices)
        return {
            "field_prime": self.field_prime,
            "generators": [
                {"name": nm, "decimal": _frac_text(d), "precision": _frac_text(e)}
                for nm, d, e in zip(self.generators.names, self.generators.decimals,
                                    self.generators.precisions)
            ],
            "vertices": list(names),
            "simplices": [[names[i] for i in s] for s in maximal],
            "cocycle": [
                {"edge": [names[i], names[j]], **self.edge_values[(i, j)].to_json()}
                for (i, j) in self.edges
            ],
        }


def _frac_text(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    # finite decimal when possible, exact fraction otherwise
    d = x.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if d == 1:
        digits = 0
        y = x
        while y.denominator != 1:
            y *= 10
            digits += 1
        s = str(abs(y.numerator)).rjust(digits + 1, "0")
        sign = "-" if x < 0 else ""
        return f"{sign}{s[:-digits]}.{s[-digits:]}"
    return f"{x.numerator}/{x.denominator}"


def _maximal_simplices(simplices) -> list[tuple[int, ...]]:
    faces = set()
    for layer in simplices[1:]:
        for s in layer:
            for f in combinations(s, len(s) - 1):
                faces.add(f)
    out = []
    for layer in simplices:
        out.extend(s for s in layer if s not in faces)
    return out


def _close_under_faces(tops: Iterable[tuple[int, ...]], n_vertices: int):
    layers: dict[int, set[tuple[int, ...]]] = {0: {(i,) for i in range(n_vertices)}}
    for s in tops:
        for r in range(1, len(s)):
            layers.setdefault(r, set()).update(combinations(s, r + 1))
    top = max(layers)
    return tuple(tuple(sorted(layers.get(r, ()))) for r in range(top + 1))


def _theta_independence(gens: Generators, bound: int = 12) -> None:
    """Refuse generator lists with a small integer relation c0 + sum c_i theta_i = 0."""
    n = gens.n
    if n == 0:
        return
    bound = max(2, min(bound, int(round(40000 ** (1.0 / n) / 2))))
    rng = range(-bound, bound + 1)
    for cs in product(rng, repeat=n):
        if not any(cs) or next(c for c in cs if c) < 0:
            continue
        s = sum((c * d for c, d in zip(cs, gens.decimals)), Fraction(0))
        c0 = -round(s)
        err = sum((abs(c) * e for c, e in zip(cs, gens.precisions)), Fraction(0))
        if abs(s + c0) <= err:
            raise ComplexFormatError(
                f"generators look rationally dependent: {c0} + {list(cs)} . theta = 0")


def parse_complex(document: str | bytes | Mapping[str, Any]) -> CocycleComplex:
    """Parse the JSON input document into a :class:`CocycleComplex`."""
    if isinstance(document, (str, bytes)):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ComplexFormatError(f"malformed JSON: {exc}") from exc
    else:
        doc = document
    if not isinstance(doc, Mapping):
        raise ComplexFormatError("document must be a JSON object")
    try:
        p = int(doc.get("field_prime", 2))
    except (TypeError, ValueError) as exc:
        raise ComplexFormatError("field_prime must be an integer") from exc
    if not is_prime(p):
        raise ComplexFormatError(f"field prime {p} is not prime")

    gens_raw = doc.get("generators", []) or []
    try:
        names = tuple(str(g.get("name", f"theta{i + 1}")) for i, g in enumerate(gens_raw))
        decimals = tuple(to_fraction(g["decimal"]) for g in gens_raw)
        precisions = tuple(to_fraction(g.get("precision", "1e-9")) for g in gens_raw)
    except (KeyError, ValueError, TypeError, AttributeError, ZeroDivisionError) as exc:
        raise ComplexFormatError(f"malformed generator entry: {exc}") from exc
    if any(e < 0 for e in precisions):
        raise ComplexFormatError("generator precision must be non-negative")
    gens = Generators(names, decimals, precisions)
    _theta_independence(gens)

    verts = doc.get("vertices")
    if not isinstance(verts, list) or not verts:
        raise ComplexFormatError("'vertices' must be a non-empty list")
    vnames = tuple(str(v) for v in verts)
    if len(set(vnames)) != len(vnames):
        raise ComplexFormatError("duplicate vertex names")
    index = {v: i for i, v in enumerate(vnames)}

    def lookup(v) -> int:
        try:
            return index[str(v)]
        except KeyError:
            raise ComplexFormatError(f"simplex references unknown vertex {v!r}") from None

    tops = []
    for s in doc.get("simplices", []) or []:
        if not isinstance(s, list) or not s:
            raise ComplexFormatError(f"malformed simplex {s!r}")
        idx = tuple(sorted(lookup(v) for v in s))
        if len(set(idx)) != len(idx):
            raise ComplexFormatError(f"simplex with repeated vertex {s!r}")
        tops.append(idx)
    simplices = _close_under_faces(tops, len(vnames))

    edge_set = set(simplices[1]) if len(simplices) > 1 else set()
    values: dict[Edge, ValueVector] = {}
    for entry in doc.get("cocycle", []) or []:
        try:
            u, v = (lookup(x) for x in entry["edge"])
            rational = to_fraction(entry.get("rational", 0))
            lat = tuple(int(c) for c in entry.get("lattice", [0] * gens.n))
        except ComplexFormatError:
            raise
        except (KeyError, ValueError, TypeError, ZeroDivisionError) as exc:
            raise ComplexFormatError(f"malformed cocycle entry {entry!r}: {exc}") from exc
        if len(lat) != gens.n:
            raise ComplexFormatError(
                f"cocycle entry {entry!r} has {len(lat)} lattice coordinates, expected {gens.n}")
        val = ValueVector(rational, lat)
        key = (min(u, v), max(u, v))
        if key not in edge_set:
            raise ComplexFormatError(f"cocycle entry on a non-edge {entry['edge']!r}")
        if u > v:
            val = -val
        if key in values and values[key] != val:
            raise ComplexFormatError(f"conflicting values on edge {entry['edge']!r}")
        values[key] = val
    missing = [e for e in sorted(edge_set) if e not in values]
    if missing:
        u, v = missing[0]
        raise ComplexFormatError(f"missing edge value on [{vnames[u]}, {vnames[v]}]")
    return CocycleComplex(vnames, simplices, values, gens, p)


def load_complex(path) -> CocycleComplex:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_complex(fh.read())


# -- potentials -------------------------------------------------------------


def _adjacency(cx: CocycleComplex) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(cx.n_vertices)]
    for u, v in cx.edges:
        adj[u].append(v)
        adj[v].append(u)
    for row in adj:
        row.sort()
    return adj


def _spanning_forest(cx: CocycleComplex, values_of=None):
    """Depth-first spanning forest; returns (phi, component, tree edges)."""
    val = values_of or cx.value
    n = cx.n_vertices
    zero = ValueVector.zero(cx.generators.n)
    phi: list[ValueVector | None] = [None] * n
    comp = [-1] * n
    tree: set[Edge] = set()
    adj = _adjacency(cx)
    c = 0
    for root in range(n):
        if phi[root] is not None:
            continue
        phi[root] = zero
        comp[root] = c
        stack = [(root, iter(adj[root]))]
        while stack:
            u, it = stack[-1]
            for w in it:
                if phi[w] is None:
                    phi[w] = phi[u] + val(u, w)
                    comp[w] = c
                    tree.add((min(u, w), max(u, w)))
                    stack.append((w, iter(adj[w])))
                    break
            else:
                stack.pop()
        c += 1
    return phi, comp, tree


@dataclass(frozen=True)
class PotentialAssignment:
    """Vertex potentials and deck vectors.

    ``delta(u, v) = phi[v] - phi[u] + lattice.element(deck[(u, v)])`` for every
    stored edge ``u < v``.
    """

    phi: tuple[ValueVector, ...]
    deck: Mapping[Edge, tuple[int, ...]]
    lattice: PeriodLattice
    component: tuple[int, ...]
    tree_edges: frozenset[Edge]

    @property
    def k(self) -> int:
        return self.lattice.rank

    def deck_between(self, u: int, v: int) -> tuple[int, ...]:
        if u == v:
            return (0,) * self.k
        if u < v:
            return self.deck[(u, v)]
        return tuple(-c for c in self.deck[(v, u)])


def _periods(cx: CocycleComplex, phi, tree) -> dict[Edge, ValueVector]:
    return {e: phi[e[0]] + cx.value(*e) - phi[e[1]] for e in cx.edges if e not in tree}


def potentials(cx: CocycleComplex) -> PotentialAssignment:
    """Integrate the cocycle along a depth-first spanning forest."""
    phi, comp, tree = _spanning_forest(cx)
    periods = _periods(cx, phi, tree)
    lat = lattice_from_periods([p for p in periods.values() if not p.is_zero()],
                               cx.generators.n, cx.generators)
    U = small_deck_basis([lat.coordinates(p) for e, p in periods.items() if e not in tree],
                         lat.rank)
    if U is not None:
        lat = lat.rebased(U, cx.generators)
    deck: dict[Edge, tuple[int, ...]] = {}
    for e in cx.edges:
        if e in tree:
            deck[e] = (0,) * lat.rank
            continue
        m = lat.coordinates(periods[e])
        if m is None:
            raise ComplexFormatError(f"period on edge {e} is not in the period lattice")
        deck[e] = m
    return PotentialAssignment(tuple(phi), deck, lat, tuple(comp), frozenset(tree))


# -- validation -------------------------------------------------------------


@dataclass
class ValidationReport:
    passed: bool
    k: int
    period_basis: list[ValueVector]
    period_decimals: list[float]
    triangle_violations: list[list[str]]
    genericity_violations: list[dict]
    messages: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "k": self.k,
            "period_basis": [b.to_json() for b in self.period_basis],
            "period_decimals": self.period_decimals,
            "triangle_violations": self.triangle_violations,
            "genericity_violations": self.genericity_violations,
            "messages": self.messages,
        }


def triangle_sum(cx: CocycleComplex, tri: tuple[int, int, int]) -> ValueVector:
    x, y, z = tri
    return cx.value(x, y) + cx.value(y, z) + cx.value(z, x)


def validate(cx: CocycleComplex) -> ValidationReport:
    names = cx.vertex_names
    tri_bad = []
    if cx.dim >= 2:
        for t in cx.simplices[2]:
            if not triangle_sum(cx, t).is_zero():
                tri_bad.append([names[i] for i in t])
    gen_bad = []
    for u, v in cx.edges:
        val = cx.edge_values[(u, v)]
        if val.is_zero():
            gen_bad.append({"edge": [names[u], names[v]], "reason": "zero value"})
            continue
        try:
            cx.generators.sign(val)
        except IndeterminateComparison:
            gen_bad.append({"edge": [names[u], names[v]],
                            "reason": "sign undecidable at the declared precision"})
    messages = []
    basis: list[ValueVector] = []
    k = 0
    if not tri_bad:
        try:
            pot = potentials(cx)
            basis = list(pot.lattice.echelon_basis(cx.generators))
            k = pot.lattice.rank
        except (IndeterminateComparison, ComplexFormatError) as exc:
            messages.append(str(exc))
    else:
        messages.append("triangle condition fails; period group not computed")
    passed = not tri_bad and not gen_bad and not messages
    return ValidationReport(
        passed=passed,
        k=k,
        period_basis=basis,
        period_decimals=[cx.generators.to_float(b) for b in basis],
        triangle_violations=tri_bad,
        genericity_violations=gen_bad,
        messages=messages,
    )


def is_generic(cx: CocycleComplex) -> bool:
    for val in cx.edge_values.values():
        if val.is_zero():
            return False
        try:
            cx.generators.sign(val)
        except IndeterminateComparison:
            return False
    return True


# -- metric and perturbation ------------------------------------------------


def _same_complex(a: CocycleComplex, b: CocycleComplex) -> bool:
    return (a.vertex_names == b.vertex_names and a.simplices == b.simplices
            and a.generators == b.generators)


def form_distance(cx1: CocycleComplex, cx2: CocycleComplex) -> float:
    """Sup-distance between the lifts of two cocycles in the same class."""
    if not _same_complex(cx1, cx2):
        raise ValueError("cocycles live on different complexes")

    def diff(u, v):
        return cx2.value(u, v) - cx1.value(u, v)

    phi, comp, tree = _spanning_forest(cx1, diff)
    for e in cx1.edges:
        if e not in tree and not (phi[e[0]] + diff(*e) - phi[e[1]]).is_zero():
            raise ValueError("cocycles are in different cohomology classes")
    ev = [cx1.generators.evaluate(x) for x in phi]
    best = Fraction(0)
    for c in set(comp):
        vals = [ev[i] for i in range(len(ev)) if comp[i] == c]
        best = max(best, (max(vals) - min(vals)) / 2)
    return float(best)


def add_coboundary(cx: CocycleComplex, h: Iterable[Fraction]) -> CocycleComplex:
    h = list(h)
    n = cx.generators.n
    return cx.replace_values({
        (u, v): val + ValueVector(h[v] - h[u], (0,) * n)
        for (u, v), val in cx.edge_values.items()
    })


def perturb(cx: CocycleComplex, epsilon, seed: int, retries: int = 100,
            grid: int = 1000) -> CocycleComplex:
    """Add the coboundary of a random rational potential with values in [-eps, eps]."""
    eps = to_fraction(epsilon)
    if eps < 0:
        raise ValueError("epsilon must be non-negative")
    if eps == 0:
        return cx
    rng = random.Random(seed)
    for _ in range(retries):
        h = [eps * Fraction(rng.randint(-grid, grid), grid) for _ in range(cx.n_vertices)]
        out = add_coboundary(cx, h)
        if is_generic(out):
            return out
    raise ValueError(f"no generic perturbation found after {retries} draws")


def negate(cx: CocycleComplex) -> CocycleComplex:
    return cx.replace_values({e: -v for e, v in cx.edge_values.items()})


def shift_potential(cx: CocycleComplex, vertex: int, c) -> CocycleComplex:
    """Coboundary of c times the indicator of one vertex (helper for tests)."""
    h = [Fraction(0)] * cx.n_vertices
    h[vertex] = to_fraction(c)
    return add_coboundary(cx, h)
