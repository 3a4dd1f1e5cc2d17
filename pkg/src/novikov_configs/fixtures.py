"""Named test complexes and a seeded generator of random cocycle complexes."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import Callable

from .cocycle import CocycleComplex, parse_complex, validate
from .lattice import integer_kernel

SQRT2 = {"name": "theta1", "decimal": "1.41421356237", "precision": "1e-9"}


def _doc(vertices, simplices, values, gens=(), p=2) -> dict:
    n = len(gens)
    return {
        "field_prime": p,
        "generators": list(gens),
        "vertices": list(vertices),
        "simplices": [list(s) for s in simplices],
        "cocycle": [{"edge": [u, v], "rational": str(q), "lattice": list(lat) or [0] * n}
                    for (u, v), (q, lat) in values.items()],
    }


def _cycle_doc(values: list[str]) -> dict:
    n = len(values)
    names = [f"v{i}" for i in range(n)]
    edges = [(names[i], names[(i + 1) % n]) for i in range(n)]
    return _doc(names, edges, {e: (v, ()) for e, v in zip(edges, values)})


def fix_a() -> dict:
    """Triangle boundary with values 1, 1, 1 (one period of 3)."""
    return _cycle_doc(["1", "1", "1"])


def fix_b() -> dict:
    """4-cycle with values 2, -1, 2, -1: a zigzag of period 2."""
    return _cycle_doc(["2", "-1", "2", "-1"])


def fix_c() -> dict:
    """Path v0 - v1 - v2 with values 2, -1 (an exact cocycle)."""
    return _doc(["v0", "v1", "v2"], [("v0", "v1"), ("v1", "v2")],
                {("v0", "v1"): ("2", ()), ("v1", "v2"): ("-1", ())})


def _torus(h: list[list[Fraction]], theta: bool) -> dict:
    """3x3 grid torus, class dx (+ theta dy), plus the coboundary of h."""
    name = lambda i, j: f"x{i % 3}y{j % 3}"  # noqa: E731
    tris = []
    for i in range(3):
        for j in range(3):
            tris.append((name(i, j), name(i + 1, j), name(i + 1, j + 1)))
            tris.append((name(i, j), name(i, j + 1), name(i + 1, j + 1)))
    verts = [name(i, j) for i in range(3) for j in range(3)]
    values = {}
    for t in tris:
        for u, v in combinations(t, 2):
            if (u, v) in values or (v, u) in values:
                continue
            iu, ju, iv, jv = int(u[1]), int(u[3]), int(v[1]), int(v[3])
            dx = (iv - iu + 1) % 3 - 1
            dy = (jv - ju + 1) % 3 - 1
            q = dx + h[iv][jv] - h[iu][ju]
            values[(u, v)] = (q, (dy,) if theta else ())
    return _doc(verts, tris, values, [SQRT2] if theta else [])


_H_D = [[Fraction(0), Fraction(17, 10), Fraction(2, 5)],
        [Fraction(-13, 10), Fraction(9, 10), Fraction(11, 5)],
        [Fraction(3, 5), Fraction(-4, 5), Fraction(11, 10)]]

_H_E = [[Fraction(0), Fraction(0), Fraction(0)],
        [Fraction(0), Fraction(-5, 2), Fraction(0)],
        [Fraction(11, 5), Fraction(0), Fraction(0)]]


def fix_d() -> dict:
    """Torus, class dx (k = 1), with a potential creating extra critical points."""
    return _torus(_H_D, theta=False)


def fix_e() -> dict:
    """Torus, class dx + sqrt(2) dy (k = 2), with two bumps."""
    return _torus(_H_E, theta=True)


def fix_f() -> dict:
    """Wedge of two circles, periods 3 and 0: Novikov-Betti numbers (0, 1)."""
    return _doc(["a", "b", "c", "d", "e"],
                [("a", "b"), ("b", "c"), ("c", "a"), ("a", "d"), ("d", "e"), ("e", "a")],
                {("a", "b"): ("1", ()), ("b", "c"): ("1", ()), ("c", "a"): ("1", ()),
                 ("a", "d"): ("2", ()), ("d", "e"): ("-1", ()), ("e", "a"): ("-1", ())})


FIXTURES: dict[str, Callable[[], dict]] = {
    "FIX-A": fix_a, "FIX-B": fix_b, "FIX-C": fix_c,
    "FIX-D": fix_d, "FIX-E": fix_e, "FIX-F": fix_f,
}

MANIFOLD_DIM = {"FIX-A": 1, "FIX-B": 1, "FIX-D": 2, "FIX-E": 2}


def load_fixture(name: str, p: int = 2) -> CocycleComplex:
    return parse_complex(FIXTURES[name]()).with_prime(p)


def random_complex(seed: int, max_vertices: int = 8, k: int | None = None,
                   exact: bool = False, p: int = 2, edge_prob: float = 0.5,
                   tri_prob: float = 0.5) -> CocycleComplex:
    """A random generic cocycle complex.

    The cocycle is c1*zeta1 + theta*zeta2 + dh where the zeta are random
    integer cocycles from a kernel basis of the coboundary map and h is a
    random rational potential. ``k`` caps the number of non-exact terms;
    ``exact=True`` keeps only dh.
    """
    rng = random.Random(seed)
    for _ in range(2000):
        n = rng.randint(3, max_vertices)
        names = [f"v{i}" for i in range(n)]
        edges = [e for e in combinations(range(n), 2) if rng.random() < edge_prob]
        if not edges:
            continue
        eset = set(edges)
        tris = [t for t in combinations(range(n), 3)
                if all(f in eset for f in combinations(t, 2)) and rng.random() < tri_prob]
        # coboundary C^1 -> C^2 with rows indexed by triangles
        eidx = {e: i for i, e in enumerate(edges)}
        mat = []
        for a, b, c in tris:
            row = [0] * len(edges)
            row[eidx[(a, b)]] += 1
            row[eidx[(b, c)]] += 1
            row[eidx[(a, c)]] -= 1
            mat.append(row)
        ker = integer_kernel(mat, len(edges))
        terms = 0 if exact else (k if k is not None else rng.randint(0, 2))
        rat = [Fraction(0)] * len(edges)
        lat = [0] * len(edges)
        theta = terms >= 2
        if ker and terms >= 1:
            z = [sum(rng.randint(-2, 2) * v[i] for v in ker) for i in range(len(edges))]
            scale = Fraction(rng.randint(1, 9), rng.randint(1, 3))
            rat = [scale * c for c in z]
        if ker and theta:
            lat = [sum(rng.randint(-1, 1) * v[i] for v in ker) for i in range(len(edges))]
        # denominators prime to the period denominators keep value orbits apart
        h = [Fraction(rng.randint(-4000, 4000), 997) for _ in range(n)]
        values = {}
        for i, (u, v) in enumerate(edges):
            q = rat[i] + h[v] - h[u]
            values[(names[u], names[v])] = (q, (lat[i],) if theta else ())
        simplices = [(names[u], names[v]) for u, v in edges]
        simplices += [tuple(names[x] for x in t) for t in tris]
        doc = _doc(names, simplices, values, [SQRT2] if theta else [], p)
        cx = parse_complex(doc)
        rep = validate(cx)
        if rep.passed and (k is None or exact or rep.k == k):
            return cx
    raise RuntimeError("could not draw a generic random complex")
