from itertools import combinations

import pytest

from novikov_configs import ValueVector, WindowError, build_window, potentials, random_complex
from novikov_configs.cocycle import negate
from novikov_configs.cover import critical_values, level_prefix, superlevel_prefix


def V(q, *lat):
    return ValueVector.of(q, lat)


def window(cx, lo, hi, margin=1):
    return build_window(cx, potentials(cx), V(lo), V(hi), V(margin))


def test_fix_a_line(fixtures):
    w = window(fixtures["FIX-A"], 0, 9)
    assert len(w.vertices) == 10 and len(w.simplices[1]) == 9
    assert [w.gens.to_float(c) for c in w.critical] == list(range(10))
    assert len(set(w.orbit_of_level)) == 3


def test_fix_b_values_and_orbits(fixtures):
    w = window(fixtures["FIX-B"], 0, 7)
    # phi = (0, 2, 1, 3) with period 2: two lifts at each integer value
    assert sorted(w.gens.to_float(v) for v in w.values) == sorted(list(range(8)) * 2)
    labels = [lab for _, lab in critical_values(w)]
    assert labels == [labels[0], labels[1]] * 4 and labels[0] != labels[1]


def test_fix_c_trivial_cover(fixtures):
    w = window(fixtures["FIX-C"], -5, 5)
    assert len(w.vertices) == 3 and len(set(w.orbit_of_level)) == 3
    assert all(w.central_levels)


def test_bad_windows_raise(fixtures):
    with pytest.raises(WindowError):
        window(fixtures["FIX-B"], 0, 2, margin=1)


def test_prefixes(fixtures):
    w = window(fixtures["FIX-B"], 0, 7)
    pre = level_prefix(w, V(3))
    verts = [s for r, s in pre if r == 0]
    assert all(w.gens.compare(w.values[v], V(3)) <= 0 for (v,) in verts)
    assert len(verts) == 8
    assert level_prefix(w, V(-1)) == [] and level_prefix(w, V(0), strict=True) == []
    assert len(superlevel_prefix(w, V(0))) == sum(len(x) for x in w.simplices)
    assert superlevel_prefix(w, V(8)) == []


def test_prefixes_are_full_subcomplexes():
    cx = random_complex(3, k=1)
    pot = potentials(cx)
    big = pot.lattice.period_scale(cx.generators)
    w = build_window(cx, pot, big.scale(-2), big.scale(2), big.scale(0))
    present_all = {s for layer in w.simplices for s in layer}
    for i in range(len(w.critical)):
        pre = {s for _, s in level_prefix(w, w.critical[i])}
        verts = {s[0] for s in pre if len(s) == 1}
        for s in present_all:
            assert (s in pre) == all(v in verts for v in s)
        for s in pre:
            assert all(f in pre for k in range(1, len(s)) for f in combinations(s, k))


def test_deck_equivariance(fixtures):
    for cx in (fixtures["FIX-B"], fixtures["FIX-D"], fixtures["FIX-E"]):
        pot = potentials(cx)
        big = pot.lattice.period_scale(cx.generators)
        w = build_window(cx, pot, big.scale(-3), big.scale(3), big)
        idx = w.lift_index()
        for g in [tuple(int(i == j) for j in range(w.k)) for i in range(w.k)]:
            shift = pot.lattice.element(g)
            for (v, m), i in idx.items():
                j = idx.get((v, tuple(a + b for a, b in zip(m, g))))
                if j is not None:
                    assert w.values[j] == w.values[i] + shift


def test_superlevel_is_sublevel_of_negation(fixtures):
    cx = fixtures["FIX-D"]
    w = window(cx, -6, 6, 2)
    wn = window(negate(cx), -6, 6, 2)
    for b in w.critical[::5]:
        sup = superlevel_prefix(w, b)
        sub = level_prefix(wn, -b)
        assert sorted(len(s) for _, s in sup) == sorted(len(s) for _, s in sub)


def test_window_monotonicity(fixtures):
    cx = fixtures["FIX-D"]
    small, large = window(cx, -6, 6, 2), window(cx, -9, 9, 2)
    key = lambda w, s: tuple(sorted(w.vertices[v] for v in s))  # noqa: E731
    inner = {key(small, s) for layer in small.simplices for s in layer
             if all(small.central_levels[small.vertex_level[v]] for v in s)}
    everything = {key(large, s) for layer in large.simplices for s in layer}
    assert inner <= everything
