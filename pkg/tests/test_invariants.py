import pytest

from novikov_configs import ValueVector, build_window, load_fixture, potentials, random_complex
from novikov_configs.invariants import (betti_window_top, box_dims, delta_hat, delta_jump_scan,
                                        delta_support_scan,
                                        fast_path, gamma_hat, gamma_hat_rank, kernel_T,
                                        orbit_representatives, ordinary_betti, presentation,
                                        relative_lowerstar_dim)


def V(q, *lat):
    return ValueVector.of(q, lat)


def window(cx, lo, hi, margin=1):
    return build_window(cx, potentials(cx), V(lo, *[0] * cx.generators.n),
                        V(hi, *[0] * cx.generators.n), V(margin, *[0] * cx.generators.n))


def small_windows():
    out = [("FIX-B", window(load_fixture("FIX-B"), 0, 7)),
           ("FIX-C", window(load_fixture("FIX-C"), -3, 3)),
           ("FIX-F", window(load_fixture("FIX-F"), -4, 4)),
           ("FIX-D", window(load_fixture("FIX-D"), -2, 2, 0))]
    for p in (2, 1009):
        out.append((f"FIX-B/p{p}", window(load_fixture("FIX-B", p), -3, 5)))
    return out


WINDOWS = small_windows()


@pytest.mark.parametrize("name,w", WINDOWS, ids=[n for n, _ in WINDOWS])
def test_gamma_literal_rank_and_pairs_agree(name, w):
    fp = fast_path(w)
    N = len(w.critical)
    for r in range(w.dim + 1):
        pairs = fp.gamma_pairs(r)
        for a in range(N):
            for b in range(a + 1, N):
                lit = gamma_hat(w, r, a, b)
                assert lit == gamma_hat_rank(w, r, a, b) == pairs.get((a, b), 0), (r, a, b)


@pytest.mark.parametrize("name,w", WINDOWS, ids=[n for n, _ in WINDOWS])
def test_delta_literal_and_pairs_agree(name, w):
    fp = fast_path(w)
    N = len(w.critical)
    for r in range(w.dim + 1):
        pairs = fp.delta_pairs(r)
        for a in range(N):
            for b in range(N):
                assert delta_hat(w, r, a, b) == pairs.get((a, b), 0), (r, a, b)
            jumps = delta_jump_scan(w, r, a)
            assert {k: v for k, v in pairs.items() if k[0] == a} == dict(jumps)


@pytest.mark.parametrize("name,w", WINDOWS, ids=[n for n, _ in WINDOWS])
def test_incremental_dims_match_subspaces(name, w):
    N = len(w.critical)
    for r in range(w.dim + 1):
        P = presentation(w, r)
        assert P.image_dims("sub") == [P.I_sub(a).dim for a in range(-1, N)]
        assert P.image_dims("sup") == [P.I_sup(b).dim for b in range(0, N + 1)]
        assert P.step_kernel_dims() == [P.t(a - 1, a) if a else 0 for a in range(N)]
        assert P.kernel_to_window_dims()[1:] == [P.t(a, N - 1) for a in range(N)]
        for a in range(N):
            for b in range(a, N):
                assert P.t(a, b) == kernel_T(w, r, a, b).homology_dim


def test_fix_b_lowerstar_dims():
    w = window(load_fixture("FIX-B"), 0, 7)
    for value in (2, 3):
        a = w.level_index(V(value))
        # at each integer one lift is a minimum and one a maximum
        assert relative_lowerstar_dim(w, 0, a) == 1
        assert relative_lowerstar_dim(w, 1, a) == 1


def test_fix_b_gamma_bar_length_one():
    w = window(load_fixture("FIX-B"), 0, 7)
    bars = fast_path(w).gamma_pairs(0)
    lengths = {w.gens.to_float(w.critical[b]) - w.gens.to_float(w.critical[a]) for a, b in bars}
    assert lengths == {1.0}
    # the window ends carry delta pairs, the central region none
    assert not delta_support_scan(w, 0) and not delta_support_scan(w, 1)


def test_fix_c_exact_cocycle():
    w = window(load_fixture("FIX-C"), -3, 3)
    fp = fast_path(w)
    # phi = (0, 2, 1): one component born at 0, the dip at 1 dies at 2
    births = [w.gens.to_float(w.critical[a]) for a in fp.essential_births(0)]
    assert births == [0.0]
    assert [(w.gens.to_float(w.critical[a]), w.gens.to_float(w.critical[b]))
            for a, b in fp.gamma_pairs(0)] == [(1.0, 2.0)]
    assert betti_window_top(w, 0) == betti_window_top(w, 0, "fast") == 1


@pytest.mark.parametrize("seed", range(6))
def test_random_windows_two_routes(seed):
    cx = random_complex(seed, max_vertices=5, k=seed % 2, p=(2, 1009)[seed % 2])
    pot = potentials(cx)
    if pot.k:
        P = pot.lattice.period_scale(cx.generators)
        w = build_window(cx, pot, P.scale(-1), P.scale(1), P.scale(0))
    else:
        w = build_window(cx, pot)
    fp = fast_path(w)
    N = len(w.critical)
    assert sum(len(s) for s in w.simplices) <= 300
    for r in range(w.dim + 1):
        g = fp.gamma_pairs(r)
        for a in range(N):
            for b in range(a + 1, N):
                assert gamma_hat_rank(w, r, a, b) == g.get((a, b), 0)
        assert betti_window_top(w, r) == betti_window_top(w, r, "fast")


def test_box_additivity_fix_b():
    w = window(load_fixture("FIX-B"), 0, 5)
    N = len(w.critical)
    for r in (0, 1):
        for a0 in range(-1, N):
            for a1 in range(a0 + 1, N):
                for m in range(a0 + 1, a1):
                    for b0 in range(a1, N):
                        for b1 in range(b0 + 1, N + 1):
                            whole = box_dims(w, r, a0, a1, b0, b1)
                            left = box_dims(w, r, a0, m, b0, b1)
                            right = box_dims(w, r, m, a1, b0, b1)
                            assert whole[0] == left[0] + right[0]


def test_k0_window_betti_is_ordinary_betti():
    for seed in range(4):
        cx = random_complex(seed, max_vertices=6, exact=True)
        w = build_window(cx, potentials(cx))
        reps = orbit_representatives(w)
        assert len(reps) == len(w.critical)
        for r in range(cx.dim + 1):
            assert betti_window_top(w, r) == ordinary_betti(cx, r)
