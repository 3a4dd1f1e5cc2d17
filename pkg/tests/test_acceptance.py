"""Acceptance criteria, one PASS/FAIL line each.

Run with pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``. Every quantity is exact (integer
dimensions or exact lengths); the only tolerances are the runtime budgets
and the 1e-9 slack on float bottleneck comparisons.
"""

from __future__ import annotations

import time
from collections import Counter
from itertools import combinations

import pytest

from novikov_configs import (WindowSpec, analyze, build_window, duality_check, load_fixture,
                             novikov_betti_alg_oracle, potentials, random_complex,
                             stability_probe, sum_identity_check, theorem_tt_check)
from novikov_configs.configurations import configurations_equal
from novikov_configs.fixtures import FIXTURES
from novikov_configs.invariants import box_dims, fast_path, gamma_hat_rank, ordinary_betti

TT_BUDGET_S = 10.0
ORACLE_BUDGET_S = 30.0
FLOAT_SLACK = 1e-9
PRIMES = (2, 1009)
ORACLE_TRIALS = 5
RANDOM_TT = [dict(seed=s, max_vertices=6, k=s % 3) for s in range(25)]
STABILITY_EPS = ("0.2", "0.1", "0.05", "0.02")
STABILITY_TRIALS = 20
MAX_LIFTED = 300

LINES: list[str] = []


def report(n: int, ok: bool, text: str) -> None:
    LINES.append(f"{'PASS' if ok else 'FAIL'} criterion {n}: {text}")


def fixture_names():
    return sorted(FIXTURES)


# 1 ---------------------------------------------------------------------------

def criterion_1():
    t0 = time.perf_counter()
    bad = []
    runs = 0
    cases = [(n, load_fixture(n)) for n in fixture_names()]
    cases += [(f"random{c['seed']}", random_complex(**c)) for c in RANDOM_TT]
    for name, cx in cases:
        for p in PRIMES:
            rep = theorem_tt_check(cx.with_prime(p), trials=ORACLE_TRIALS, seed=p)
            runs += 1
            if not rep.passed:
                bad.append(f"{name}@p{p}")
    dt = time.perf_counter() - t0
    ok = not bad and dt < TT_BUDGET_S
    report(1, ok, f"sum delta_r = Novikov-Betti on {len(cases)} complexes x primes {PRIMES} "
                  f"({runs} runs, {dt:.1f}s < {TT_BUDGET_S:.0f}s){'; failed ' + str(bad) if bad else ''}")
    return ok


# 2 ---------------------------------------------------------------------------

def criterion_2():
    bad, fix_b = [], None
    for name in fixture_names():
        an = analyze(load_fixture(name), literal=False)
        for r in [d for d in an.degrees if d <= 2]:
            res = an.results[r]
            prev = an.results[r - 1].gamma.total if r >= 1 else 0
            terms = (res.lowerstar_sum, res.delta.total, res.gamma.total, prev)
            if terms[0] != sum(terms[1:]):
                bad.append((name, r, terms))
        if name == "FIX-B":
            fix_b = [(an.results[r].lowerstar_sum, an.results[r].delta.total,
                      an.results[r].gamma.total,
                      an.results[r - 1].gamma.total if r else 0) for r in (0, 1)]
    truth = [(2, 0, 2, 0), (2, 0, 0, 2)]
    ok = not bad and fix_b == truth
    shown = "; ".join(f"r={r}: {a} = {b}+{c}+{d}" for r, (a, b, c, d) in enumerate(fix_b or []))
    report(2, ok, f"lower-star orbit sums split exactly, all fixtures r <= 2 (FIX-B {shown})"
                  f"{'; failed ' + str(bad) if bad else ''}")
    return ok


# 3 ---------------------------------------------------------------------------

def _random_window(i):
    cx = random_complex(1000 + i, max_vertices=8, k=i % 3, p=PRIMES[i % 2])
    pot = potentials(cx)
    if not pot.k:
        return build_window(cx, pot)
    P = pot.lattice.period_scale(cx.generators)
    for half, radius in ((3, 3), (2, 2), (1, 2), (1, 1)):
        if pot.k == 1:
            w = build_window(cx, pot, P.scale(-half), P.scale(half), P.scale(0))
        else:
            w = build_window(cx, pot, P.scale(-half), P.scale(half), P.scale(0),
                             box_radius=radius, box_margin=0)
        if sum(len(s) for s in w.simplices) <= MAX_LIFTED:
            return w
    return w


def _fixture_window(cx):
    # all level pairs are enumerated, so the window is [-2P, 2P] rather than
    # the analysis default (about 3000 levels on FIX-E)
    pot = potentials(cx)
    if not pot.k:
        return build_window(cx, pot)
    P = pot.lattice.period_scale(cx.generators)
    return build_window(cx, pot, P.scale(-2), P.scale(2), P.scale(0))


def _gamma_multisets_agree(w):
    fp = fast_path(w)
    N = len(w.critical)
    for r in range(w.dim + 1):
        by_rank = Counter()
        for a in range(N):
            for b in range(a + 1, N):
                m = gamma_hat_rank(w, r, a, b)
                if m:
                    by_rank[(a, b)] = m
        if by_rank != fp.gamma_pairs(r):
            return False
    return True


def criterion_3():
    t0 = time.perf_counter()
    bad = []
    for name in fixture_names():
        if not _gamma_multisets_agree(_fixture_window(load_fixture(name))):
            bad.append(name)
    sizes = []
    for i in range(50):
        w = _random_window(i)
        sizes.append(sum(len(s) for s in w.simplices))
        if not _gamma_multisets_agree(w):
            bad.append(f"random window {i}")
    dt = time.perf_counter() - t0
    ok = not bad and dt < ORACLE_BUDGET_S and max(sizes) <= MAX_LIFTED
    report(3, ok, "gamma rank formula = persistence pairs on 6 fixture windows [-2P,2P] "
                  f"+ 50 random windows "
                  f"(max {max(sizes)} <= {MAX_LIFTED} lifted simplices, {dt:.1f}s < "
                  f"{ORACLE_BUDGET_S:.0f}s){'; failed ' + str(bad) if bad else ''}")
    return ok


# 4 ---------------------------------------------------------------------------

def criterion_4():
    bad = []
    for name in fixture_names():
        an = analyze(load_fixture(name), literal=False)
        rep = sum_identity_check(an.window, an.degrees)
        if not rep.passed:
            bad.append((name, rep.witnesses[:2]))
    report(4, not bad, "row/column sum identities and deck invariance at every central level "
                       f"of every fixture{'; failed ' + str(bad) if bad else ''}")
    return not bad


# 5 ---------------------------------------------------------------------------

def _box_splits(w):
    """Every 2-way split of every box and ad-box with central corners."""
    central = w.central_indices()
    checked, bad = 0, []
    for r in range(w.dim + 1):
        for a0, m, a1 in combinations(central, 3):
            for b0, b1 in combinations(central, 2):
                whole = box_dims(w, r, a0, a1, b0, b1)
                parts = box_dims(w, r, a0, m, b0, b1), box_dims(w, r, m, a1, b0, b1)
                checked += 1
                if whole[0] != parts[0][0] + parts[1][0]:
                    bad.append(("box a-split", r, a0, m, a1, b0, b1))
                if a1 <= b0 and whole[1] != parts[0][1] + parts[1][1]:
                    bad.append(("ad-box a-split", r, a0, m, a1, b0, b1))
        for a0, a1 in combinations(central, 2):
            for b0, m, b1 in combinations(central, 3):
                whole = box_dims(w, r, a0, a1, b0, b1)
                parts = box_dims(w, r, a0, a1, b0, m), box_dims(w, r, a0, a1, m, b1)
                checked += 1
                if whole[0] != parts[0][0] + parts[1][0]:
                    bad.append(("box b-split", r, a0, a1, b0, m, b1))
                if a1 <= b0 and whole[1] != parts[0][1] + parts[1][1]:
                    bad.append(("ad-box b-split", r, a0, a1, b0, m, b1))
    return checked, bad


def criterion_5():
    total, bad = 0, []
    for name in ("FIX-B", "FIX-C"):
        an = analyze(load_fixture(name), literal=False)
        n, b = _box_splits(an.window)
        total += n
        bad += [(name,) + x for x in b]
    report(5, not bad, f"box and ad-box additivity, {total} splits on FIX-B and FIX-C"
                       f"{'; failed ' + str(bad[:3]) if bad else ''}")
    return not bad


# 6 ---------------------------------------------------------------------------

def criterion_6():
    res = {name: duality_check(load_fixture(name), n).passed
           for name, n in (("FIX-B", 1), ("FIX-D", 2))}
    ok = all(res.values())
    report(6, ok, "delta and gamma duality pointwise on FIX-B (n=1) and FIX-D (n=2) "
                  f"{res}")
    return ok


# 7 ---------------------------------------------------------------------------

def criterion_7():
    res, med = {}, {}
    for name in ("FIX-B", "FIX-D"):
        rep = stability_probe(load_fixture(name), STABILITY_EPS, trials=STABILITY_TRIALS,
                              degrees=[0])
        res[name] = rep.passed
        med[name] = [round(x, 4) for x in rep.summary["0"]["medians"]]
    ok = all(res.values())
    report(7, ok, f"[empirical] gamma_0 bottleneck <= 2 form_distance in all "
                  f"{STABILITY_TRIALS} trials/eps, medians non-increasing {med}")
    return ok


# 8 ---------------------------------------------------------------------------

def criterion_8():
    bad = []
    for name in fixture_names():
        cx = load_fixture(name)
        pot = potentials(cx)
        if pot.k:
            P = pot.lattice.period_scale(cx.generators)
            w3, w5 = WindowSpec(P.scale(-3), P.scale(3)), WindowSpec(P.scale(-5), P.scale(5))
        else:
            w3 = w5 = WindowSpec()
        try:
            a3 = analyze(cx, w3, literal=False)
            a5 = analyze(cx, w5, literal=False)
        except ValueError as exc:
            bad.append((name, str(exc)))
            continue
        diffs = configurations_equal(a3, a5, a3.degrees)
        if diffs:
            bad.append((name, diffs[0]))
    report(8, not bad, "configurations on [-3P,3P] and [-5P,5P] agree for every fixture "
                       f"(pilot margin){'; failed ' + str(bad) if bad else ''}")
    return not bad


# 9 ---------------------------------------------------------------------------

def criterion_9():
    cases = [("FIX-C", load_fixture("FIX-C"))]
    cases += [(f"exact{s}", random_complex(s, max_vertices=7, exact=True)) for s in range(3)]
    bad = []
    for name, cx in cases:
        an = analyze(cx, literal=False)
        for r in range(cx.dim + 1):
            plain = ordinary_betti(cx, r)
            nov = novikov_betti_alg_oracle(cx, r, trials=ORACLE_TRIALS).betti
            if not (plain == nov == an.results[r].delta.total):
                bad.append((name, r, plain, nov, an.results[r].delta.total))
    report(9, not bad, "k=0: Novikov-Betti = sum delta = ordinary Betti on FIX-C and 3 random "
                       f"exact complexes{'; failed ' + str(bad) if bad else ''}")
    return not bad


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i + 1}" for i in range(9)])
def test_acceptance(criterion):
    ok = criterion()
    print(LINES[-1])
    assert ok, LINES[-1]


if __name__ == "__main__":
    for c in CRITERIA:
        c()
        print(LINES[-1], flush=True)
