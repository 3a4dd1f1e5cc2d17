"""Novikov-Betti numbers from the twisted chain complex of the base.

C_r(X~) is free over k[Gamma] on the base r-simplices. Lifting every base
simplex at its first vertex, the boundary of [v0 ... vr] is
t^{deck(v0, v1)} [v1 ... vr] + sum_{i >= 1} (-1)^i [.. drop vi ..], so the
boundary matrices have signed monomial entries in k deck variables. The
Novikov-Betti number is n_r - rank d_r - rank d_{r+1} over the fraction
field of k[Gamma]; we evaluate at random points of a large extension of
GF(p), keep the largest rank seen, and for k = 1 also compute the rank
exactly over GF(p)(t).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .cocycle import CocycleComplex, PotentialAssignment, potentials
from .gfext import extension_field, matrix_rank, poly_matrix_rank

Monomial = tuple[int, tuple[int, ...]]  # (sign, exponent vector)


def twisted_boundary(cx: CocycleComplex, pot: PotentialAssignment, r: int):
    """d_r as ``{(row, col): [(sign, exponents), ...]}`` plus its shape."""
    if r <= 0 or r > cx.dim:
        return {}, (cx.n_simplices(r - 1), cx.n_simplices(r))
    idx = {s: i for i, s in enumerate(cx.simplices[r - 1])}
    zero = (0,) * pot.k
    out: dict[tuple[int, int], list[Monomial]] = {}
    for j, s in enumerate(cx.simplices[r]):
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            expo = pot.deck_between(s[0], s[1]) if i == 0 else zero
            out.setdefault((idx[face], j), []).append(((-1) ** i, expo))
    return out, (len(cx.simplices[r - 1]), len(cx.simplices[r]))


def _evaluate(K, entries, shape, point):
    nr, nc = shape
    m = [[K.zero] * nc for _ in range(nr)]
    for (i, j), monos in entries.items():
        acc = K.zero
        for sign, expo in monos:
            v = K.from_int(sign)
            for t, d in zip(point, expo):
                if d:
                    v = K.mul(v, K.pow(t, d))
            acc = K.add(acc, v)
        m[i][j] = acc
    return m


@dataclass
class OracleResult:
    betti: int
    trial_values: list[int]
    field_size: int
    agree: bool

    def to_json(self) -> dict:
        return {"betti": self.betti, "trials": self.trial_values,
                "field_size": self.field_size, "agree": self.agree}


def novikov_betti_alg_oracle(cx: CocycleComplex, r: int, seed: int = 0, trials: int = 5,
                             pot: PotentialAssignment | None = None) -> OracleResult:
    """Generic-rank Novikov-Betti number by random evaluation of deck variables."""
    if pot is None:
        pot = potentials(cx)
    n_r = cx.n_simplices(r)
    if n_r == 0:
        return OracleResult(0, [0] * trials, 0, True)
    K = extension_field(cx.field_prime)
    rng = random.Random(seed)
    d_r = twisted_boundary(cx, pot, r)
    d_rp = twisted_boundary(cx, pot, r + 1)
    values = []
    for _ in range(max(trials, 1)):
        point = [K.random_nonzero(rng) for _ in range(pot.k)]
        rk = matrix_rank(K, _evaluate(K, *d_r, point)) if d_r[0] else 0
        rkp = matrix_rank(K, _evaluate(K, *d_rp, point)) if d_rp[0] else 0
        values.append(n_r - rk - rkp)
    return OracleResult(min(values), values, K.q, len(set(values)) == 1)


def _poly_entries(entries, shape, p):
    """Entries as polynomials in t after multiplying columns by t^shift."""
    nr, nc = shape
    shift = [0] * nc
    for (i, j), monos in entries.items():
        for _, expo in monos:
            shift[j] = max(shift[j], -expo[0])
    m = [[[] for _ in range(nc)] for _ in range(nr)]
    for (i, j), monos in entries.items():
        coeffs: dict[int, int] = {}
        for sign, expo in monos:
            d = expo[0] + shift[j]
            coeffs[d] = (coeffs.get(d, 0) + sign) % p
        top = max((d for d, c in coeffs.items() if c), default=-1)
        m[i][j] = [coeffs.get(d, 0) for d in range(top + 1)]
    return m


def novikov_betti_exact_k1(cx: CocycleComplex, r: int,
                           pot: PotentialAssignment | None = None) -> int:
    """Exact Novikov-Betti number for k <= 1 via ranks over GF(p)(t)."""
    if pot is None:
        pot = potentials(cx)
    if pot.k > 1:
        raise ValueError("exact path needs degree of irrationality at most 1")
    p = cx.field_prime
    n_r = cx.n_simplices(r)
    if n_r == 0:
        return 0
    ranks = []
    for d in (r, r + 1):
        entries, shape = twisted_boundary(cx, pot, d)
        if not entries:
            ranks.append(0)
            continue
        if pot.k == 0:
            entries = {key: [(s, (0,)) for s, _ in monos] for key, monos in entries.items()}
        ranks.append(poly_matrix_rank(_poly_entries(entries, shape, p), p))
    return n_r - ranks[0] - ranks[1]
