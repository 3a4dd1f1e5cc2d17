"""The period group Gamma inside Q + sum Z.theta_i.

Gamma is a finitely generated free abelian group; its basis comes from a
Hermite normal form of the loop periods written in (rational, lattice)
coordinates with the rational column scaled to integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import lcm
from typing import Sequence

from .values import Generators, ValueVector


def hermite_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row Hermite normal form of an integer matrix (zero rows dropped)."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    out: list[list[int]] = []
    pending = rows
    for c in range(ncols):
        active = [r for r in pending if r[c] != 0]
        rest = [r for r in pending if r[c] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[c] // piv[c]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[c] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        if active:
            piv = active[0]
            if piv[c] < 0:
                piv = [-a for a in piv]
            out.append(piv)
        pending = rest
    for i, row in enumerate(out):
        c = next(j for j, a in enumerate(row) if a)
        for j in range(i):
            q = out[j][c] // row[c]
            if q:
                out[j] = [a - q * b for a, b in zip(out[j], row)]
    return out


def integer_kernel(matrix: list[list[int]], ncols: int) -> list[list[int]]:
    """Z-basis of {x in Z^ncols : matrix @ x = 0}."""
    # HNF of [A^T | I]; rows whose A^T-part vanishes span the kernel
    m = len(matrix)
    aug = []
    for j in range(ncols):
        aug.append([matrix[i][j] for i in range(m)] + [1 if t == j else 0 for t in range(ncols)])
    if m == 0:
        return [row[m:] for row in aug]
    red = _echelon_keep_zero(aug, m)
    return [row[m:] for row in red if not any(row[:m])]


def _echelon_keep_zero(rows: list[list[int]], width: int) -> list[list[int]]:
    rows = [list(r) for r in rows]
    done: list[list[int]] = []
    for c in range(width):
        active = [r for r in rows if r[c] != 0]
        rest = [r for r in rows if r[c] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[c] // piv[c]
                r = [a - q * b for a, b in zip(r, piv)]
                (nxt if r[c] != 0 else rest).append(r)
            active = nxt
        done.extend(active)
        rows = rest
    return done + rows


@dataclass(frozen=True)
class PeriodLattice:
    """Basis of Gamma, each basis element of positive real value."""

    basis: tuple[ValueVector, ...]
    scale: int
    _hnf: tuple[tuple[Fraction, ...], ...]
    _pivots: tuple[int, ...]
    _hnf_to_basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def element(self, m: Sequence[int]) -> ValueVector:
        n = len(self.basis[0].lattice) if self.basis else 0
        out = ValueVector.zero(n) if self.basis else None
        if out is None:
            raise ValueError("trivial lattice has no elements besides zero")
        for c, g in zip(m, self.basis):
            if c:
                out = out + g.scale(c)
        return out

    def _coords(self, v: ValueVector) -> list[Fraction]:
        return [v.rational * self.scale] + [Fraction(a) for a in v.lattice]

    def _reduce(self, v: ValueVector, exact: bool):
        x = self._coords(v)
        hnf_m = []
        for row, c in zip(self._hnf, self._pivots):
            q = x[c] / row[c]
            if exact:
                if q.denominator != 1:
                    return None, None
            else:
                q = Fraction(q.numerator // q.denominator)
            x = [a - q * b for a, b in zip(x, row)]
            hnf_m.append(int(q))
        return x, hnf_m

    def coordinates(self, v: ValueVector) -> tuple[int, ...] | None:
        """Integer coordinates of v in ``basis``, or None when v is not in Gamma."""
        if not self.basis:
            return () if v.is_zero() else None
        x, hnf_m = self._reduce(v, exact=True)
        if x is None or any(x):
            return None
        # hnf row i = sum_j T[i][j] basis_j
        out = [0] * self.rank
        for mi, trow in zip(hnf_m, self._hnf_to_basis):
            for j, t in enumerate(trow):
                out[j] += mi * t
        return tuple(out)

    def contains(self, v: ValueVector) -> bool:
        return self.coordinates(v) is not None

    def echelon_basis(self, gens: Generators) -> tuple[ValueVector, ...]:
        """The Hermite basis, signs made positive; unchanged by :meth:`rebased`."""
        out = []
        for row in self._hnf:
            v = ValueVector(row[0] / self.scale, tuple(int(a) for a in row[1:]))
            out.append(v if gens.sign(v) > 0 else -v)
        return tuple(out)

    def period_scale(self, gens: Generators) -> ValueVector:
        """P: the largest value among the Hermite basis elements."""
        return max(self.echelon_basis(gens), key=gens.evaluate)

    def rebased(self, U: Sequence[Sequence[int]], gens: Generators) -> "PeriodLattice":
        """Same group with basis rows U . basis (U unimodular), signs made positive."""
        k = self.rank
        U = [list(r) for r in U]
        for i, row in enumerate(U):
            g = self.element(row)
            if gens.sign(g) < 0:
                U[i] = [-a for a in row]
        inv = integer_inverse(U)
        basis = tuple(self.element(row) for row in U)
        T = [[sum(t[l] * inv[l][j] for l in range(k)) for j in range(k)]
             for t in self._hnf_to_basis]
        return PeriodLattice(basis, self.scale, self._hnf, self._pivots,
                             tuple(tuple(r) for r in T))

    def residue(self, v: ValueVector) -> ValueVector:
        """Canonical representative of v + Gamma."""
        if not self.basis:
            return v
        x, _ = self._reduce(v, exact=False)
        return ValueVector(x[0] / self.scale, tuple(int(a) for a in x[1:]))


def lattice_from_periods(periods: Sequence[ValueVector], n: int, gens: Generators) -> PeriodLattice:
    dens = [p.rational.denominator for p in periods]
    scale = lcm(*dens) if dens else 1
    int_rows = [[int(p.rational * scale)] + list(p.lattice) for p in periods]
    hnf = hermite_rows(int_rows)
    pivots = tuple(next(j for j, a in enumerate(r) if a) for r in hnf)
    basis = []
    to_basis = []
    for i, row in enumerate(hnf):
        v = ValueVector(Fraction(row[0], scale), tuple(row[1:]))
        sgn = gens.sign(v)
        basis.append(v if sgn > 0 else -v)
        to_basis.append(tuple((sgn if j == i else 0) for j in range(len(hnf))))
    return PeriodLattice(
        basis=tuple(basis),
        scale=scale,
        _hnf=tuple(tuple(Fraction(a) for a in r) for r in hnf),
        _pivots=pivots,
        _hnf_to_basis=tuple(to_basis),
    )


def integer_inverse(U: Sequence[Sequence[int]]) -> list[list[int]]:
    """Inverse of a unimodular integer matrix."""
    k = len(U)
    aug = [[Fraction(a) for a in row] + [Fraction(int(i == j)) for j in range(k)]
           for i, row in enumerate(U)]
    for c in range(k):
        piv = next((i for i in range(c, k) if aug[i][c]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [a * inv for a in aug[c]]
        for i in range(k):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    out = [[a for a in row[k:]] for row in aug]
    if any(a.denominator != 1 for row in out for a in row):
        raise ValueError("matrix is not unimodular")
    return [[int(a) for a in row] for row in out]


def _det2(a, b) -> int:
    return a[0] * b[1] - a[1] * b[0]


def small_deck_basis(decks: Sequence[Sequence[int]], rank: int) -> list[list[int]] | None:
    """A unimodular U whose basis makes the given coordinate vectors small.

    Only rank 2 is searched: candidate rows are the vectors, their pairwise
    sums and differences and the unit vectors; the cost of U is the largest
    and then the total absolute coordinate of the vectors in the new basis.
    Returns None when no candidate improves on the identity.
    """
    if rank != 2 or not decks:
        return None
    vecs = {tuple(d) for d in decks if any(d)}
    cands = set(vecs) | {(1, 0), (0, 1)}
    for a, b in combinations(sorted(vecs), 2):
        cands.add(tuple(x + y for x, y in zip(a, b)))
        cands.add(tuple(x - y for x, y in zip(a, b)))
    cands = sorted(c for c in cands if any(c))

    def cost(U):
        inv = integer_inverse(U)
        coords = [[sum(d[l] * inv[l][j] for l in range(2)) for j in range(2)] for d in vecs]
        return (max(abs(c) for row in coords for c in row),
                sum(abs(c) for row in coords for c in row))

    best_U, best = None, cost([[1, 0], [0, 1]])
    for a, b in product(cands, repeat=2):
        if abs(_det2(a, b)) != 1:
            continue
        c = cost([list(a), list(b)])
        if c < best:
            best_U, best = [list(a), list(b)], c
    return best_U
