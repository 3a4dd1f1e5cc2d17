"""Sparse linear algebra over GF(p).

Vectors are Python ints used as bit sets when p = 2 and ``{index: coeff}``
dicts otherwise. Every echelon form in this module pivots on the largest
nonzero index ("low"), which is the convention of persistence reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class Field:
    """Vector operations over GF(p); see :func:`field` for the constructor."""

    p: int

    def zero(self):
        raise NotImplementedError

    def unit(self, i: int):
        raise NotImplementedError

    def from_entries(self, entries: Iterable[tuple[int, int]]):
        raise NotImplementedError

    def entries(self, x) -> list[tuple[int, int]]:
        raise NotImplementedError

    def low(self, x) -> int:
        raise NotImplementedError

    def coeff(self, x, i: int) -> int:
        raise NotImplementedError

    def axpy(self, x, c: int, y):
        """x + c*y."""
        raise NotImplementedError

    def iaxpy(self, x, c: int, y):
        """x + c*y, allowed to overwrite x."""
        return self.axpy(x, c, y)

    def copy(self, x):
        return x

    def scale(self, x, c: int):
        raise NotImplementedError

    def shift(self, x, n: int):
        raise NotImplementedError

    def split(self, x, n: int):
        """(part with index < n, part with index >= n shifted down by n)."""
        raise NotImplementedError

    def inv(self, c: int) -> int:
        return pow(c, self.p - 2, self.p)

    def normalize(self, x):
        return self.scale(x, self.inv(self.coeff(x, self.low(x))))

    def canonical(self, x):
        return x


class GF2(Field):
    p = 2

    def zero(self):
        return 0

    def unit(self, i):
        return 1 << i

    def from_entries(self, entries):
        x = 0
        for i, c in entries:
            if c % 2:
                x ^= 1 << i
        return x

    def entries(self, x):
        out = []
        while x:
            b = x & -x
            out.append((b.bit_length() - 1, 1))
            x ^= b
        return out

    def low(self, x):
        return x.bit_length() - 1

    def coeff(self, x, i):
        return (x >> i) & 1

    def axpy(self, x, c, y):
        return x ^ y if c & 1 else x

    def scale(self, x, c):
        return x if c & 1 else 0

    def shift(self, x, n):
        return x << n

    def split(self, x, n):
        return x & ((1 << n) - 1), x >> n

    def normalize(self, x):
        return x


class GFp(Field):
    def __init__(self, p: int):
        self.p = p

    def zero(self):
        return {}

    def unit(self, i):
        return {i: 1}

    def from_entries(self, entries):
        x: dict[int, int] = {}
        for i, c in entries:
            c = (x.get(i, 0) + c) % self.p
            if c:
                x[i] = c
            else:
                x.pop(i, None)
        return x

    def entries(self, x):
        return sorted(x.items())

    def low(self, x):
        return max(x) if x else -1

    def coeff(self, x, i):
        return x.get(i, 0)

    def axpy(self, x, c, y):
        c %= self.p
        if not c:
            return x
        out = dict(x)
        p = self.p
        for i, b in y.items():
            v = (out.get(i, 0) + c * b) % p
            if v:
                out[i] = v
            else:
                del out[i]
        return out

    def iaxpy(self, x, c, y):
        c %= self.p
        if not c:
            return x
        p = self.p
        get = x.get
        for i, b in y.items():
            v = (get(i, 0) + c * b) % p
            if v:
                x[i] = v
            else:
                del x[i]
        return x

    def copy(self, x):
        return dict(x)

    def scale(self, x, c):
        c %= self.p
        if not c:
            return {}
        return {i: (b * c) % self.p for i, b in x.items()}

    def shift(self, x, n):
        return {i + n: b for i, b in x.items()}

    def split(self, x, n):
        lo = {i: b for i, b in x.items() if i < n}
        hi = {i - n: b for i, b in x.items() if i >= n}
        return lo, hi

    def canonical(self, x):
        return tuple(sorted(x.items()))


_FIELDS: dict[int, Field] = {}


def field(p: int) -> Field:
    if p not in _FIELDS:
        _FIELDS[p] = GF2() if p == 2 else GFp(p)
    return _FIELDS[p]


# -- matrices ---------------------------------------------------------------


@dataclass(frozen=True)
class SparseMatrix:
    """Column-major sparse matrix; ``columns[j]`` is a field vector."""

    rows: int
    cols: int
    columns: tuple
    p: int = 2

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int, int]],
                     p: int = 2) -> "SparseMatrix":
        F = field(p)
        by_col: list[list[tuple[int, int]]] = [[] for _ in range(cols)]
        for i, j, c in entries:
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside a {rows}x{cols} matrix")
            by_col[j].append((i, c))
        return cls(rows, cols, tuple(F.from_entries(c) for c in by_col), p)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]], p: int = 2) -> "SparseMatrix":
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        return cls.from_entries(rows, cols, ((i, j, dense[i][j]) for i in range(rows)
                                             for j in range(cols) if dense[i][j] % p), p)

    @classmethod
    def identity(cls, n: int, p: int = 2) -> "SparseMatrix":
        F = field(p)
        return cls(n, n, tuple(F.unit(i) for i in range(n)), p)

    @property
    def field(self) -> Field:
        return field(self.p)

    def triplets(self) -> list[tuple[int, int, int]]:
        F = self.field
        return [(i, j, c) for j, col in enumerate(self.columns) for i, c in F.entries(col)]

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, j, c in self.triplets():
            out[i][j] = c
        return out

    def to_sms(self) -> str:
        """SMS-style triplet dump (1-based indices, zero row terminator)."""
        lines = [f"{self.rows} {self.cols} M"]
        for i, j, c in sorted(self.triplets(), key=lambda t: (t[1], t[0])):
            lines.append(f"{i + 1} {j + 1} {c}")
        lines.append("0 0 0")
        return "\n".join(lines) + "\n"


class EchelonTable:
    """Incremental echelon basis keyed by low index, with optional tags.

    A tag is a second vector carried along every row operation; it records
    how a stored vector was combined from the inserted ones.
    """

    def __init__(self, F: Field, track: bool = False):
        self.F = F
        self.track = track
        self.pivots: dict[int, object] = {}
        self.tags: dict[int, object] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, x, tag=None):
        F = self.F
        piv = self.pivots
        while True:
            lo = F.low(x)
            if lo < 0 or lo not in piv:
                return x, tag
            c = F.coeff(x, lo)
            if self.p2:
                x ^= piv[lo]
                if self.track:
                    tag ^= self.tags[lo]
            else:
                x = F.axpy(x, -c, piv[lo])
                if self.track:
                    tag = F.axpy(tag, -c, self.tags[lo])

    @property
    def p2(self) -> bool:
        return self.F.p == 2

    def insert(self, x, tag=None) -> bool:
        """Reduce and store x; True iff x was independent."""
        x, tag = self.reduce(x, tag)
        lo = self.F.low(x)
        if lo < 0:
            self._last_tag = tag
            return False
        if not self.p2:
            c = self.F.inv(self.F.coeff(x, lo))
            x = self.F.scale(x, c)
            if self.track:
                tag = self.F.scale(tag, c)
        self.pivots[lo] = x
        if self.track:
            self.tags[lo] = tag
        self._last_tag = tag
        return True

    def contains(self, x) -> bool:
        x, _ = self.reduce(x, None if not self.track else self.F.zero())
        return self.F.low(x) < 0


def _reduce_plain(table: EchelonTable, x):
    was = table.track
    table.track = False
    try:
        return table.reduce(x)[0]
    finally:
        table.track = was


def rank(M: SparseMatrix) -> int:
    t = EchelonTable(M.field)
    return sum(1 for col in M.columns if t.insert(col))


def kernel(M: SparseMatrix) -> "Subspace":
    F = M.field
    t = EchelonTable(F, track=True)
    vecs = []
    for j, col in enumerate(M.columns):
        if not t.insert(col, F.unit(j)):
            vecs.append(t._last_tag)
    return Subspace.span(M.cols, vecs, M.p)


def column_space(M: SparseMatrix) -> "Subspace":
    return Subspace.span(M.rows, M.columns, M.p)


# -- subspaces --------------------------------------------------------------


class Subspace:
    """A subspace of GF(p)^n in reduced echelon form (pivot = low index).

    The basis is sorted by pivot and fully reduced, so two equal subspaces
    have identical ``key()`` regardless of how they were produced.
    """

    __slots__ = ("n", "p", "basis", "_table")

    def __init__(self, n: int, p: int, table: EchelonTable):
        self.n = n
        self.p = p
        self._table = table
        F = table.F
        # full back-substitution for canonicity
        los = sorted(table.pivots)
        for i, lo in enumerate(los):
            x = table.pivots[lo]
            for lo2 in reversed(los[:i]):
                c = F.coeff(x, lo2)
                if c:
                    x = F.axpy(x, -c, table.pivots[lo2])
            table.pivots[lo] = x
        self.basis = tuple(table.pivots[lo] for lo in los)

    @classmethod
    def span(cls, n: int, vectors: Iterable, p: int = 2) -> "Subspace":
        t = EchelonTable(field(p))
        for v in vectors:
            if field(p).low(v) >= n:
                raise ValueError("vector outside the ambient space")
            t.insert(v)
        return cls(n, p, t)

    @classmethod
    def zero(cls, n: int, p: int = 2) -> "Subspace":
        return cls(n, p, EchelonTable(field(p)))

    @classmethod
    def full(cls, n: int, p: int = 2) -> "Subspace":
        F = field(p)
        return cls.span(n, (F.unit(i) for i in range(n)), p)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def field(self) -> Field:
        return field(self.p)

    def key(self) -> tuple:
        F = self.field
        return (self.n, self.p, tuple(F.canonical(b) for b in self.basis))

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Subspace(n={self.n}, dim={self.dim}, p={self.p})"

    def contains_vector(self, x) -> bool:
        return self.field.low(_reduce_plain(self._table, x)) < 0

    def contains(self, other: "Subspace") -> bool:
        _check(self, other)
        return all(self.contains_vector(b) for b in other.basis)


def _check(a: Subspace, b: Subspace) -> None:
    if a.n != b.n or a.p != b.p:
        raise ValueError("subspaces live in different ambient spaces")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check(a, b)
    return Subspace.span(a.n, list(a.basis) + list(b.basis), a.p)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: echelonize (x|x) for x in A and (y|0) for y in B."""
    _check(a, b)
    F = a.field
    n = a.n
    t = EchelonTable(F)
    for x in a.basis:
        t.insert(F.axpy(F.shift(x, n), 1, x))
    for y in b.basis:
        t.insert(F.shift(y, n))
    vecs = [v for lo, v in t.pivots.items() if lo < n]
    return Subspace.span(n, vecs, a.p)


def quotient_dim(num: Subspace, den: Subspace) -> int:
    if not num.contains(den):
        raise ValueError("denominator is not contained in numerator")
    return num.dim - den.dim


# -- persistence ------------------------------------------------------------


@dataclass(frozen=True)
class PersistencePairing:
    pairs: tuple[tuple[int, int], ...]
    essential: tuple[int, ...]


def _order_check(F: Field, columns: Sequence) -> None:
    for j, col in enumerate(columns):
        if F.low(col) >= j:
            raise ValueError(f"column {j} has a face at or after its own position")


def persistence_reduce(columns: Sequence, p: int = 2, check: bool = True,
                       return_reduced: bool = False, cycles: bool = False):
    """Standard left-to-right column reduction of a filtered boundary matrix.

    ``columns[j]`` is the boundary of the j-th simplex in filtration order,
    as a field vector over simplex positions. With ``cycles=True`` the
    combination V_j that reduces a positive column to zero is also returned
    (a cycle with low index j).
    """
    F = field(p)
    if check:
        _order_check(F, columns)
    pivot_of: dict[int, int] = {}
    reduced: list = [None] * len(columns)
    combo: list = [None] * len(columns) if cycles else []
    cyc: dict[int, object] = {}
    p2 = p == 2
    for j, col in enumerate(columns):
        x = F.copy(col)
        v = F.unit(j) if cycles else None
        while True:
            lo = F.low(x)
            if lo < 0 or lo not in pivot_of:
                break
            i = pivot_of[lo]
            y = reduced[i]
            if p2:
                x ^= y
                if cycles:
                    v ^= combo[i]
            else:
                c = -F.coeff(x, lo) * F.inv(F.coeff(y, lo))
                x = F.iaxpy(x, c, y)
                if cycles:
                    v = F.iaxpy(v, c, combo[i])
        reduced[j] = x
        if cycles:
            combo[j] = v
        lo = F.low(x)
        if lo >= 0:
            pivot_of[lo] = j
        elif cycles:
            cyc[j] = v
    paired = set(pivot_of) | set(pivot_of.values())
    pairs = tuple(sorted((b, d) for b, d in pivot_of.items()))
    essential = tuple(j for j in range(len(columns)) if j not in paired)
    out = PersistencePairing(pairs, essential)
    extra = []
    if return_reduced:
        extra.append(reduced)
    if cycles:
        extra.append(cyc)
    return (out, *extra) if extra else out


def persistence_reduce_rows(columns: Sequence, p: int = 2) -> PersistencePairing:
    """Row-oriented reduction: sweep rows bottom-up, pivot on the leftmost column.

    The persistence pairing does not depend on the reduction order, so this
    must agree with :func:`persistence_reduce`; it serves as a cross-check.
    """
    F = field(p)
    _order_check(F, columns)
    cols = list(columns)
    n = len(cols)
    # rows_of[i]: columns whose current low is i
    by_low: dict[int, list[int]] = {}
    for j, c in enumerate(cols):
        lo = F.low(c)
        if lo >= 0:
            by_low.setdefault(lo, []).append(j)
    pivot_of: dict[int, int] = {}
    for i in range(n - 1, -1, -1):
        js = by_low.pop(i, None)
        if not js:
            continue
        js.sort()
        j0 = js[0]
        piv = cols[j0]
        c0 = F.coeff(piv, i)
        pivot_of[i] = j0
        for j in js[1:]:
            x = F.axpy(cols[j], -F.coeff(cols[j], i) * F.inv(c0), piv)
            cols[j] = x
            lo = F.low(x)
            if lo >= 0:
                by_low.setdefault(lo, []).append(j)
    paired = set(pivot_of) | set(pivot_of.values())
    pairs = tuple(sorted(pivot_of.items()))
    essential = tuple(j for j in range(n) if j not in paired)
    return PersistencePairing(pairs, essential)
