"""Extension fields of GF(p) and polynomials over GF(p).

Random evaluation of twisted boundary matrices needs a large field of the
same characteristic as the coefficient field. For p = 2 we use GF(2^e)
with log/antilog tables over a primitive polynomial; for odd p the
quadratic extension GF(p^2) with explicit formulas.
"""

from __future__ import annotations

import random
from array import array
from functools import lru_cache


# -- binary polynomials as ints ---------------------------------------------


def _clmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _clmod(a: int, f: int) -> int:
    df = f.bit_length() - 1
    while a.bit_length() - 1 >= df:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def _clpowmod(a: int, n: int, f: int) -> int:
    out = 1
    a = _clmod(a, f)
    while n:
        if n & 1:
            out = _clmod(_clmul(out, a), f)
        a = _clmod(_clmul(a, a), f)
        n >>= 1
    return out


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def primitive_binary_poly(e: int) -> int:
    """Smallest f of degree e over GF(2) for which x generates GF(2^e)^*."""
    q1 = (1 << e) - 1
    factors = _prime_factors(q1)
    for f in range((1 << e) + 1, 1 << (e + 1), 2):
        if _clpowmod(2, q1, f) != 1:
            continue
        if all(_clpowmod(2, q1 // l, f) != 1 for l in factors):
            return f
    raise ValueError(f"no primitive polynomial of degree {e}")


class BinaryField:
    """GF(2^e) with elements encoded as ints 0 .. 2^e - 1."""

    def __init__(self, e: int = 18):
        self.p, self.e = 2, e
        self.q = 1 << e
        self.poly = primitive_binary_poly(e)
        q1 = self.q - 1
        exp = array("l", [0]) * (2 * q1)
        log = array("l", [0]) * self.q
        x = 1
        top = self.q
        for i in range(q1):
            exp[i] = x
            exp[i + q1] = x
            log[x] = i
            x <<= 1
            if x & top:
                x ^= self.poly
        self._exp, self._log, self._q1 = exp, log, q1

    zero, one = 0, 1

    def add(self, a: int, b: int) -> int:
        return a ^ b

    sub = add

    def neg(self, a: int) -> int:
        return a

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self._q1 - self._log[a]) % self._q1]

    def pow(self, a: int, n: int) -> int:
        if n == 0:
            return 1
        if not a:
            if n < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return self._exp[(self._log[a] * n) % self._q1]

    def from_int(self, c: int) -> int:
        return c & 1

    def is_zero(self, a) -> bool:
        return not a

    def random_nonzero(self, rng: random.Random) -> int:
        return rng.randrange(1, self.q)


class QuadraticField:
    """GF(p^2) = GF(p)[s] / (s^2 - n) for a non-residue n, p odd."""

    def __init__(self, p: int):
        if p == 2:
            raise ValueError("use BinaryField for characteristic 2")
        self.p, self.e = p, 2
        self.q = p * p
        n = 2
        while pow(n, (p - 1) // 2, p) != p - 1:
            n += 1
        self.n = n

    zero, one = (0, 0), (1, 0)

    def add(self, a, b):
        p = self.p
        return ((a[0] + b[0]) % p, (a[1] + b[1]) % p)

    def sub(self, a, b):
        p = self.p
        return ((a[0] - b[0]) % p, (a[1] - b[1]) % p)

    def neg(self, a):
        p = self.p
        return ((-a[0]) % p, (-a[1]) % p)

    def mul(self, a, b):
        p = self.p
        return ((a[0] * b[0] + self.n * a[1] * b[1]) % p, (a[0] * b[1] + a[1] * b[0]) % p)

    def inv(self, a):
        p = self.p
        norm = (a[0] * a[0] - self.n * a[1] * a[1]) % p
        if not norm:
            raise ZeroDivisionError("inverse of zero")
        ni = pow(norm, p - 2, p)
        return ((a[0] * ni) % p, (-a[1] * ni) % p)

    def pow(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        out = self.one
        while n:
            if n & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            n >>= 1
        return out

    def from_int(self, c: int):
        return (c % self.p, 0)

    def is_zero(self, a) -> bool:
        return a == (0, 0)

    def random_nonzero(self, rng: random.Random):
        while True:
            a = (rng.randrange(self.p), rng.randrange(self.p))
            if a != (0, 0):
                return a


@lru_cache(maxsize=None)
def extension_field(p: int):
    return BinaryField() if p == 2 else QuadraticField(p)


def matrix_rank(K, rows: list[list]) -> int:
    """Rank of a dense matrix over the field K by Gaussian elimination."""
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return 0
    nr, nc = len(m), len(m[0])
    rk = 0
    for c in range(nc):
        piv = next((i for i in range(rk, nr) if not K.is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = K.inv(m[rk][c])
        prow = m[rk]
        for i in range(rk + 1, nr):
            if not K.is_zero(m[i][c]):
                f = K.mul(m[i][c], inv)
                row = m[i]
                for j in range(c, nc):
                    if not K.is_zero(prow[j]):
                        row[j] = K.sub(row[j], K.mul(f, prow[j]))
        rk += 1
        if rk == nr:
            break
    return rk


# -- univariate polynomials over GF(p) --------------------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_sub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                  for i in range(n)])


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_divexact(a, b, p):
    """a / b for polynomials over GF(p) when b divides a."""
    a = list(a)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    inv = pow(b[-1], p - 2, p)
    out = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = (a[-1] * inv) % p
        d = len(a) - len(b)
        out[d] = c
        for i, y in enumerate(b):
            a[i + d] = (a[i + d] - c * y) % p
        _trim(a)
    if a:
        raise ArithmeticError("inexact polynomial division")
    return _trim(out)


def poly_matrix_rank(rows: list[list[list[int]]], p: int) -> int:
    """Rank over GF(p)(t) of a matrix with entries in GF(p)[t] (Bareiss)."""
    m = [[list(x) for x in r] for r in rows]
    if not m or not m[0]:
        return 0
    nr, nc = len(m), len(m[0])
    rk = 0
    prev = [1]
    for c in range(nc):
        piv = next((i for i in range(rk, nr) if m[i][c]), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        pv = m[rk][c]
        for i in range(rk + 1, nr):
            for j in range(c + 1, nc):
                num = poly_sub(poly_mul(pv, m[i][j], p), poly_mul(m[i][c], m[rk][j], p), p)
                m[i][j] = poly_divexact(num, prev, p) if num else []
            m[i][c] = []
        # columns left of c in the remaining rows are already zero
        prev = pv
        rk += 1
        if rk == nr:
            break
    return rk
