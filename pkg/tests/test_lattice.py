from fractions import Fraction
from itertools import product

from hypothesis import given, settings, strategies as st

from novikov_configs.lattice import (hermite_rows, integer_inverse, integer_kernel,
                                     lattice_from_periods, small_deck_basis)
from novikov_configs.values import Generators, ValueVector

G2 = Generators(("theta1",), (Fraction("1.41421356237"),), (Fraction("1e-9"),))


def V(q, *lat):
    return ValueVector.of(q, lat)


def det(rows):
    if len(rows) == 1:
        return rows[0][0]
    return sum((-1) ** j * rows[0][j] * det([r[:j] + r[j + 1:] for r in rows[1:]])
               for j in range(len(rows)))


def test_rational_periods_give_gcd():
    lat = lattice_from_periods([V(4), V(6), V(-10)], 0, Generators())
    assert lat.rank == 1 and lat.basis == (V(2),)
    assert lat.coordinates(V(8)) == (4,)
    assert lat.coordinates(V(3)) is None


def test_mixed_periods_rank_two():
    lat = lattice_from_periods([V(3, 0), V(0, 3), V(3, 3)], 1, G2)
    assert lat.rank == 2
    assert lat.contains(V(6, -3)) and not lat.contains(V(1, 0)) and not lat.contains(V(0, 1))
    assert lat.period_scale(G2) == V(0, 3)


def test_rebased_keeps_group_and_period_scale():
    lat = lattice_from_periods([V(3, 0), V(0, 3)], 1, G2)
    re = lat.rebased([[1, 3], [1, 2]], G2)
    assert set(re.basis) != set(lat.basis)
    for a, b in product(range(-3, 4), repeat=2):
        g = lat.element([a, b])
        m = re.coordinates(g)
        assert m is not None and re.element(m) == g
    assert re.period_scale(G2) == lat.period_scale(G2)


def test_hermite_rows_span_same_lattice():
    rows = [[4, 6, 2], [2, 3, 1], [0, 3, 3]]
    h = hermite_rows(rows)
    assert len(h) == 2

    def in_span(r):
        return any([a * x + b * y for x, y in zip(*h)] == r
                   for a, b in product(range(-6, 7), repeat=2))

    assert all(in_span(r) for r in rows)
    # and the generators of h lie in the span of the rows
    assert all(any([a * x + b * y + c * z for x, y, z in zip(*rows)] == list(hr)
                   for a, b, c in product(range(-4, 5), repeat=3)) for hr in h)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=4))
@settings(max_examples=60)
def test_integer_kernel_vectors_are_in_kernel(mat):
    ker = integer_kernel(mat, 4)
    for v in ker:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in mat)


def test_integer_inverse():
    U = [[2, 1], [1, 1]]
    inv = integer_inverse(U)
    assert [[sum(U[i][k] * inv[k][j] for k in range(2)) for j in range(2)] for i in range(2)] \
        == [[1, 0], [0, 1]]


def test_small_deck_basis_is_unimodular_and_not_worse():
    decks = [(-1, 2), (1, -1), (0, 1), (2, -3)]
    U = small_deck_basis(decks, 2)
    assert U is not None and abs(det(U)) == 1
    inv = integer_inverse(U)

    def cost(vs):
        return max(abs(c) for v in vs for c in v)

    new = [[sum(d[l] * inv[l][j] for l in range(2)) for j in range(2)] for d in decks]
    assert cost(new) <= cost(decks)
    assert small_deck_basis(decks, 1) is None
