from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from novikov_configs.values import Generators, IndeterminateComparison, ValueVector, to_fraction

SQRT2 = Generators(("theta1",), (Fraction("1.41421356237"),), (Fraction("1e-9"),))


def V(q, *lat):
    return ValueVector.of(q, lat)


def test_compare_examples():
    assert SQRT2.compare(V(0, 1), V(0, 1)) == 0
    assert Generators().compare(V("1/2"), V("1/3")) == 1
    assert SQRT2.compare(V(0, 1), V("3/2", 0)) == -1


def test_indeterminate_when_below_precision():
    g = Generators(("t",), (Fraction("1.5"),), (Fraction("1e-3"),))
    # 2t - 3 evaluates to 0 at the decimal but is structurally nonzero
    with pytest.raises(IndeterminateComparison):
        g.sign(V(-3, 2))


def test_to_fraction_accepts_decimal_text_and_ints():
    assert to_fraction("0.25") == Fraction(1, 4)
    assert to_fraction("2/1") == 2
    assert to_fraction(3) == 3


def test_json_round_trip():
    v = V("-7/3", 4, -1)
    assert ValueVector.from_json(v.to_json()) == v


lattice = st.tuples(st.integers(-50, 50))
rationals = st.fractions(min_value=-100, max_value=100, max_denominator=60)


@given(rationals, lattice, rationals, lattice)
def test_compare_is_antisymmetric(q1, l1, q2, l2):
    u, v = ValueVector(q1, l1), ValueVector(q2, l2)
    assert SQRT2.compare(u, v) == -SQRT2.compare(v, u)


@given(st.lists(st.tuples(rationals, lattice), min_size=1, max_size=25))
def test_sorted_distinct_matches_exact_float_order(items):
    vals = [ValueVector(q, l) for q, l in items]
    out = SQRT2.sorted_distinct(vals)
    assert len(out) == len(set(vals))
    for a, b in zip(out, out[1:]):
        assert SQRT2.compare(a, b) < 0
        # independent check with exact evaluation at the decimal
        assert SQRT2.evaluate(a) < SQRT2.evaluate(b)


@given(rationals, lattice, st.integers(-5, 5))
def test_scale_is_repeated_addition(q, l, c):
    v = ValueVector(q, l)
    acc = ValueVector.zero(1)
    for _ in range(abs(c)):
        acc = acc + (v if c > 0 else -v)
    assert v.scale(c) == acc
