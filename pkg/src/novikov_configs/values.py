"""Exact values in Q + Z.theta_1 + ... + Z.theta_n.

Every cocycle value, lift value and critical value is stored as a rational
part plus integer coordinates on the declared irrational generators.
Equality is structural; ordering goes through the decimal approximations of
the generators and refuses to answer when the approximation cannot decide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, cmp_to_key
from typing import Iterable, Sequence


class IndeterminateComparison(ArithmeticError):
    """Two distinct values are closer than the generator precision allows to resolve."""


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        # go through repr so 0.1 means one tenth, not the binary expansion
        return Fraction(repr(x))
    return Fraction(str(x).strip())


@dataclass(frozen=True)
class ValueVector:
    rational: Fraction
    lattice: tuple[int, ...] = ()

    def __post_init__(self):
        if not isinstance(self.rational, Fraction):
            object.__setattr__(self, "rational", to_fraction(self.rational))
        object.__setattr__(self, "lattice", tuple(int(c) for c in self.lattice))

    @classmethod
    def zero(cls, n: int) -> "ValueVector":
        return cls(Fraction(0), (0,) * n)

    @classmethod
    def of(cls, rational, lattice: Iterable[int] = ()) -> "ValueVector":
        return cls(to_fraction(rational), tuple(lattice))

    def _check(self, other: "ValueVector") -> None:
        if len(self.lattice) != len(other.lattice):
            raise ValueError("values live over different generator lists")

    def __add__(self, other: "ValueVector") -> "ValueVector":
        self._check(other)
        return ValueVector(self.rational + other.rational,
                           tuple(a + b for a, b in zip(self.lattice, other.lattice)))

    def __sub__(self, other: "ValueVector") -> "ValueVector":
        self._check(other)
        return ValueVector(self.rational - other.rational,
                           tuple(a - b for a, b in zip(self.lattice, other.lattice)))

    def __neg__(self) -> "ValueVector":
        return ValueVector(-self.rational, tuple(-a for a in self.lattice))

    def scale(self, c: int) -> "ValueVector":
        return ValueVector(self.rational * c, tuple(c * a for a in self.lattice))

    def is_zero(self) -> bool:
        return self.rational == 0 and not any(self.lattice)

    def to_json(self) -> dict:
        return {"rational": f"{self.rational.numerator}/{self.rational.denominator}",
                "lattice": list(self.lattice)}

    @classmethod
    def from_json(cls, obj) -> "ValueVector":
        return cls(to_fraction(obj["rational"]), tuple(obj.get("lattice", ())))


@dataclass(frozen=True)
class Generators:
    """Decimal approximations of the irrational generators theta_i.

    ``precisions[i]`` bounds ``|theta_i - decimals[i]|``.
    """

    names: tuple[str, ...] = ()
    decimals: tuple[Fraction, ...] = ()
    precisions: tuple[Fraction, ...] = ()

    @property
    def n(self) -> int:
        return len(self.decimals)

    def evaluate(self, v: ValueVector) -> Fraction:
        return v.rational + sum((c * d for c, d in zip(v.lattice, self.decimals)), Fraction(0))

    def error(self, v: ValueVector) -> Fraction:
        return sum((abs(c) * e for c, e in zip(v.lattice, self.precisions)), Fraction(0))

    def to_float(self, v: ValueVector) -> float:
        return float(self.evaluate(v))

    @cached_property
    def _floats(self) -> tuple[tuple[float, ...], tuple[float, ...]]:
        return (tuple(float(d) for d in self.decimals),
                tuple(float(e) for e in self.precisions))

    def sign(self, v: ValueVector) -> int:
        if v.is_zero():
            return 0
        # float screen: decide when the float error cannot flip the answer
        decs, precs = self._floats
        x = float(v.rational)
        size = abs(x)
        bound = 0.0
        for c, d, e in zip(v.lattice, decs, precs):
            x += c * d
            size += abs(c * d)
            bound += abs(c) * e
        if abs(x) > 2 * bound + 1e-12 * (size + 1.0):
            return 1 if x > 0 else -1
        approx = self.evaluate(v)
        if abs(approx) <= self.error(v):
            raise IndeterminateComparison(
                f"cannot decide the sign of {v} at the declared precision")
        return 1 if approx > 0 else -1

    def compare(self, u: ValueVector, v: ValueVector) -> int:
        """-1, 0 or 1 according to the real order of u and v."""
        if u == v:
            return 0
        return self.sign(u - v)

    def sorted_distinct(self, values: Iterable[ValueVector]) -> list[ValueVector]:
        """Distinct values in increasing real order.

        Sorting uses float approximations; adjacent pairs are then certified
        against the precision bound, which is enough for the whole chain by
        transitivity. An adjacent inversion triggers an exact re-sort.
        """
        distinct = set(values)
        decs = self._floats[0]
        keyed = sorted(distinct, key=lambda v: (
            float(v.rational) + sum(c * d for c, d in zip(v.lattice, decs)), v.rational, v.lattice))
        if any(self.sign(b - a) != 1 for a, b in zip(keyed, keyed[1:])):
            keyed.sort(key=cmp_to_key(self.compare))
            for a, b in zip(keyed, keyed[1:]):
                if self.sign(b - a) != 1:
                    raise IndeterminateComparison(f"cannot order {a} and {b}")
        return keyed

    def from_decimal(self, text) -> ValueVector:
        return ValueVector(to_fraction(text), (0,) * self.n)

    def min(self, values: Sequence[ValueVector]) -> ValueVector:
        best = values[0]
        for v in values[1:]:
            if self.compare(v, best) < 0:
                best = v
        return best

    def max(self, values: Sequence[ValueVector]) -> ValueVector:
        best = values[0]
        for v in values[1:]:
            if self.compare(v, best) > 0:
                best = v
        return best
