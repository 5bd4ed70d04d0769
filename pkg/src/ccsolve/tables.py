"""Value tables: the computable form of a conditional random quantity."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .events import AtomContext


@dataclass(frozen=True)
class Affine:
    """``const + coef * mu`` for a single unknown prevision ``mu``."""

    const: Fraction
    coef: Fraction = Fraction(0)

    @staticmethod
    def lift(v) -> "Affine":
        return v if isinstance(v, Affine) else Affine(Fraction(v))

    def __add__(self, other):
        o = Affine.lift(other)
        return Affine(self.const + o.const, self.coef + o.coef)

    __radd__ = __add__

    def __sub__(self, other):
        o = Affine.lift(other)
        return Affine(self.const - o.const, self.coef - o.coef)

    def __rsub__(self, other):
        return Affine.lift(other) - self

    def __mul__(self, k):
        if isinstance(k, Affine):
            if k.coef and self.coef:
                raise ValueError("product is not affine")
            if k.coef:
                return k * self.const
            k = k.const
        return Affine(self.const * k, self.coef * k)

    __rmul__ = __mul__

    def at(self, mu) -> Fraction:
        return self.const + self.coef * Fraction(mu)

    @property
    def is_constant(self) -> bool:
        return self.coef == 0

    def __str__(self):
        if not self.coef:
            return fmt(self.const)
        if not self.const:
            lead = "" if self.coef == 1 else ("-" if self.coef == -1 else fmt(self.coef) + "*")
            return f"{lead}mu"
        sign = "+" if self.coef > 0 else "-"
        c = abs(self.coef)
        term = "mu" if c == 1 else f"{fmt(c)}*mu"
        return f"{fmt(self.const)} {sign} {term}"


MU = Affine(Fraction(0), Fraction(1))

Value = Union[Fraction, Affine]


def fmt(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _normalize(v) -> Value:
    if isinstance(v, Affine):
        return v.const if v.coef == 0 else v
    return Fraction(v)


@dataclass(frozen=True)
class ValueTable:
    """Map constituent index -> exact value (a rational, or affine in ``mu``)."""

    context: AtomContext
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.context.size:
            raise ValueError("table length does not match the constituent space")
        object.__setattr__(self, "values", tuple(_normalize(v) for v in self.values))

    @classmethod
    def constant(cls, context: AtomContext, v) -> "ValueTable":
        return cls(context, (v,) * context.size)

    def __getitem__(self, c: int) -> Value:
        return self.values[c]

    def __len__(self):
        return len(self.values)

    def is_numeric(self) -> bool:
        return not any(isinstance(v, Affine) for v in self.values)

    def _zip(self, other):
        if isinstance(other, ValueTable):
            if other.context != self.context:
                raise ValueError("tables live on different atom contexts")
            return other.values
        return (other,) * len(self.values)

    def __add__(self, other) -> "ValueTable":
        return ValueTable(self.context, tuple(Affine.lift(a) + b for a, b in zip(self.values, self._zip(other))))

    def __sub__(self, other) -> "ValueTable":
        return ValueTable(self.context, tuple(Affine.lift(a) - b for a, b in zip(self.values, self._zip(other))))

    def __mul__(self, k) -> "ValueTable":
        return ValueTable(self.context, tuple(Affine.lift(a) * k for a in self.values))

    __rmul__ = __mul__

    def one_minus(self) -> "ValueTable":
        return ValueTable(self.context, tuple(1 - Affine.lift(v) for v in self.values))

    def substitute(self, mu) -> "ValueTable":
        mu = Fraction(mu)
        return ValueTable(self.context, tuple(v.at(mu) if isinstance(v, Affine) else v for v in self.values))

    def distinct(self) -> set:
        return set(self.values)

    def is_constant(self, v=None) -> bool:
        vals = self.distinct()
        if len(vals) != 1:
            return False
        return v is None or next(iter(vals)) == v

    def leq(self, other: "ValueTable") -> bool:
        if not (self.is_numeric() and other.is_numeric()):
            raise ValueError("pointwise order needs numeric tables")
        return all(a <= b for a, b in zip(self.values, self._zip(other)))

    def expectation(self, masses) -> Value:
        """Prevision of the table under ``{constituent: mass}`` (masses sum to 1)."""
        total = Affine(Fraction(0))
        for c, m in masses.items():
            total = total + Affine.lift(self.values[c]) * m
        return _normalize(total)
