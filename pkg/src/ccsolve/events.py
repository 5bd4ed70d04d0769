"""Boolean events over a finite set of atoms, constituents and conditional events.

Every event is ultimately reduced to a *truth vector*: a Python ``int`` whose
bit ``c`` is set iff the event holds at constituent ``c``.  Constituent ``c``
assigns atom ``j`` the truth value ``(c >> j) & 1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Iterator, Mapping

from .errors import BudgetExceeded, EmptyAntecedent, UnknownAtom

if TYPE_CHECKING:
    from .tables import ValueTable

MAX_ATOMS = 16


def _atom_mask(j: int, size: int) -> int:
    half = 1 << j
    mask = ((1 << half) - 1) << half
    width = half << 1
    while width < size:
        mask |= mask << width
        width <<= 1
    return mask


@dataclass(frozen=True)
class Constituent:
    index: int
    assignment: Mapping[str, bool] = field(compare=False)

    def __str__(self) -> str:
        return " ".join(name if v else "~" + name for name, v in self.assignment.items())


@dataclass(frozen=True)
class AtomContext:
    """Owns the constituent space generated by a list of atoms."""

    names: tuple[str, ...]
    _masks: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if not self.names:
            raise ValueError("at least one atom is required")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate atom names in {self.names}")
        if len(self.names) > MAX_ATOMS:
            raise BudgetExceeded(f"{len(self.names)} atoms exceed the budget of {MAX_ATOMS}")
        size = 1 << len(self.names)
        for j, name in enumerate(self.names):
            self._masks[name] = _atom_mask(j, size)

    @property
    def size(self) -> int:
        return 1 << len(self.names)

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def atom_mask(self, name: str) -> int:
        try:
            return self._masks[name]
        except KeyError:
            raise UnknownAtom(name) from None

    def atom(self, name: str) -> "Atom":
        self.atom_mask(name)
        return Atom(name)

    def atoms(self) -> tuple["Atom", ...]:
        return tuple(Atom(n) for n in self.names)

    def constituent(self, index: int) -> Constituent:
        if not 0 <= index < self.size:
            raise IndexError(index)
        return Constituent(index, {n: bool(index >> j & 1) for j, n in enumerate(self.names)})

    def constituents(self) -> Iterator[Constituent]:
        return (self.constituent(i) for i in range(self.size))

    def truth(self, e: "EventExpr | int") -> int:
        if isinstance(e, int):
            return e
        return e.truth(self)

    def cond(self, consequent, antecedent=None, name=None) -> "ConditionalEvent":
        return ConditionalEvent(consequent, TRUE if antecedent is None else antecedent, self, name)


def declare_atoms(names) -> AtomContext:
    return AtomContext(tuple(names))


def members(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# -- expressions -----------------------------------------------------------


class EventExpr:
    """Base class of the boolean expression tree."""

    __slots__ = ()

    def truth(self, ctx: AtomContext) -> int:
        raise NotImplementedError

    def evaluate(self, assignment: Mapping[str, bool]) -> bool:
        raise NotImplementedError

    def __and__(self, other: "EventExpr") -> "EventExpr":
        return And((self, other))

    def __or__(self, other: "EventExpr") -> "EventExpr":
        return Or((self, other))

    def __invert__(self) -> "EventExpr":
        return Not(self)

    def equivalent(self, other: "EventExpr", ctx: AtomContext) -> bool:
        return self.truth(ctx) == other.truth(ctx)


@dataclass(frozen=True)
class Const(EventExpr):
    value: bool

    def truth(self, ctx):
        return ctx.full if self.value else 0

    def evaluate(self, assignment):
        return self.value

    def __str__(self):
        return "TRUE" if self.value else "FALSE"


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class Atom(EventExpr):
    name: str

    def truth(self, ctx):
        return ctx.atom_mask(self.name)

    def evaluate(self, assignment):
        try:
            return bool(assignment[self.name])
        except KeyError:
            raise UnknownAtom(self.name) from None

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Not(EventExpr):
    arg: EventExpr

    def truth(self, ctx):
        return ctx.full & ~self.arg.truth(ctx)

    def evaluate(self, assignment):
        return not self.arg.evaluate(assignment)

    def __str__(self):
        inner = str(self.arg)
        return "~" + (inner if isinstance(self.arg, (Atom, Const, Not)) else f"({inner})")


@dataclass(frozen=True)
class And(EventExpr):
    args: tuple[EventExpr, ...]

    def truth(self, ctx):
        m = ctx.full
        for a in self.args:
            m &= a.truth(ctx)
        return m

    def evaluate(self, assignment):
        # no short circuit: unresolved atoms must raise regardless of order
        return all([a.evaluate(assignment) for a in self.args])

    def __str__(self):
        return " & ".join(f"({a})" if isinstance(a, (And, Or)) else str(a) for a in self.args)


@dataclass(frozen=True)
class Or(EventExpr):
    args: tuple[EventExpr, ...]

    def truth(self, ctx):
        m = 0
        for a in self.args:
            m |= a.truth(ctx)
        return m

    def evaluate(self, assignment):
        return any([a.evaluate(assignment) for a in self.args])

    def __str__(self):
        return " | ".join(f"({a})" if isinstance(a, Or) else str(a) for a in self.args)


def eval_event(e: EventExpr, c: Constituent) -> bool:
    return e.evaluate(c.assignment)


# -- conditional events ----------------------------------------------------


class Outcome(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    VOID = "void"

    def __str__(self):
        return self.value


@dataclass(frozen=True, eq=False)
class ConditionalEvent:
    """The trivalent object ``consequent | antecedent``.

    Equality and hashing are semantic: two conditional events are equal iff
    their antecedents and their consequent-and-antecedent parts have the same
    truth vectors.
    """

    consequent: EventExpr
    antecedent: EventExpr
    context: AtomContext
    name: str | None = None

    def __post_init__(self):
        h = self.context.truth(self.antecedent)
        if not h:
            raise EmptyAntecedent(f"antecedent {self.antecedent} is impossible")
        e = self.context.truth(self.consequent)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "eh", e & h)

    @property
    def key(self) -> tuple[int, int]:
        return (self.h, self.eh)

    @property
    def false_mask(self) -> int:
        return self.h & ~self.eh

    @property
    def void_mask(self) -> int:
        return self.context.full & ~self.h

    def __eq__(self, other):
        if not isinstance(other, ConditionalEvent):
            return NotImplemented
        return self.context == other.context and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __invert__(self) -> "ConditionalEvent":
        return ConditionalEvent(Not(self.consequent), self.antecedent, self.context)

    def __str__(self):
        if self.name:
            return self.name
        return f"{_wrap(self.consequent)}|{_wrap(self.antecedent)}"

    def __repr__(self):
        return f"ConditionalEvent({self.consequent} given {self.antecedent})"


def _wrap(e: EventExpr) -> str:
    return str(e) if isinstance(e, (Atom, Const, Not)) else f"({e})"


def outcome(ce: ConditionalEvent, c: Constituent) -> Outcome:
    bit = 1 << c.index
    if not ce.h & bit:
        return Outcome.VOID
    return Outcome.TRUE if ce.eh & bit else Outcome.FALSE


def indicator_table(ce: ConditionalEvent, x) -> "ValueTable":
    """Value table of ``ce``: 1 where true, 0 where false, ``x`` where void.

    The third value is overridden when the conditional event is logically
    determined: it is 1 when the antecedent implies the consequent and 0 when
    they are incompatible, since those are the only coherent probabilities.
    """
    from .tables import ValueTable

    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError(f"probability {x} outside [0, 1]")
    if ce.eh == ce.h:
        x = Fraction(1)
    elif ce.eh == 0:
        x = Fraction(0)
    one, zero = Fraction(1), Fraction(0)
    values = [x] * ce.context.size
    for c in members(ce.h):
        values[c] = one if ce.eh >> c & 1 else zero
    return ValueTable(ce.context, tuple(values))


def negate_table(t: "ValueTable") -> "ValueTable":
    if not t.is_numeric() or not all(0 <= v <= 1 for v in t.values):
        raise ValueError("negation needs numeric values in [0, 1]")
    return t.one_minus()


def minterm(ctx: AtomContext, index: int) -> EventExpr:
    lits = [Atom(n) if index >> j & 1 else Not(Atom(n)) for j, n in enumerate(ctx.names)]
    return lits[0] if len(lits) == 1 else And(tuple(lits))


def event_from_mask(ctx: AtomContext, mask: int) -> EventExpr:
    """Disjunctive normal form of the event with truth vector ``mask``."""
    if mask == 0:
        return FALSE
    if mask == ctx.full:
        return TRUE
    terms = [minterm(ctx, c) for c in members(mask)]
    return terms[0] if len(terms) == 1 else Or(tuple(terms))
