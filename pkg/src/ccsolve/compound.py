"""Conjunctions of conditional events and their subset previsions.

The conjunction of a family ``F`` is the random quantity that is 1 when every
member is true, 0 when some member is false, and ``x_S`` when exactly the
members in ``S`` are void, ``x_S`` being the prevision of the conjunction of
``S``.  An assessment therefore has to provide ``x_S`` for every nonempty
subset, smaller subsets first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Union

from .coherence import AssessmentProblem, Interval, Item, check_coherence, ratio_interval
from .errors import ContextMismatch, IncoherentAssessment, MissingPrevision
from .events import AtomContext, ConditionalEvent, Outcome, members
from .tables import ValueTable

MAX_FAMILY = 10

Subset = frozenset


@dataclass(frozen=True)
class Family:
    """Semantically deduplicated family of conditional events in canonical order."""

    events: tuple

    def __post_init__(self):
        uniq = {}
        for ce in self.events:
            uniq.setdefault(ce, ce)
        evs = tuple(sorted(uniq, key=lambda ce: ce.key))
        if len({ce.context for ce in evs}) > 1:
            raise ContextMismatch("family members live on different atom contexts")
        if len(evs) > MAX_FAMILY:
            raise ValueError(f"families are capped at {MAX_FAMILY} members")
        object.__setattr__(self, "events", evs)

    @classmethod
    def of(cls, *events) -> "Family":
        if len(events) == 1 and not isinstance(events[0], ConditionalEvent):
            events = tuple(events[0])
        return cls(tuple(events))

    @property
    def context(self) -> AtomContext:
        return self.events[0].context

    def __iter__(self):
        return iter(self.events)

    def __len__(self):
        return len(self.events)

    def __getitem__(self, i):
        return self.events[i]

    def __contains__(self, ce):
        return ce in self.events

    @property
    def as_set(self) -> Subset:
        return frozenset(self.events)

    def subsets(self):
        """Nonempty subsets, by size then canonical order."""
        for r in range(1, len(self.events) + 1):
            for combo in itertools.combinations(self.events, r):
                yield frozenset(combo)

    def antecedent(self) -> int:
        h = 0
        for ce in self.events:
            h |= ce.h
        return h

    def __str__(self):
        return "{" + ", ".join(str(ce) for ce in self.events) + "}"


def conjoin_families(f1: Family, f2: Family) -> Family:
    if f1.context != f2.context:
        raise ContextMismatch("families live on different atom contexts")
    return Family(f1.events + f2.events)


def subset_label(S) -> str:
    return "x{" + ",".join(str(ce) for ce in sorted(S, key=lambda ce: ce.key)) + "}"


@dataclass(frozen=True)
class PrevisionAssessment:
    """Map from nonempty sets of conditional events to their conjunction previsions."""

    values: Mapping = field(default_factory=dict)

    def __post_init__(self):
        vals = {}
        for S, x in dict(self.values).items():
            S = frozenset([S]) if isinstance(S, ConditionalEvent) else frozenset(S)
            if not S:
                raise ValueError("previsions are indexed by nonempty sets")
            x = Fraction(x)
            if not 0 <= x <= 1:
                raise ValueError(f"{subset_label(S)} = {x} outside [0, 1]")
            vals[S] = x
        for S, x in vals.items():
            if x == 0:
                for T, y in vals.items():
                    if S < T and y != 0:
                        raise IncoherentAssessment(
                            f"{subset_label(S)} = 0 forces {subset_label(T)} = 0, got {y}"
                        )
        object.__setattr__(self, "values", MappingProxyType(vals))

    def __getitem__(self, S) -> Fraction:
        S = frozenset([S]) if isinstance(S, ConditionalEvent) else frozenset(S)
        try:
            return self.values[S]
        except KeyError:
            raise MissingPrevision(f"{subset_label(S)} is not assessed") from None

    def __contains__(self, S) -> bool:
        S = frozenset([S]) if isinstance(S, ConditionalEvent) else frozenset(S)
        return S in self.values

    def __len__(self):
        return len(self.values)

    def with_value(self, S, x) -> "PrevisionAssessment":
        S = frozenset([S]) if isinstance(S, ConditionalEvent) else frozenset(S)
        d = dict(self.values)
        d[S] = x
        return PrevisionAssessment(d)

    def restrict(self, f: Family) -> "PrevisionAssessment":
        universe = f.as_set
        return PrevisionAssessment({S: x for S, x in self.values.items() if S <= universe})

    def items(self):
        return self.values.items()

    @classmethod
    def of(cls, pairs: Iterable) -> "PrevisionAssessment":
        return cls(dict(pairs))


def conjunction_values(events, assessment: PrevisionAssessment, *, top=None) -> list:
    """Per-constituent values of the conjunction of ``events``.

    Where every member is void the value is ``top`` if given, otherwise the
    assessed prevision of the whole conjunction.
    """
    events = tuple(events)
    ctx = events[0].context
    whole = frozenset(events)
    one, zero = Fraction(1), Fraction(0)
    false = 0
    for ce in events:
        false |= ce.false_mask
    cache = {}
    values = []
    for c in range(ctx.size):
        if false >> c & 1:
            values.append(zero)
            continue
        S = frozenset(ce for ce in events if not ce.h >> c & 1)
        if not S:
            values.append(one)
        elif S == whole and top is not None:
            values.append(top)
        else:
            if S not in cache:
                cache[S] = assessment[S]
            values.append(cache[S])
    return values


def subset_item(S, assessment: PrevisionAssessment) -> Item:
    events = sorted(S, key=lambda ce: ce.key)
    x = assessment[S]
    table = ValueTable(events[0].context, tuple(conjunction_values(events, assessment, top=x)))
    h = 0
    for ce in events:
        h |= ce.h
    return Item(table, h, x, subset_label(S))


def assessment_problem(f: Family, a: PrevisionAssessment, exclude=()) -> AssessmentProblem:
    """Coherence problem for all assessed subset previsions of ``f``."""
    exclude = set(exclude)
    items = [subset_item(S, a) for S in f.subsets() if S in a and S not in exclude]
    return AssessmentProblem(f.context, tuple(items))


def is_coherent_assessment(f: Family, a: PrevisionAssessment) -> bool:
    return check_coherence(assessment_problem(f, a)).coherent


Policy = Union[str, Callable[[Interval], Fraction]]


@dataclass(frozen=True)
class ConjunctionTable:
    family: Family
    assessment: PrevisionAssessment
    table: ValueTable

    @property
    def prevision(self) -> Fraction:
        return self.assessment[self.family.as_set]

    def value_set(self) -> set:
        return self.table.distinct()


def build_conjunction(f: Family, a: PrevisionAssessment, *, check: bool = True, fill: Policy | None = None) -> ConjunctionTable:
    """Conjunction table of ``f``; ``a`` must assess every nonempty subset.

    With ``fill`` set to a policy (see :func:`autofill`) missing previsions
    are completed first.
    """
    a = a.restrict(f)
    if fill is not None:
        a = autofill(f, a, fill)
    for S in f.subsets():
        if S not in a:
            raise MissingPrevision(f"{subset_label(S)} is not assessed")
    if check:
        verdict = check_coherence(assessment_problem(f, a))
        if not verdict.coherent:
            raise IncoherentAssessment(f"assessment on {f} is not coherent")
    values = conjunction_values(f.events, a)
    return ConjunctionTable(f, a, ValueTable(f.context, tuple(values)))


def frechet_bounds(xs) -> Interval:
    xs = [Fraction(x) for x in xs]
    if not xs or not all(0 <= x <= 1 for x in xs):
        raise ValueError("marginals must be a nonempty list of values in [0, 1]")
    return Interval(max(sum(xs) - len(xs) + 1, Fraction(0)), min(xs))


def prevision_interval(scope: Family, a: PrevisionAssessment, S) -> Interval:
    """Coherent values of ``x_S`` given every assessed subset of ``scope`` not containing ``S``."""
    S = frozenset(S)
    a = a.restrict(scope)
    events = sorted(S, key=lambda ce: ce.key)
    ctx = scope.context
    h = 0
    for ce in events:
        h |= ce.h
    vals = conjunction_values(events, a, top=Fraction(0))
    num = [v if h >> c & 1 else Fraction(0) for c, v in enumerate(vals)]
    den = [Fraction(h >> c & 1) for c in range(ctx.size)]
    items = [subset_item(T, a) for T in scope.subsets() if T in a and not T >= S]
    return ratio_interval(AssessmentProblem(ctx, tuple(items)), num, den)


def conjunction_prevision_interval(f: Family, a: PrevisionAssessment) -> Interval:
    return prevision_interval(f, a, f.as_set)


def _choose(policy: Policy, interval: Interval) -> Fraction:
    if callable(policy):
        return Fraction(policy(interval))
    if policy == "midpoint":
        return interval.midpoint
    if policy == "lo":
        return interval.lo
    if policy == "hi":
        return interval.hi
    raise ValueError(f"unknown auto-fill policy {policy!r}")


def autofill(f: Family, a: PrevisionAssessment, policy: Policy = "midpoint") -> PrevisionAssessment:
    """Complete ``a`` on every subset of ``f``, smaller subsets first."""
    for S in f.subsets():
        if S not in a:
            a = a.with_value(S, _choose(policy, prevision_interval(f, a, S)))
    return a


def is_constant_zero(t: ConjunctionTable) -> bool:
    return t.table.is_constant(Fraction(0))


@dataclass(frozen=True)
class ConstituentClass:
    """Constituents sharing one outcome pattern over the family."""

    pattern: tuple  # Outcome per family member, or None for the collapsed zero class
    constituents: tuple
    subset: frozenset  # void members; empty for the all-true and zero classes
    value: object  # Fraction, or None when x_S is unassessed


def constituent_classes(f: Family, a: PrevisionAssessment | None = None) -> list:
    """Rows of the conjunction table: the zero class first, then one per pattern."""
    a = a or PrevisionAssessment()
    ctx = f.context
    false = 0
    for ce in f:
        false |= ce.false_mask
    groups = {}
    for c in range(ctx.size):
        if false >> c & 1:
            continue
        pattern = tuple(Outcome.VOID if not ce.h >> c & 1 else Outcome.TRUE for ce in f)
        groups.setdefault(pattern, []).append(c)
    rows = []
    if false:
        rows.append(ConstituentClass(None, tuple(members(false)), frozenset(), Fraction(0)))
    for pattern in sorted(groups, key=lambda p: [o.value for o in p], reverse=True):
        S = frozenset(ce for ce, o in zip(f, pattern) if o is Outcome.VOID)
        value = Fraction(1) if not S else (a.values.get(S))
        rows.append(ConstituentClass(pattern, tuple(groups[pattern]), S, value))
    return rows
