"""Coherence of prevision assessments on conditional random quantities.

An assessment ``P(X_i | H_i) = v_i`` (i in J) is checked layer by layer.  A
layer is a probability distribution ``lam`` on the constituents of the union
of the antecedents in J such that

    sum_{c in H_i} lam(c) * (X_i(c) - v_i) = 0      for every i in J.

Among all solutions the one with maximal support is kept; the items whose
antecedents still get zero mass form the next layer.  The assessment is
coherent iff every layer is solvable.

Extension intervals reuse the same layers.  For a target quantity given in
ratio form ``sum lam*a / sum lam*b`` (``b >= 0``; for ``Y|K`` take ``a = Y*K``,
``b = K``), the coherent values are those reachable at layer 0 with positive
mass on ``{b > 0}`` (a linear-fractional program, solved after the
Charnes-Cooper change of variables), together with the values coherent one
layer down when ``{b > 0}`` may receive zero mass.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import IncoherentAssessment
from .events import AtomContext, EventExpr, members
from .lp import UNBOUNDED, linprog, lp_feasible
from .tables import ValueTable, fmt

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    def __contains__(self, v) -> bool:
        return self.lo <= v <= self.hi

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __le__(self, other: "Interval") -> bool:
        """Containment."""
        return other.lo <= self.lo and self.hi <= other.hi

    def __str__(self):
        return f"[{fmt(self.lo)}, {fmt(self.hi)}]"


@dataclass(frozen=True)
class Item:
    """One assessed quantity ``P(table | antecedent) = value``."""

    table: ValueTable
    antecedent: int
    value: Fraction
    label: str = ""

    def __post_init__(self):
        if isinstance(self.antecedent, EventExpr):
            object.__setattr__(self, "antecedent", self.table.context.truth(self.antecedent))
        object.__setattr__(self, "value", Fraction(self.value))
        if not self.antecedent:
            raise ValueError("conditioning event is impossible")
        if not self.table.is_numeric():
            raise ValueError("assessed tables must be numeric")

    def row(self, cons: Sequence[int]) -> list:
        h, t, v = self.antecedent, self.table.values, self.value
        return [t[c] - v if h >> c & 1 else _ZERO for c in cons]


@dataclass(frozen=True)
class AssessmentProblem:
    context: AtomContext
    items: tuple

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        for it in self.items:
            if it.table.context != self.context:
                raise ValueError("item lives on a different atom context")

    @classmethod
    def of_events(cls, context, assessments) -> "AssessmentProblem":
        """Build from ``[(ConditionalEvent, probability), ...]``."""
        items = []
        for ce, x in assessments:
            x = Fraction(x)
            raw = _raw_indicator(ce, x)
            items.append(Item(raw, ce.h, x, str(ce)))
        return cls(context, tuple(items))

    def with_item(self, item: Item) -> "AssessmentProblem":
        return AssessmentProblem(self.context, self.items + (item,))


def _raw_indicator(ce, x) -> ValueTable:
    # unlike indicator_table, never overrides x: the value is under test
    vals = [x] * ce.context.size
    for c in members(ce.h):
        vals[c] = _ONE if ce.eh >> c & 1 else _ZERO
    return ValueTable(ce.context, tuple(vals))


@dataclass(frozen=True)
class Layer:
    items: tuple
    masses: tuple  # ((constituent, mass), ...) with positive masses summing to 1

    def as_dict(self) -> dict:
        return dict(self.masses)


@dataclass(frozen=True)
class CoherenceVerdict:
    coherent: bool
    layers: tuple = ()
    failed_items: tuple = ()

    def __bool__(self):
        return self.coherent


def _union(problem, J) -> int:
    u = 0
    for i in J:
        u |= problem.items[i].antecedent
    return u


def _mass(x, cons, mask) -> Fraction:
    return sum((v for v, c in zip(x, cons) if mask >> c & 1), _ZERO)


def solve_layer(problem: AssessmentProblem, J, support: Optional[int] = None):
    """Max-support solution of one layer.

    Returns ``(masses, zero_items)`` or ``None`` if the layer has no solution.
    ``support`` optionally restricts the constituents used.
    """
    J = tuple(J)
    u = _union(problem, J) if support is None else support
    cons = list(members(u))
    if not cons:
        return None
    rows = [problem.items[i].row(cons) for i in J] + [[_ONE] * len(cons)]
    rhs = [_ZERO] * len(J) + [_ONE]
    x = lp_feasible(rows, rhs, nvars=len(cons))
    if x is None:
        return None
    sols = [x]
    positive = {i for i in J if _mass(x, cons, problem.items[i].antecedent) > 0}
    while True:
        rest = [i for i in J if i not in positive]
        if not rest:
            break
        obj = [sum(1 for i in rest if problem.items[i].antecedent >> c & 1) for c in cons]
        res = linprog(obj, rows, rhs, maximize=True)
        if res.value == 0:
            break
        sols.append(res.x)
        positive |= {i for i in rest if _mass(res.x, cons, problem.items[i].antecedent) > 0}
    k = len(sols)
    avg = [sum(col, _ZERO) / k for col in zip(*sols)]
    masses = tuple((c, m) for c, m in zip(cons, avg) if m)
    return masses, tuple(i for i in J if i not in positive)


def check_coherence(problem: AssessmentProblem) -> CoherenceVerdict:
    layers = []
    J = tuple(range(len(problem.items)))
    while J:
        sol = solve_layer(problem, J)
        if sol is None:
            return CoherenceVerdict(False, tuple(layers), J)
        masses, J_next = sol
        layers.append(Layer(J, masses))
        J = J_next
    return CoherenceVerdict(True, tuple(layers))


def is_coherent(problem: AssessmentProblem) -> bool:
    return check_coherence(problem).coherent


def _merge(parts) -> Interval:
    parts = sorted(parts)
    lo, hi = parts[0]
    for a, b in parts[1:]:
        if a > hi:
            raise ArithmeticError(f"coherent set is not an interval: {parts}")
        hi = max(hi, b)
    return Interval(lo, hi)


def _ratio_parts(problem, J, a, b, K):
    u = _union(problem, J) | K
    cons = list(members(u))
    rows = [problem.items[i].row(cons) for i in J]
    rows.append([b[c] for c in cons])
    rhs = [_ZERO] * len(J) + [_ONE]
    obj = [a[c] for c in cons]
    parts = []
    lo = linprog(obj, rows, rhs)
    if lo.ok:
        hi = linprog(obj, rows, rhs, maximize=True)
        if hi.status == UNBOUNDED:
            raise ArithmeticError("unbounded prevision ratio; is the assessment coherent?")
        parts.append((lo.value, hi.value))
    elif lo.status == UNBOUNDED:
        raise ArithmeticError("unbounded prevision ratio; is the assessment coherent?")
    if u & ~K:
        sol = solve_layer(problem, J, support=u & ~K) if J else None
        if sol is not None:
            parts.extend(_ratio_parts(problem, sol[1], a, b, K))
    return parts


def ratio_interval(problem: AssessmentProblem, numerator: Sequence, denominator: Sequence) -> Interval:
    """Coherent values of a prevision defined by ``mu * P(den) = P(num)``.

    ``numerator`` and ``denominator`` are per-constituent values; the bet is
    called off exactly where the denominator vanishes.
    """
    verdict = check_coherence(problem)
    if not verdict.coherent:
        raise IncoherentAssessment(f"items {verdict.failed_items} admit no coherent layer")
    a = [Fraction(v) for v in numerator]
    b = [Fraction(v) for v in denominator]
    if any(v < 0 for v in b):
        raise ValueError("denominator must be nonnegative")
    K = 0
    for c, v in enumerate(b):
        if v:
            K |= 1 << c
    if not K:
        raise ValueError("the target bet is always called off")
    parts = _ratio_parts(problem, tuple(range(len(problem.items))), a, b, K)
    if not parts:
        raise IncoherentAssessment("no coherent value for the target")
    return _merge(parts)


def extension_interval(problem: AssessmentProblem, table: ValueTable, antecedent) -> Interval:
    """Exact set of values ``z`` keeping ``problem + {P(table|antecedent) = z}`` coherent."""
    K = problem.context.truth(antecedent)
    a = [table[c] if K >> c & 1 else _ZERO for c in range(problem.context.size)]
    b = [_ONE if K >> c & 1 else _ZERO for c in range(problem.context.size)]
    if not table.is_numeric() and any(not isinstance(v, Fraction) for v in a):
        raise ValueError("target table must be numeric on its antecedent")
    return ratio_interval(problem, a, b)


def event_extension_interval(problem: AssessmentProblem, ce) -> Interval:
    return extension_interval(problem, _raw_indicator(ce, _ZERO), ce.h)
