"""Iterated conditionals between conjunctions of conditional events.

``C(F2) | C(F1)`` is the random quantity ``C(F1 u F2) + mu * (1 - C(F1))``
whose prevision is ``mu`` itself.  The bet on it is called off exactly where
``C(F1)`` vanishes, so ``mu`` is coherent iff ``mu * P[C(F1)] = P[C(F1 u F2)]``
holds in a coherent layered witness; when ``P[C(F1)] > 0`` this pins ``mu`` to
the ratio of the two previsions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .coherence import Interval, check_coherence, ratio_interval
from .compound import (
    Family,
    PrevisionAssessment,
    assessment_problem,
    autofill,
    build_conjunction,
    conjoin_families,
    conjunction_values,
    is_constant_zero,
)
from .errors import ConstantZeroAntecedent, IncoherentAssessment
from .events import ConditionalEvent, indicator_table, negate_table
from .tables import MU, Affine, ValueTable

Mu = Union[Fraction, Interval]


@dataclass(frozen=True)
class IteratedConditional:
    antecedent: Family
    consequent: Family
    assessment: PrevisionAssessment
    mu: Mu
    table: ValueTable
    joint: ValueTable
    given: ValueTable

    @property
    def resolved(self) -> bool:
        return not isinstance(self.mu, Interval)

    def at(self, mu=None) -> ValueTable:
        if mu is None:
            if not self.resolved:
                raise ValueError(f"mu is only known to lie in {self.mu}")
            mu = self.mu
        return self.table.substitute(mu)

    def mu_range(self) -> Interval:
        return self.mu if isinstance(self.mu, Interval) else Interval(self.mu, self.mu)


def _mu_interval(union: Family, a: PrevisionAssessment, joint: ValueTable, given: ValueTable) -> Interval:
    problem = assessment_problem(union, a)
    return ratio_interval(problem, joint.values, given.values)


def build_iterated(
    f1: Family, f2: Family, a: PrevisionAssessment, *, check: bool = True, fill=None
) -> IteratedConditional:
    union = conjoin_families(f1, f2)
    a = a.restrict(union)
    if fill is not None:
        a = autofill(union, a, fill)
    joint = build_conjunction(union, a, check=check)
    given = build_conjunction(f1, a, check=False)
    if is_constant_zero(given):
        raise ConstantZeroAntecedent(f"the conjunction of {f1} is constantly 0")
    table = joint.table + given.table.one_minus() * MU
    mu = solve_mu_values(union, a, joint.table, given.table)
    return IteratedConditional(f1, f2, a, mu, table, joint.table, given.table)


def solve_mu_values(union, a, joint: ValueTable, given: ValueTable) -> Mu:
    interval = _mu_interval(union, a, joint, given)
    return interval.lo if interval.is_point else interval


def solve_mu(ic: IteratedConditional) -> Mu:
    union = conjoin_families(ic.antecedent, ic.consequent)
    return solve_mu_values(union, ic.assessment, ic.joint, ic.given)


def _same(ic1: IteratedConditional, ic2: IteratedConditional) -> bool:
    if ic1.mu != ic2.mu:
        return False
    if ic1.resolved:
        return ic1.at() == ic2.at()
    return ic1.table == ic2.table


def verify_caniter(f1: Family, f2: Family, a: PrevisionAssessment) -> bool:
    """``C(F2)|C(F1) = C(F1 u F2)|C(F1) = (C(F2) ^ C(F1))|C(F1)`` pointwise."""
    plain = build_iterated(f1, f2, a)
    joint = build_iterated(f1, conjoin_families(f1, f2), a, check=False)
    meet = build_iterated(f1, conjoin_families(f2, f1), a, check=False)
    return _same(plain, joint) and _same(plain, meet)


def self_iterate_is_one(f: Family, a: PrevisionAssessment) -> bool:
    ic = build_iterated(f, f, a)
    return ic.resolved and ic.mu == 1 and ic.at().is_constant(Fraction(1))


def layer0_prevision(f: Family, a: PrevisionAssessment, table: ValueTable) -> Fraction:
    """Prevision of ``table`` under the first layer of the coherence witness of ``a``."""
    verdict = check_coherence(assessment_problem(f, a))
    if not verdict.coherent:
        raise IncoherentAssessment(f"assessment on {f} is not coherent")
    return table.expectation(verdict.layers[0].as_dict())


def product_rule_check(f1: Family, f2: Family, a: PrevisionAssessment) -> bool:
    """``P[C(F2) ^ C(F1)] = mu * P[C(F1)]``, previsions read off a witness distribution."""
    ic = build_iterated(f1, f2, a)
    union = conjoin_families(f1, f2)
    verdict = check_coherence(assessment_problem(union, ic.assessment))
    masses = verdict.layers[0].as_dict()
    p_joint = ic.joint.expectation(masses)
    p_given = ic.given.expectation(masses)
    if not ic.resolved:
        return p_given == 0 and p_joint == 0
    linear = ic.table.expectation(masses)
    linear = linear.at(ic.mu) if isinstance(linear, Affine) else linear
    return p_joint == ic.mu * p_given and linear == ic.mu


# -- reference constructions for the single-conditional special cases -----


def conjoin_pair(e1: ConditionalEvent, e2: ConditionalEvent, x1, x2, x12) -> ValueTable:
    """Five-valued conjunction of two conditional events, case by case."""
    ctx = e1.context
    vals = []
    for c in range(ctx.size):
        bit = 1 << c
        h1, h2 = bool(e1.h & bit), bool(e2.h & bit)
        t1, t2 = bool(e1.eh & bit), bool(e2.eh & bit)
        if t1 and t2:
            vals.append(Fraction(1))
        elif (h1 and not t1) or (h2 and not t2):
            vals.append(Fraction(0))
        elif not h1 and t2:
            vals.append(Fraction(x1))
        elif not h2 and t1:
            vals.append(Fraction(x2))
        else:
            vals.append(Fraction(x12))
    return ValueTable(ctx, tuple(vals))


def pair_iterated_table(e1: ConditionalEvent, e2: ConditionalEvent, a: PrevisionAssessment) -> ValueTable:
    """``(E2|H2)|(E1|H1) = (E2|H2) ^ (E1|H1) + mu * (~E1|H1)`` with ``mu`` symbolic."""
    x1, x2 = a[e1], a[e2]
    x12 = a[frozenset([e1, e2])] if e1 != e2 else x1
    conj = conjoin_pair(e1, e2, x1, x2, x12)
    return conj + negate_table(indicator_table(e1, x1)) * MU


def iterated_given_conjunction(f: Family, e: ConditionalEvent, a: PrevisionAssessment) -> ValueTable:
    """``(E|H) | C(F) = C(F u {E|H}) + mu * (1 - C(F))`` with ``mu`` symbolic."""
    union = conjoin_families(f, Family.of(e))
    joint = ValueTable(f.context, tuple(conjunction_values(union.events, a)))
    given = ValueTable(f.context, tuple(conjunction_values(f.events, a)))
    return joint + given.one_minus() * MU
