"""p-consistency and p-entailment, decided three ways.

* forcing: with every premise at probability 1, the coherent extension
  interval of the conclusion is exactly ``[1, 1]``;
* conjunction: over a set of coherent assessments, adding the conclusion to
  the premise conjunction never changes its table (equivalently the premise
  conjunction is pointwise below the conclusion's indicator);
* iterated: over the same assessments, ``conclusion | C(premises)`` is the
  constant 1.

Forcing is exact and authoritative; the other two run on a finite
verification set and are cross-checks.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .coherence import AssessmentProblem, Interval, check_coherence, event_extension_interval
from .compound import (
    Family,
    PrevisionAssessment,
    assessment_problem,
    autofill,
    build_conjunction,
    conjoin_families,
)
from .errors import ConstantZeroAntecedent, InternalDisagreement, PInconsistentPremises
from .events import ConditionalEvent, declare_atoms, indicator_table
from .iterated import build_iterated

DEFAULT_SEED = 20201
SMALL_ATOMS = 3
SMALL_PREMISES = 3


@dataclass(frozen=True)
class EntailmentQuery:
    premises: Family
    conclusion: ConditionalEvent

    def __post_init__(self):
        if not isinstance(self.premises, Family):
            object.__setattr__(self, "premises", Family.of(self.premises))
        if not len(self.premises):
            raise ValueError("at least one premise is required")
        if self.premises.context != self.conclusion.context:
            raise ValueError("premises and conclusion live on different atom contexts")

    @property
    def union(self) -> Family:
        return conjoin_families(self.premises, Family.of(self.conclusion))

    def __str__(self):
        return f"{self.premises} => {self.conclusion}"


@dataclass(frozen=True)
class Certificate:
    procedure: str
    verdict: bool
    detail: str
    interval: Optional[Interval] = None
    assessment: Optional[PrevisionAssessment] = None


@dataclass(frozen=True)
class EntailmentReport:
    query: EntailmentQuery
    p_consistent: bool
    by_forcing: Optional[bool] = None
    by_conjunction: Optional[bool] = None
    by_iterated: Optional[bool] = None
    interval: Optional[Interval] = None
    certificates: tuple = ()

    @property
    def p_valid(self) -> Optional[bool]:
        return self.by_forcing

    @property
    def verdicts(self) -> dict:
        return {
            "by_forcing": self.by_forcing,
            "by_conjunction": self.by_conjunction,
            "by_iterated": self.by_iterated,
        }


def _ones(f: Family) -> PrevisionAssessment:
    return PrevisionAssessment({S: 1 for S in f.subsets()})


def is_p_consistent(f: Family) -> bool:
    """All-ones assessment coherent; cross-checked with P[C(F)] = 1 and every x_S = 1."""
    return _p_consistent(f if isinstance(f, Family) else Family.of(f))


@functools.lru_cache(maxsize=4096)
def _p_consistent(f: Family) -> bool:
    plain = check_coherence(AssessmentProblem.of_events(f.context, [(ce, 1) for ce in f])).coherent
    joint = check_coherence(assessment_problem(f, _ones(f))).coherent
    if plain != joint:
        raise InternalDisagreement(f"p-consistency of {f}: events say {plain}, conjunction says {joint}")
    return plain


def _require_consistent(q: EntailmentQuery):
    if not is_p_consistent(q.premises):
        raise PInconsistentPremises(f"premises {q.premises} are not p-consistent")


def forcing_interval(q: EntailmentQuery) -> Interval:
    problem = AssessmentProblem.of_events(q.premises.context, [(ce, 1) for ce in q.premises])
    return event_extension_interval(problem, q.conclusion)


def p_entails_by_forcing(q: EntailmentQuery) -> bool:
    _require_consistent(q)
    return forcing_interval(q) == Interval(1, 1)


def _random_policy(rng: random.Random) -> Callable[[Interval], Fraction]:
    def pick(interval: Interval) -> Fraction:
        k = rng.randint(0, 8)
        return interval.lo + (interval.hi - interval.lo) * Fraction(k, 8)

    return pick


def verification_set(q: EntailmentQuery, seed: int = DEFAULT_SEED, samples: Optional[int] = None) -> list:
    """Coherent full assessments on premises plus conclusion.

    Extreme points first: premises at 1, the conclusion at either end of its
    forcing interval, the remaining previsions completed greedily at their
    lower or upper ends.  Then ``samples`` seeded random completions.
    """
    premises, union = q.premises, q.union
    small = len(premises.context.names) <= SMALL_ATOMS and len(premises) <= SMALL_PREMISES
    if samples is None:
        samples = 2 if small else 200
    out = []
    base = _ones(premises)
    interval = forcing_interval(q)
    ends = [interval.lo, interval.hi] if q.conclusion not in premises else [Fraction(1)]
    for z in dict.fromkeys(ends):
        a = base if q.conclusion in premises else base.with_value(q.conclusion, z)
        for policy in ("lo", "hi"):
            out.append(autofill(union, a, policy))
    rng = random.Random(seed)
    for _ in range(samples):
        out.append(autofill(union, PrevisionAssessment(), _random_policy(rng)))
    uniq = {}
    for a in out:
        uniq.setdefault(frozenset(a.items()), a)
    return list(uniq.values())


def _conjunction_check(q: EntailmentQuery, a: PrevisionAssessment):
    """(tables equal, premise table below the conclusion indicator)."""
    given = build_conjunction(q.premises, a, check=False).table
    joint = build_conjunction(q.union, a, check=False).table
    bound = indicator_table(q.conclusion, a[q.conclusion])
    return joint == given, given.leq(bound)


def p_entails_by_conjunction(q: EntailmentQuery, assessments=None, seed: int = DEFAULT_SEED) -> bool:
    _require_consistent(q)
    return _by_conjunction(q, assessments or verification_set(q, seed))[0]


def _by_conjunction(q, assessments):
    equal_all = below_all = True
    witness = None
    for a in assessments:
        equal, below = _conjunction_check(q, a)
        if not equal and witness is None:
            witness = a
        equal_all &= equal
        below_all &= below
    if equal_all != below_all:
        raise InternalDisagreement(
            f"{q}: conjunction equality says {equal_all}, inequality says {below_all}"
        )
    return equal_all, witness


def _iterated_is_one(q: EntailmentQuery, a: PrevisionAssessment) -> Optional[bool]:
    try:
        ic = build_iterated(q.premises, Family.of(q.conclusion), a, check=False)
    except ConstantZeroAntecedent:
        return None  # the iterated conditional is undefined for this assessment
    one = Fraction(1)
    r = ic.mu_range()
    return all(ic.at(m).is_constant(one) for m in (r.lo, r.hi))


def p_entails_by_iterated(q: EntailmentQuery, assessments=None, seed: int = DEFAULT_SEED) -> bool:
    _require_consistent(q)
    return _by_iterated(q, assessments or verification_set(q, seed))[0]


def _by_iterated(q, assessments):
    for a in assessments:
        if _iterated_is_one(q, a) is False:
            return False, a
    return True, None


def full_report(q: EntailmentQuery, seed: int = DEFAULT_SEED, samples: Optional[int] = None) -> EntailmentReport:
    if not is_p_consistent(q.premises):
        return EntailmentReport(q, False)
    interval = forcing_interval(q)
    forced = interval == Interval(1, 1)
    assessments = verification_set(q, seed, samples)
    by_conj, conj_witness = _by_conjunction(q, assessments)
    by_iter, iter_witness = _by_iterated(q, assessments)
    if not forced == by_conj == by_iter:
        raise InternalDisagreement(
            f"{q}: forcing {forced}, conjunction {by_conj}, iterated {by_iter}"
        )
    if forced:
        certs = (
            Certificate("forcing", True, f"premises at 1 force z in {interval}", interval),
            Certificate("conjunction", True, f"C(F u {{E|H}}) = C(F) on {len(assessments)} assessments"),
            Certificate("iterated", True, f"(E|H)|C(F) = 1 on {len(assessments)} assessments"),
        )
    else:
        witness = _forcing_witness(q, interval.lo)
        certs = (
            Certificate("forcing", False, f"premises at 1 allow z = {interval.lo}", interval, witness),
            Certificate("conjunction", False, "C(F u {E|H}) differs from C(F)", assessment=conj_witness),
            Certificate("iterated", False, "(E|H)|C(F) is not constantly 1", assessment=iter_witness),
        )
    return EntailmentReport(q, True, forced, by_conj, by_iter, interval, certs)


def _forcing_witness(q: EntailmentQuery, z: Fraction) -> PrevisionAssessment:
    values = {frozenset([ce]): 1 for ce in q.premises}
    values[frozenset([q.conclusion])] = z
    return PrevisionAssessment(values)


def p_entails(q: EntailmentQuery) -> bool:
    return p_entails_by_forcing(q)


# -- rule library -------------------------------------------------------------


def _transitivity(weak: bool) -> EntailmentQuery:
    ctx = declare_atoms(["A", "B", "C"])
    A, B, C = ctx.atoms()
    premises = [ctx.cond(C, B), ctx.cond(B, A)]
    if weak:
        premises.append(ctx.cond(A, A | B))
    return EntailmentQuery(Family.of(premises), ctx.cond(C, A))


def _self_entailment() -> EntailmentQuery:
    ctx = declare_atoms(["E", "H"])
    E, H = ctx.atoms()
    ce = ctx.cond(E, H)
    return EntailmentQuery(Family.of(ce), ce)


def _unconditional_inclusion() -> EntailmentQuery:
    ctx = declare_atoms(["A", "B"])
    A, B = ctx.atoms()
    return EntailmentQuery(Family.of(ctx.cond(A), ctx.cond(B)), ctx.cond(A & B))


RULES = {
    "transitivity": lambda: _transitivity(weak=False),
    "weak-transitivity": lambda: _transitivity(weak=True),
    "self-entailment": _self_entailment,
    "unconditional-inclusion": _unconditional_inclusion,
}


def rule(name: str) -> EntailmentQuery:
    try:
        return RULES[name]()
    except KeyError:
        raise KeyError(f"unknown rule {name!r}; known: {', '.join(RULES)}") from None
