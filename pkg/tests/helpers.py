"""Random problem generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from ccsolve.compound import Family, PrevisionAssessment, autofill
from ccsolve.events import FALSE, TRUE, And, Atom, Not, Or, declare_atoms, event_from_mask

CTX3 = declare_atoms(["A", "B", "C"])


def random_conditional(rng: random.Random, ctx=CTX3):
    h = rng.randrange(1, 1 << ctx.size)
    e = rng.randrange(0, 1 << ctx.size)
    return ctx.cond(event_from_mask(ctx, e), event_from_mask(ctx, h))


def random_family(rng: random.Random, n_max=3, ctx=CTX3) -> Family:
    return Family.of([random_conditional(rng, ctx) for _ in range(rng.randint(1, n_max))])


def independent_family(n: int):
    """``n`` logically independent conditionals ``X_i | Y_i`` on ``2n`` fresh atoms."""
    names = [f"{p}{i}" for i in range(1, n + 1) for p in ("X", "Y")]
    ctx = declare_atoms(names)
    events = [ctx.cond(Atom(f"X{i}"), Atom(f"Y{i}")) for i in range(1, n + 1)]
    return ctx, Family.of(events)


def grid_picker(rng: random.Random, den: int = 8):
    def pick(interval):
        k = rng.randint(0, den)
        return interval.lo + (interval.hi - interval.lo) * Fraction(k, den)

    return pick


def random_assessment(rng: random.Random, f: Family, partial=None) -> PrevisionAssessment:
    """Coherent assessment on every subset of ``f``, built smaller subsets first."""
    return autofill(f, partial or PrevisionAssessment(), grid_picker(rng))


def distribution_assessment(rng: random.Random, f: Family, den: int = 8):
    """Assessment induced by a random distribution with denominator ``den``.

    Returns ``None`` when some antecedent gets zero mass.
    """
    ctx = f.context
    cuts = sorted(rng.randint(0, den) for _ in range(ctx.size - 1))
    counts = [b - a for a, b in zip([0] + cuts, cuts + [den])]
    values = {}
    for ce in f:
        mh = sum(counts[c] for c in range(ctx.size) if ce.h >> c & 1)
        if not mh:
            return None
        values[ce] = Fraction(sum(counts[c] for c in range(ctx.size) if ce.eh >> c & 1), mh)
    return values


def expressions(names=("A", "B", "C")):
    leaves = st.sampled_from([Atom(n) for n in names] + [TRUE, FALSE])
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            sub.map(Not),
            st.lists(sub, min_size=2, max_size=3).map(lambda xs: And(tuple(xs))),
            st.lists(sub, min_size=2, max_size=3).map(lambda xs: Or(tuple(xs))),
        ),
        max_leaves=8,
    )


def conditionals(ctx=CTX3):
    full = 1 << ctx.size
    return st.tuples(st.integers(0, full - 1), st.integers(1, full - 1)).map(
        lambda p: ctx.cond(event_from_mask(ctx, p[0]), event_from_mask(ctx, p[1]))
    )
