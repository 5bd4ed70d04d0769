"""Acceptance criteria, one test each.

Every test prints a ``criterion N PASS|FAIL`` line with its wall time; the
lines are repeated in the pytest terminal summary.  Run directly with
``python tests/test_acceptance.py`` or ``pytest tests/test_acceptance.py -s``.
"""

import itertools
import random
import sys
from fractions import Fraction

import pytest

from ccsolve.coherence import AssessmentProblem, Interval, check_coherence
from ccsolve.compound import (
    Family,
    PrevisionAssessment,
    assessment_problem,
    autofill,
    build_conjunction,
    conjoin_families,
    conjunction_prevision_interval,
    conjunction_values,
    frechet_bounds,
    is_constant_zero,
)
from ccsolve.entailment import (
    EntailmentQuery,
    full_report,
    is_p_consistent,
    p_entails,
    p_entails_by_conjunction,
    p_entails_by_forcing,
    p_entails_by_iterated,
    rule,
)
from ccsolve.errors import ConstantZeroAntecedent, InternalDisagreement, PInconsistentPremises
from ccsolve.events import declare_atoms, event_from_mask
from ccsolve.iterated import (
    build_iterated,
    conjoin_pair,
    iterated_given_conjunction,
    pair_iterated_table,
    product_rule_check,
    self_iterate_is_one,
    verify_caniter,
)
from ccsolve.tables import Affine, ValueTable

from criteria import Criterion
from helpers import CTX3, distribution_assessment, independent_family, random_assessment, random_conditional, random_family
from oracles import grid_coherent

HALF = Fraction(1, 2)


def _witness_ok(problem: AssessmentProblem, verdict) -> bool:
    """Each layer is a distribution that is fair for the items it settles."""
    settled = []
    for layer in verdict.layers:
        masses = layer.as_dict()
        if sum(masses.values()) != 1 or any(m < 0 for m in masses.values()):
            return False
        for i in layer.items:
            it = problem.items[i]
            on_h = {c: m for c, m in masses.items() if it.antecedent >> c & 1}
            if sum(on_h.values()) == 0:
                return False
            if sum(m * (it.table[c] - it.value) for c, m in on_h.items()) != 0:
                return False
        settled.extend(layer.items)
    return sorted(settled) == list(range(len(problem.items)))


def _pairs(rng, n_max=2, cap=3):
    """Random antecedent/consequent families on three atoms with a coherent assessment."""
    while True:
        f1, f2 = random_family(rng, n_max), random_family(rng, n_max)
        union = conjoin_families(f1, f2)
        if len(union) <= cap:
            return f1, f2, union, random_assessment(rng, union)


def _by_hand(f1: Family, union: Family, a: PrevisionAssessment):
    """C(F1 u F2) + mu (1 - C(F1)) with mu = x_{F1 u F2} / x_{F1}, from the case tables."""
    joint = conjunction_values(union.events, a)
    given = conjunction_values(f1.events, a)
    mu = a[union.as_set] / a[f1.as_set]
    return ValueTable(CTX3, tuple(j + mu * (1 - g) for j, g in zip(joint, given))), mu


# 1 ---------------------------------------------------------------------------


def test_criterion_01_frechet_hoeffding():
    rng = random.Random(1001)
    families = {n: independent_family(n)[1] for n in (1, 2, 3)}
    plan = [1] * 100 + [2] * 250 + [3] * 150
    rng.shuffle(plan)
    with Criterion(1, "Frechet-Hoeffding bounds, 500 assessments on independent families", limit=60) as cr:
        attained = 0
        for n in plan:
            f = families[n]
            a = random_assessment(rng, f)
            xs = [a[ce] for ce in f]
            lo, hi = max(sum(xs) - n + 1, Fraction(0)), min(xs)
            top = f.as_set
            cr.check(frechet_bounds(xs) == Interval(lo, hi), lambda: f"frechet_bounds{xs}")
            cr.check(lo <= a[top] <= hi, lambda: f"x_1..n = {a[top]} outside [{lo}, {hi}] for {xs}")
            if n == 1:
                continue
            partial = PrevisionAssessment({S: x for S, x in a.items() if S != top})
            iv = conjunction_prevision_interval(f, partial)
            cr.check(lo <= iv.lo and iv.hi <= hi, lambda: f"LP interval {iv} leaves [{lo}, {hi}]")
            if n == 2:
                cr.check(iv == Interval(lo, hi), lambda: f"LP interval {iv} != [{lo}, {hi}]")
                for x in (lo, hi):
                    problem = assessment_problem(f, partial.with_value(top, x))
                    verdict = check_coherence(problem)
                    ok = verdict.coherent and _witness_ok(problem, verdict)
                    attained += cr.check(ok, lambda: f"endpoint {x} for {xs} has no valid witness")
        cr.note(f"{attained} endpoint witnesses checked")


# 2 ---------------------------------------------------------------------------


def test_criterion_02_product_rule():
    rng = random.Random(1002)
    with Criterion(2, "product rule on 200 instances with x_F1 > 0", limit=30) as cr:
        done = 0
        while done < 200:
            f1, f2, union, a = _pairs(rng)
            if a[f1.as_set] == 0:
                continue
            done += 1
            ic = build_iterated(f1, f2, a)
            cr.check(ic.resolved, lambda: f"mu unresolved with x_F1 = {a[f1.as_set]}")
            cr.check(a[union.as_set] == ic.mu * a[f1.as_set], lambda: f"{a[union.as_set]} != {ic.mu} * {a[f1.as_set]}")
            cr.check(product_rule_check(f1, f2, a), lambda: f"witness expectation check failed for {f1} / {f2}")


# 3 ---------------------------------------------------------------------------


def test_criterion_03_caniter():
    rng = random.Random(1003)
    with Criterion(3, "three iterated-conditional representations coincide, 200 instances", limit=60) as cr:
        done = zero = 0
        while done < 200:
            f1, f2, union, a = _pairs(rng)
            try:
                direct = build_iterated(f1, f2, a)
            except ConstantZeroAntecedent:
                continue
            done += 1
            cr.check(verify_caniter(f1, f2, a), lambda: f"verify_caniter failed for {f1} / {f2}")
            via_union = build_iterated(f1, union, a)
            via_conj = build_iterated(f1, conjoin_families(f2, f1), a)
            if a[f1.as_set] == 0:
                zero += 1
                same = direct.table == via_union.table == via_conj.table and direct.mu == via_union.mu == via_conj.mu
                cr.check(same, lambda: f"symbolic tables differ for {f1} / {f2}")
                continue
            expected, mu = _by_hand(f1, union, a)
            for ic in (direct, via_union, via_conj):
                cr.check(ic.mu == mu and ic.at() == expected, lambda: f"resolved table differs for {f1} / {f2}")
        cr.note(f"{zero} with x_F1 = 0")


# 4 ---------------------------------------------------------------------------


def _zero_top_cases(rng, count):
    """Families whose conjunction has prevision 0 without being constantly 0."""
    made = 0
    while made < count:
        if rng.random() < 0.3:
            f = independent_family(2)[1]
            x1 = Fraction(rng.randint(0, 8), 8)
            x2 = Fraction(rng.randint(0, 8 - int(x1 * 8)), 8)
            a = PrevisionAssessment({f[0]: x1, f[1]: x2, f.as_set: 0})
        else:
            f = random_family(rng, 3)
            if len(f) < 2:
                continue
            a = random_assessment(rng, f)
            partial = PrevisionAssessment({S: x for S, x in a.items() if S != f.as_set})
            a = autofill(f, partial, "lo")
            if a[f.as_set] != 0:
                continue
        if is_constant_zero(build_conjunction(f, a)):
            continue
        made += 1
        yield f, a


def test_criterion_04_self_iteration_is_one():
    rng = random.Random(1004)
    with Criterion(4, "C(F)|C(F) = 1 on 200 families, 60 with x_F = 0", limit=60) as cr:
        cases = []
        while len(cases) < 140:
            f = random_family(rng, 3)
            a = random_assessment(rng, f)
            if not is_constant_zero(build_conjunction(f, a)):
                cases.append((f, a))
        cases.extend(_zero_top_cases(rng, 60))
        for f, a in cases:
            cr.check(self_iterate_is_one(f, a), lambda: f"self_iterate_is_one false for {f}")
            ic = build_iterated(f, f, a)
            ok = ic.resolved and ic.mu == 1 and all(v == 1 for v in ic.at().values)
            cr.check(ok, lambda: f"C(F)|C(F) not pointwise 1 for {f} with mu {ic.mu}")


# 5 ---------------------------------------------------------------------------


def test_criterion_05_weak_transitivity():
    with Criterion(5, "weak transitivity p-valid by all three procedures") as cr:
        q = rule("weak-transitivity")
        report = full_report(q)
        cr.check(report.p_consistent, "premises not p-consistent")
        cr.check(report.verdicts == {"by_forcing": True, "by_conjunction": True, "by_iterated": True}, lambda: report.verdicts)
        cr.check(report.interval == Interval(1, 1), lambda: f"interval {report.interval}")
        cr.check(p_entails_by_forcing(q) and p_entails_by_conjunction(q) and p_entails_by_iterated(q), "standalone procedure")


# 6 ---------------------------------------------------------------------------


def test_criterion_06_transitivity():
    A, B, C = CTX3.atoms()
    CB, BA, CA = CTX3.cond(C, B), CTX3.cond(B, A), CTX3.cond(C, A)
    with Criterion(6, "transitivity not p-valid; witness and iterated value") as cr:
        q = rule("transitivity")
        cr.check(q == EntailmentQuery(Family.of(CB, BA), CA), "rule library query has unexpected shape")
        report = full_report(q)
        cr.check(report.verdicts == {"by_forcing": False, "by_conjunction": False, "by_iterated": False}, lambda: report.verdicts)
        witness = report.certificates[0].assessment
        cr.check((witness[CB], witness[BA], witness[CA]) == (1, 1, 0), lambda: dict(witness.items()))
        problem = AssessmentProblem.of_events(CTX3, [(CB, 1), (BA, 1), (CA, 0)])
        cr.check(check_coherence(problem).coherent and grid_coherent(problem), "witness is not coherent")

        f1, f2 = Family.of(CB, BA), Family.of(CA)
        (abc,) = [c for c in range(CTX3.size) if CTX3.truth(~A & B & C) >> c & 1]
        a = autofill(conjoin_families(f1, f2), PrevisionAssessment({CB: 1, BA: 1, CA: 0}), "lo")
        ic = build_iterated(f1, f2, a)
        x, y = a[BA], a[(BA, CA)]
        cr.check((x, y) == (1, 0), lambda: f"(x, y) = ({x}, {y})")
        cr.check(Affine.lift(ic.table[abc]) == Affine(y, 1 - x), lambda: f"value {ic.table[abc]}")
        for nu in (ic.mu_range().lo, ic.mu_range().hi):
            cr.check(ic.at(nu)[abc] == 0, lambda: f"value {ic.at(nu)[abc]} at nu = {nu}")

        rng = random.Random(1006)
        for _ in range(20):
            a = random_assessment(rng, conjoin_families(f1, f2))
            ic = build_iterated(f1, f2, a)
            form = Affine(a[(BA, CA)], 1 - a[BA])
            cr.check(Affine.lift(ic.table[abc]) == form, lambda: f"{ic.table[abc]} != {form}")


# 7 ---------------------------------------------------------------------------


def test_criterion_07_unconditional_inclusion():
    # sweep 1: every family of 1-3 distinct literals against all 256 events
    # sweep 2: every nonempty event alone against the literals and constants
    literals = [CTX3.truth(e) for e in CTX3.atoms()] + [CTX3.truth(~e) for e in CTX3.atoms()]
    small = literals + [0, CTX3.full]
    ev = {m: CTX3.cond(event_from_mask(CTX3, m)) for m in range(1 << CTX3.size)}
    with Criterion(7, "unconditional premises: p-entailment iff inclusion", limit=30) as cr:
        count = 0
        sweeps = [(combo, range(1 << CTX3.size)) for r in (1, 2, 3) for combo in itertools.combinations(literals, r)]
        sweeps += [((m,), small) for m in range(1, 1 << CTX3.size)]
        for masks, conclusions in sweeps:
            meet = CTX3.full
            for m in masks:
                meet &= m
            premises = Family.of([ev[m] for m in masks])
            consistent = is_p_consistent(premises)
            cr.check(consistent == (meet != 0), lambda: f"p-consistency of {masks}")
            if not consistent:
                try:
                    p_entails(EntailmentQuery(premises, ev[CTX3.full]))
                    cr.check(False, f"{masks}: no PInconsistentPremises")
                except PInconsistentPremises:
                    pass
                continue
            for z in conclusions:
                count += 1
                got = p_entails(EntailmentQuery(premises, ev[z]))
                cr.check(got == (meet & ~z == 0), lambda: f"premises {masks} conclusion {z}: {got}")
        cr.note(f"{count} queries")


# 8 ---------------------------------------------------------------------------


def test_criterion_08_grid_oracle():
    rng = random.Random(1008)
    contexts = [declare_atoms(["A"]), declare_atoms(["A", "B"]), CTX3]
    with Criterion(8, "check_coherence agrees with the grid oracle on 300 problems") as cr:
        coherent = 0
        made = 0
        while made < 300:
            ctx = rng.choice(contexts)
            f = random_family(rng, 3, ctx)
            if made % 3 == 2:
                values = distribution_assessment(rng, f)
                if values is None:
                    continue
                pairs = list(values.items())
            else:
                pairs = [(ce, rng.choice((Fraction(0), HALF, Fraction(1)))) for ce in f]
            made += 1
            problem = AssessmentProblem.of_events(ctx, pairs)
            got = check_coherence(problem).coherent
            coherent += got
            cr.check(got == grid_coherent(problem), lambda: f"disagreement on {[(str(ce), str(x)) for ce, x in pairs]}")
        cr.note(f"{coherent} coherent, {300 - coherent} incoherent")


# 9 ---------------------------------------------------------------------------


def test_criterion_09_three_procedures_agree():
    rng = random.Random(1009)
    with Criterion(9, "full_report agreement on 500 p-consistent queries") as cr:
        valid = done = 0
        while done < 500:
            premises = random_family(rng)
            if not is_p_consistent(premises):
                continue
            q = EntailmentQuery(premises, random_conditional(rng))
            done += 1
            try:
                report = full_report(q)
            except InternalDisagreement as exc:
                cr.check(False, str(exc))
                continue
            valid += report.p_valid
        cr.note(f"{valid} p-valid, {500 - valid} not")


# 10 --------------------------------------------------------------------------


def test_criterion_10_reductions():
    rng = random.Random(1010)
    with Criterion(10, "special-case tables agree with the general constructions, 100 each") as cr:
        done = 0
        while done < 100:
            e1, e2 = random_conditional(rng), random_conditional(rng)
            f = Family.of(e1, e2)
            a = random_assessment(rng, f)
            table = build_conjunction(f, a).table
            if len(f) == 2:
                pair = conjoin_pair(e1, e2, a[e1], a[e2], a[(e1, e2)])
                cr.check(pair == table, lambda: f"conjunction of {e1}, {e2}")
            try:
                ic = build_iterated(Family.of(e1), Family.of(e2), a)
            except ConstantZeroAntecedent:
                continue
            done += 1
            cr.check(pair_iterated_table(e1, e2, a) == ic.table, lambda: f"({e2})|({e1})")

        done = 0
        while done < 100:
            f, _, union, a = _pairs(rng)
            e = random_conditional(rng)
            union = conjoin_families(f, Family.of(e))
            if len(union) > 3:
                continue
            a = random_assessment(rng, union)
            try:
                ic = build_iterated(f, Family.of(e), a)
            except ConstantZeroAntecedent:
                continue
            done += 1
            cr.check(iterated_given_conjunction(f, e, a) == ic.table, lambda: f"({e})|C({f})")

        for _ in range(100):
            e = random_conditional(rng)
            x = Fraction(rng.randint(0, 8), 8)
            a = autofill(Family.of(e), PrevisionAssessment(), lambda iv: x if x in iv else iv.lo)
            x = a[e]
            by_hand = [Fraction(1) if e.eh >> c & 1 else Fraction(0) if e.h >> c & 1 else x for c in range(CTX3.size)]
            got = build_conjunction(Family.of(e), a).table
            cr.check(list(got.values) == by_hand, lambda: f"n = 1 conjunction of {e}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-s", "-q"]))
