"""
Iterated conditionals and their prevision
=========================================

The conditional C(F2)|C(F1) is a random quantity whose own prevision mu
appears in its values.  Coherence pins mu to x_{F1 u F2} / x_{F1} when the
antecedent has positive prevision and leaves an interval otherwise.
"""

from fractions import Fraction

from ccsolve import Family, PrevisionAssessment, build_iterated, declare_atoms, product_rule_check, self_iterate_is_one

ctx = declare_atoms(["A", "H"])
A, H = ctx.atoms()
ea, eh = ctx.cond(A), ctx.cond(H)

# an unconditional event given another one: the usual conditional probability
a = PrevisionAssessment({eh: Fraction(3, 5), ea: Fraction(1, 2), (ea, eh): Fraction(1, 5)})
ic = build_iterated(Family.of(eh), Family.of(ea), a)
print("mu =", ic.mu, " product rule holds:", product_rule_check(Family.of(eh), Family.of(ea), a))

# the symbolic table before mu is substituted
for c in range(ctx.size):
    print("  ", ctx.constituent(c), "->", ic.table[c])

# with a zero-probability antecedent mu is no longer unique
a0 = PrevisionAssessment({eh: Fraction(0), ea: Fraction(1, 2), (ea, eh): Fraction(0)})
print("mu in", build_iterated(Family.of(eh), Family.of(ea), a0).mu)

# a conjunction given itself is the constant 1
print("C(F)|C(F) = 1:", self_iterate_is_one(Family.of(eh, ea), a))
