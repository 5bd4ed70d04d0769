"""
How much can two conditionals overlap?
======================================

For logically independent conditionals the coherent previsions of their
conjunction fill out the classical lower and upper bounds.
"""

from fractions import Fraction

from ccsolve import Family, PrevisionAssessment, build_conjunction, conjunction_prevision_interval, declare_atoms

ctx = declare_atoms(["X1", "Y1", "X2", "Y2"])
X1, Y1, X2, Y2 = ctx.atoms()
e1, e2 = ctx.cond(X1, Y1), ctx.cond(X2, Y2)
f = Family.of(e1, e2)

for x1, x2 in [(Fraction(1, 2), Fraction(1, 2)), (Fraction(3, 4), Fraction(2, 3)), (Fraction(1), Fraction(1, 5))]:
    a = PrevisionAssessment({e1: x1, e2: x2})
    print(f"x1 = {x1}, x2 = {x2}: x12 in {conjunction_prevision_interval(f, a)}")

# the conjunction is a random quantity with five possible values
a = PrevisionAssessment({e1: Fraction(1, 2), e2: Fraction(1, 3)})
conj = build_conjunction(f, a, fill="midpoint")
print("x12 =", conj.prevision)
print("values:", ", ".join(str(v) for v in sorted(conj.table.distinct())))
