"""
Chaining conditionals with and without an extra premise
=======================================================

Knowing C|B and B|A with certainty says nothing about C|A.  Adding the
premise A|(A or B) changes that.
"""

from ccsolve import EntailmentQuery, Family, declare_atoms, forcing_interval, full_report

ctx = declare_atoms(["A", "B", "C"])
A, B, C = ctx.atoms()
CB, BA, CA = ctx.cond(C, B), ctx.cond(B, A), ctx.cond(C, A)

# premises at probability 1: which values of P(C|A) stay coherent?
plain = EntailmentQuery(Family.of(CB, BA), CA)
print(plain, "->", forcing_interval(plain))

# the extra premise pins the conclusion down
weak = EntailmentQuery(Family.of(CB, BA, ctx.cond(A, A | B)), CA)
print(weak, "->", forcing_interval(weak))

# the three decision procedures must agree; full_report raises otherwise
for q in (plain, weak):
    report = full_report(q)
    print(report.verdicts)
    for cert in report.certificates:
        print("   ", cert.procedure, "|", cert.detail)
