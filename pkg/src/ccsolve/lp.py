"""Exact rational linear programming.

A dense two-phase simplex over :class:`fractions.Fraction` using Bland's rule,
so it terminates on degenerate problems and never needs a tolerance.  All
variables are nonnegative.  Problems here are small (one column per
constituent, one row per assessed quantity), which is what the dense tableau
is sized for.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)


@dataclass(frozen=True)
class LPResult:
    status: str
    x: Optional[tuple] = None
    value: Optional[Fraction] = None

    @property
    def ok(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    def __init__(self, rows, rhs, ncols):
        self.rows = rows
        self.rhs = rhs
        self.ncols = ncols
        self.basis = [None] * len(rows)
        self.cost = [_ZERO] * ncols
        self.value = _ZERO
        self.blocked = set()

    def pivot(self, r, j):
        row = self.rows[r]
        p = row[j]
        if p != 1:
            inv = 1 / p
            row = [v * inv if v else v for v in row]
            self.rows[r] = row
            self.rhs[r] *= inv
        nz = [k for k, v in enumerate(row) if v]
        b = self.rhs[r]
        for i, other in enumerate(self.rows):
            if i != r:
                f = other[j]
                if f:
                    for k in nz:
                        other[k] -= f * row[k]
                    self.rhs[i] -= f * b
        f = self.cost[j]
        if f:
            cost = self.cost
            for k in nz:
                cost[k] -= f * row[k]
            self.value += f * b
        self.basis[r] = j

    def run(self) -> str:
        """Minimize; Bland's rule (lowest index enters, lowest basic index leaves)."""
        while True:
            j = next((k for k, d in enumerate(self.cost) if d < 0 and k not in self.blocked), None)
            if j is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.rows):
                a = row[j]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], j)


def _as_fraction_rows(A):
    return [[Fraction(v) for v in row] for row in A]


def linprog(
    c: Sequence,
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    maximize: bool = False,
) -> LPResult:
    """Optimize ``c @ x`` subject to ``A_eq x = b_eq``, ``A_ub x <= b_ub``, ``x >= 0``.

    Returns an :class:`LPResult`; ``x`` is a basic optimal solution restricted
    to the original variables.
    """
    n = len(c)
    A = _as_fraction_rows(A_eq)
    b = [Fraction(v) for v in b_eq]
    ub = _as_fraction_rows(A_ub)
    nub = len(ub)
    if any(len(row) != n for row in A + ub) or len(A) != len(b) or nub != len(b_ub):
        raise ValueError("inconsistent LP dimensions")
    rows, rhs = [], []
    for row, v in zip(A, b):
        rows.append(row + [_ZERO] * nub)
        rhs.append(v)
    for k, (row, v) in enumerate(zip(ub, b_ub)):
        slack = [_ZERO] * nub
        slack[k] = Fraction(1)
        rows.append(row + slack)
        rhs.append(Fraction(v))
    nvar = n + nub
    for i, v in enumerate(rhs):
        if v < 0:
            rows[i] = [-a for a in rows[i]]
            rhs[i] = -v

    m = len(rows)
    for i, row in enumerate(rows):
        art = [_ZERO] * m
        art[i] = Fraction(1)
        row.extend(art)
    t = _Tableau(rows, rhs, nvar + m)
    t.basis = list(range(nvar, nvar + m))
    # phase 1: minimize the sum of artificials
    for j in range(nvar):
        t.cost[j] = -sum((row[j] for row in rows), _ZERO)
    t.value = sum(rhs, _ZERO)
    t.run()
    if t.value != 0:
        return LPResult(INFEASIBLE)

    # drive remaining artificials out of the basis; drop redundant rows
    r = 0
    while r < len(t.rows):
        if t.basis[r] >= nvar:
            j = next((k for k in range(nvar) if t.rows[r][k]), None)
            if j is None:
                del t.rows[r], t.rhs[r], t.basis[r]
                continue
            t.pivot(r, j)
        r += 1
    t.blocked = set(range(nvar, nvar + m))

    sign = -1 if maximize else 1
    cost = [Fraction(v) * sign for v in c] + [_ZERO] * (nvar - n + m)
    t.cost = cost[:]
    t.value = _ZERO
    for i, j in enumerate(t.basis):
        cj = cost[j]
        if cj:
            row = t.rows[i]
            for k, v in enumerate(row):
                if v:
                    t.cost[k] -= cj * v
            t.value += cj * t.rhs[i]
    status = t.run()
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [_ZERO] * nvar
    for i, j in enumerate(t.basis):
        x[j] = t.rhs[i]
    return LPResult(OPTIMAL, tuple(x[:n]), t.value * sign)


def lp_feasible(A_eq=(), b_eq=(), A_ub=(), b_ub=(), nvars: Optional[int] = None) -> Optional[tuple]:
    """Exact feasibility of ``A_eq x = b_eq, A_ub x <= b_ub, x >= 0``.

    Returns a witness ``x`` or ``None``.
    """
    if nvars is None:
        rows = list(A_eq) or list(A_ub)
        if not rows:
            raise ValueError("cannot infer the number of variables")
        nvars = len(rows[0])
    res = linprog([0] * nvars, A_eq, b_eq, A_ub, b_ub)
    return res.x if res.ok else None
