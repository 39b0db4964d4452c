"""Exact linear feasibility over the rationals.

A single phase-1 simplex with Bland's rule decides {x >= 0 : Ax = b} with
Fraction arithmetic, so every geometric predicate built on top of it is exact.
No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError


def _frac_rows(rows):
    return [[Fraction(x) for x in row] for row in rows]


def feasible_nonneg_solution(a_rows, b):
    """Some x >= 0 with Ax = b, or None if the system is infeasible."""
    a_rows = _frac_rows(a_rows)
    b = [Fraction(x) for x in b]
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    if any(len(r) != n for r in a_rows):
        raise InputError("ragged constraint matrix")
    if len(b) != m:
        raise InputError("rhs length mismatch")
    if m == 0:
        return [Fraction(0)] * n

    # Tableau rows: original columns, artificial identity, rhs; b >= 0.
    rows = []
    for i in range(m):
        row = list(a_rows[i]) + [Fraction(0)] * m + [b[i]]
        if b[i] < 0:
            row = [-x for x in row]
        row[n + i] = Fraction(1)
        rows.append(row)
    basis = [n + i for i in range(m)]

    # Reduced costs for minimizing the artificial sum; artificials start at 0.
    cost = [Fraction(0)] * (n + m + 1)
    for row in rows:
        for j in range(n + m + 1):
            cost[j] -= row[j]
    for i in range(m):
        cost[n + i] = Fraction(0)

    while True:
        enter = next((j for j in range(n + m) if cost[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            if rows[i][enter] > 0:
                ratio = rows[i][-1] / rows[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            raise AssertionError("phase-1 objective cannot be unbounded")
        piv = rows[leave][enter]
        rows[leave] = [x / piv for x in rows[leave]]
        for i in range(m):
            if i != leave and rows[i][enter] != 0:
                f = rows[i][enter]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[leave])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, rows[leave])]
        basis[leave] = enter

    if -cost[-1] != 0:  # optimal artificial sum is -cost[-1]
        return None
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = rows[i][-1]
    return x


@dataclass
class LPFeasibilityProblem:
    """Ax = b, x >= 0 bundled for serialization and reuse."""

    a_rows: list
    b: list

    def solve(self):
        return feasible_nonneg_solution(self.a_rows, self.b)

    def is_feasible(self):
        return self.solve() is not None


def convex_hulls_common_point(point_sets):
    """A point in the intersection of the convex hulls of the given nonempty
    point sets, as (point, weights per set), or None.

    Unknowns are the convex weights of every set; the equations force each
    weight block to sum to 1 and all barycenters to coincide.
    """
    if not point_sets or any(not ps for ps in point_sets):
        raise InputError("need nonempty point sets")
    sets = [[tuple(Fraction(c) for c in p) for p in ps] for ps in point_sets]
    dim = len(sets[0][0])
    if any(len(p) != dim for ps in sets for p in ps):
        raise InputError("points of mixed dimension")

    offsets, total = [], 0
    for ps in sets:
        offsets.append(total)
        total += len(ps)

    rows, rhs = [], []
    for s, ps in enumerate(sets):
        row = [Fraction(0)] * total
        for i in range(len(ps)):
            row[offsets[s] + i] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(1))
    for s in range(1, len(sets)):
        for c in range(dim):
            row = [Fraction(0)] * total
            for i, p in enumerate(sets[0]):
                row[offsets[0] + i] += p[c]
            for i, p in enumerate(sets[s]):
                row[offsets[s] + i] -= p[c]
            rows.append(row)
            rhs.append(Fraction(0))

    x = feasible_nonneg_solution(rows, rhs)
    if x is None:
        return None
    weights = [x[offsets[s]:offsets[s] + len(ps)] for s, ps in enumerate(sets)]
    point = tuple(sum(w * p[c] for w, p in zip(weights[0], sets[0]))
                  for c in range(dim))
    return point, weights
