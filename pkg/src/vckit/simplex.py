"""Exact-arithmetic LP feasibility: decide whether ``row . w >= 1`` holds
for every constraint row, over the rationals.

This is a phase-1 simplex on the standard form

    A(w+ - w-) - s + a = 1,   w+, w-, s, a >= 0,   minimize sum(a)

with Bland's rule, so it terminates without cycling and every verdict is
exact. Tableaux here are tiny (tens of rows/columns), which is the whole
point: the shattering decision procedure needs feasible/infeasible answers
it can trust unconditionally, not fast approximate ones.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence


class SimplexError(RuntimeError):
    """Internal solver failure (pivot cap, corrupt tableau). Distinct from
    an infeasible system, which is a normal answer."""


def _integer_rows(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    # Clearing denominators row-wise keeps pivot arithmetic on small numbers.
    # Row scaling preserves feasibility of {r.w >= 1}: the system is
    # scale-invariant in w, so only the sign pattern matters.
    scaled, lams = [], []
    for row in rows:
        fr = [Fraction(x) for x in row]
        lam = 1
        for x in fr:
            lam = math.lcm(lam, x.denominator)
        scaled.append([x * lam for x in fr])
        lams.append(lam)
    return scaled, lams


def feasible_witness(
    rows: Sequence[Sequence], *, pivot_cap: int | None = None
) -> Optional[list[Fraction]]:
    """Return rational ``w`` with ``row . w >= 1`` for every row, or None
    when no such vector exists. Entries may be ints, floats, or Fractions
    (floats are taken at their exact binary value)."""
    if not rows:
        raise ValueError("need at least one constraint row")
    n_rows = len(rows)
    n_vars = len(rows[0])
    if any(len(r) != n_vars for r in rows):
        raise ValueError("ragged constraint matrix")

    a, lams = _integer_rows(rows)
    zero, one = Fraction(0), Fraction(1)

    # Column layout: w+ (n_vars) | w- (n_vars) | surplus (n_rows) | artificial (n_rows)
    n_cols = 2 * n_vars + 2 * n_rows
    art0 = 2 * n_vars + n_rows
    tableau = []
    for i in range(n_rows):
        row = [zero] * (n_cols + 1)
        for j in range(n_vars):
            row[j] = a[i][j]
            row[n_vars + j] = -a[i][j]
        row[2 * n_vars + i] = -one
        row[art0 + i] = one
        row[n_cols] = one
        tableau.append(row)
    basis = [art0 + i for i in range(n_rows)]

    # Phase-1 reduced costs under the artificial basis: r_j = c_j - sum_i T[i][j].
    cost = [zero] * (n_cols + 1)
    for j in range(n_cols):
        cost[j] = (one if j >= art0 else zero) - sum(t[j] for t in tableau)

    cap = pivot_cap if pivot_cap is not None else 10_000 * (n_rows + n_cols)
    for _ in range(cap):
        enter = next((j for j in range(n_cols) if cost[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(n_rows):
            coef = tableau[i][enter]
            if coef > 0:
                ratio = tableau[i][n_cols] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            raise SimplexError("phase-1 objective unbounded (corrupt tableau)")
        pivot = tableau[leave][enter]
        tableau[leave] = [v / pivot for v in tableau[leave]]
        for i in range(n_rows):
            if i != leave and tableau[i][enter] != 0:
                f = tableau[i][enter]
                tableau[i] = [v - f * p for v, p in zip(tableau[i], tableau[leave])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [v - f * p for v, p in zip(cost, tableau[leave])]
        basis[leave] = enter
    else:
        raise SimplexError(f"no optimum within {cap} pivots")

    residual = sum(tableau[i][n_cols] for i in range(n_rows) if basis[i] >= art0)
    if residual != 0:
        return None

    values = {basis[i]: tableau[i][n_cols] for i in range(n_rows)}
    w = [values.get(j, zero) - values.get(n_vars + j, zero) for j in range(n_vars)]
    # Undo the row scaling: w satisfies (lam_i * r_i).w >= 1, so max(lam) * w
    # clears every original constraint.
    m = max(lams)
    w = [v * m for v in w]
    if not satisfies(rows, w):
        raise SimplexError("witness failed exact re-verification")
    return w


def _dot(row: Sequence, w: Sequence[Fraction]) -> Fraction:
    return sum(Fraction(x) * v for x, v in zip(row, w))


def satisfies(rows: Sequence[Sequence], w: Sequence[Fraction]) -> bool:
    """Exact check that ``row . w >= 1`` for every row."""
    return all(_dot(row, w) >= 1 for row in rows)
