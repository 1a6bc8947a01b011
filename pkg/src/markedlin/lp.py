"""Exact feasibility for ``A x = b, x >= 0`` over the rationals.

Phase-one simplex on a dense tableau with Bland's rule (lowest index enters,
lowest basic index leaves on ratio ties), so it terminates without any
tolerance parameter.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence


def feasible_point(A: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """Return some ``x >= 0`` with ``A x = b``, or ``None`` if none exists."""
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * n
    tab: list[list[Fraction]] = []
    for i in range(m):
        row = [Fraction(a) for a in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-a for a in row]
            rhs = -rhs
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(row + art + [rhs])
    width = n + m
    basis = [n + i for i in range(m)]
    # Reduced costs of the phase-one objective (sum of artificials).
    cost = [Fraction(0)] * (width + 1)
    for row in tab:
        for j in range(n):
            cost[j] -= row[j]
        cost[width] -= row[width]

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i, row in enumerate(tab):
            a = row[enter]
            if a > 0:
                ratio = row[width] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # Phase one is bounded below by zero, so this cannot happen.
            raise ArithmeticError("unbounded phase-one problem")
        prow = tab[leave]
        piv = prow[enter]
        prow = [x / piv for x in prow]
        tab[leave] = prow
        for i, row in enumerate(tab):
            if i != leave and row[enter] != 0:
                f = row[enter]
                tab[i] = [x - f * y for x, y in zip(row, prow)]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, prow)]
        basis[leave] = enter

    if cost[width] != 0:
        return None
    x = [Fraction(0)] * width
    for i, j in enumerate(basis):
        x[j] = tab[i][width]
    if any(x[j] != 0 for j in range(n, width)):
        return None
    return x[:n]


def is_feasible(A: Sequence[Sequence], b: Sequence) -> bool:
    return feasible_point(A, b) is not None
