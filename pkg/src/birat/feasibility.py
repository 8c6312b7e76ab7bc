"""Exact rational linear feasibility: find x >= 0 with A x = b, or prove none.

A tiny dense phase-1 simplex over Fraction.  Bland's rule guarantees
termination, and every pivot is exact, so feasibility answers are proofs.
Problem sizes here are a couple of dozen variables at most; no sparsity or
performance tricks are warranted.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


def nonnegative_combination(
    columns: Sequence[Sequence], target: Sequence
) -> list[Fraction] | None:
    """Coefficients x >= 0 with sum x_j * columns[j] = target, or None.

    ``columns`` are the generator vectors; all vectors must share one length.
    """
    if not columns:
        return None if any(Fraction(t) != 0 for t in target) else []
    m = len(target)
    n = len(columns)
    for col in columns:
        if len(col) != m:
            raise ValueError("generator vectors must have the length of the target")
    a = [[Fraction(columns[j][i]) for j in range(n)] for i in range(m)]
    b = [Fraction(t) for t in target]
    x = _phase1_simplex(a, b)
    return x


def _phase1_simplex(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    m = len(b)
    n = len(a[0]) if m else 0
    # Normalize rows to b >= 0 so the artificial basis is feasible.
    for i in range(m):
        if b[i] < 0:
            a[i] = [-v for v in a[i]]
            b[i] = -b[i]

    # Tableau: columns 0..n-1 original, n..n+m-1 artificial, last column rhs.
    width = n + m
    rows = [a[i] + [ONE if k == i else ZERO for k in range(m)] + [b[i]] for i in range(m)]
    basis = list(range(n, n + m))
    # Reduced costs for minimizing the artificial sum: cost[j] = -sum_i rows[i][j]
    # for the non-basic originals, 0 on the artificial basis.
    cost = [ZERO] * (width + 1)
    for i in range(m):
        for j in range(width + 1):
            cost[j] -= rows[i][j]
    for k in range(m):
        cost[n + k] = ZERO

    while True:
        entering = -1
        for j in range(width):  # Bland: smallest eligible index
            if cost[j] < 0:
                entering = j
                break
        if entering < 0:
            break
        leaving = -1
        best = None
        for i in range(m):
            coeff = rows[i][entering]
            if coeff > 0:
                ratio = rows[i][width] / coeff
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving < 0:
            # The artificial objective is bounded below by zero; this cannot
            # happen unless the tableau was corrupted.
            raise ArithmeticError("phase-1 objective unbounded")
        _pivot(rows, cost, basis, leaving, entering, width)

    objective = -cost[width]
    if objective != 0:
        return None
    solution = [ZERO] * n
    for i, var in enumerate(basis):
        if var < n:
            solution[var] = rows[i][width]
    return solution


def _pivot(rows, cost, basis, leaving: int, entering: int, width: int):
    pivot_row = rows[leaving]
    pivot = pivot_row[entering]
    inv = ONE / pivot
    for j in range(width + 1):
        pivot_row[j] *= inv
    for i, row in enumerate(rows):
        if i == leaving or row[entering] == 0:
            continue
        factor = row[entering]
        for j in range(width + 1):
            row[j] -= factor * pivot_row[j]
    if cost[entering] != 0:
        factor = cost[entering]
        for j in range(width + 1):
            cost[j] -= factor * pivot_row[j]
    basis[leaving] = entering


def verify_combination(columns, target, solution) -> bool:
    """Exact re-check that a returned solution really reproduces the target."""
    m = len(target)
    acc = [ZERO] * m
    for coeff, col in zip(solution, columns):
        if coeff < 0:
            return False
        for i in range(m):
            acc[i] += coeff * Fraction(col[i])
    return all(acc[i] == Fraction(target[i]) for i in range(m))
