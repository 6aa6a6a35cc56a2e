"""Two-phase primal simplex over exact rationals.

Dense tableau, Bland's rule (so it terminates on degenerate problems),
every entry a Fraction.  Sized for the small zero-sum LPs this package
builds; exactness matters more than speed because margins of 0 decide
popularity.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SolverError


def solve_lp(
    c: list[Fraction], A: list[list[Fraction]], b: list[Fraction]
) -> tuple[Fraction, list[Fraction]]:
    """Minimize c.x subject to A x = b, x >= 0. Returns (value, x).

    Raises SolverError on infeasible or unbounded programs.
    """
    m, n = len(A), len(c)
    if any(len(row) != n for row in A) or len(b) != m:
        raise SolverError("inconsistent LP dimensions")
    # rows with negative rhs are flipped so phase 1 can start from b >= 0
    rows = []
    rhs = []
    for i in range(m):
        if b[i] < 0:
            rows.append([-x for x in A[i]])
            rhs.append(-b[i])
        else:
            rows.append(list(A[i]))
            rhs.append(b[i])

    # phase 1: artificial variable per row
    tab = [rows[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    cost1 = [Fraction(0)] * n + [Fraction(1)] * m
    value = _optimize(tab, basis, cost1)
    if value != 0:
        raise SolverError("infeasible linear program")
    _drive_out_artificials(tab, basis, n)
    # rows still carrying a basic artificial are redundant constraints
    keep = [i for i in range(len(basis)) if basis[i] < n]
    tab = [tab[i][:n] + tab[i][-1:] for i in keep]
    basis = [basis[i] for i in keep]

    # phase 2
    cost2 = list(c)
    value = _optimize(tab, basis, cost2)
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = tab[i][-1]
    return value, x


def _reduced_costs(tab, basis, cost):
    m = len(tab)
    n = len(tab[0]) - 1
    y = [cost[basis[i]] for i in range(m)]
    red = []
    for j in range(n):
        val = cost[j]
        for i in range(m):
            if y[i]:
                val -= y[i] * tab[i][j]
        red.append(val)
    return red


def _optimize(tab, basis, cost) -> Fraction:
    m = len(tab)
    n = len(tab[0]) - 1
    while True:
        red = _reduced_costs(tab, basis, cost)
        enter = next((j for j in range(n) if red[j] < 0), None)  # Bland
        if enter is None:
            break
        # ratio test, Bland tie-break on smallest basis variable
        leave, best = None, None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            raise SolverError("unbounded linear program")
        _pivot(tab, leave, enter)
        basis[leave] = enter
    value = Fraction(0)
    for i in range(m):
        value += cost[basis[i]] * tab[i][-1]
    return value


def _pivot(tab, r: int, c: int):
    piv = tab[r][c]
    tab[r] = [x / piv for x in tab[r]]
    for i in range(len(tab)):
        if i != r and tab[i][c]:
            f = tab[i][c]
            tab[i] = [a - f * b for a, b in zip(tab[i], tab[r])]


def _drive_out_artificials(tab, basis, n: int):
    """Pivot zero-valued artificial variables out of the basis if possible.

    Rows whose structural coefficients are all zero stay artificial-basic;
    the caller drops them as redundant constraints.
    """
    m = len(tab)
    for i in range(m):
        if basis[i] < n:
            continue
        pivot_col = next((j for j in range(n) if tab[i][j] != 0), None)
        if pivot_col is not None:
            _pivot(tab, i, pivot_col)
            basis[i] = pivot_col
