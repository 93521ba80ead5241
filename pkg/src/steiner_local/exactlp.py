"""Exact rational linear programming by tableau simplex with Bland's rule.

Decides feasibility (and optionally minimizes a linear objective) of
    A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0
with no numerical tolerance: every pivot is done in Fraction arithmetic,
and Bland's anti-cycling rule guarantees termination.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class LPResult:
    feasible: bool
    x: Optional[list[Fraction]] = None
    objective: Optional[Fraction] = None
    unbounded: bool = False


def _pivot(tab: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = tab[row][col]
    prow = tab[row]
    inv = ONE / piv
    for j in range(len(prow)):
        if prow[j]:
            prow[j] *= inv
    for i, r in enumerate(tab):
        if i == row:
            continue
        f = r[col]
        if f:
            for j in range(len(r)):
                if prow[j]:
                    r[j] -= f * prow[j]
    basis[row] = col


def _run_simplex(tab: list[list[Fraction]], basis: list[int], ncols: int) -> bool:
    """Minimize the objective in the last tableau row (reduced costs maintained).

    Returns False when unbounded.  Bland's rule: entering = least index with
    negative reduced cost, leaving = least basis index among min ratios.
    """
    m = len(tab) - 1
    obj = tab[-1]
    while True:
        col = -1
        for j in range(ncols):
            if obj[j] < 0:
                col = j
                break
        if col < 0:
            return True
        row = -1
        best: Optional[Fraction] = None
        for i in range(m):
            a = tab[i][col]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[row]):
                    best = ratio
                    row = i
        if row < 0:
            return False
        _pivot(tab, basis, row, col)


def solve_lp(
    n_vars: int,
    a_ub: Sequence[Sequence[Fraction]] = (),
    b_ub: Sequence[Fraction] = (),
    a_eq: Sequence[Sequence[Fraction]] = (),
    b_eq: Sequence[Fraction] = (),
    objective: Optional[Sequence[Fraction]] = None,
) -> LPResult:
    """Two-phase simplex.  With objective=None only feasibility is decided."""
    rows: list[tuple[list[Fraction], Fraction, bool]] = []
    for a, b in zip(a_ub, b_ub):
        rows.append(([Fraction(v) for v in a], Fraction(b), True))
    for a, b in zip(a_eq, b_eq):
        rows.append(([Fraction(v) for v in a], Fraction(b), False))

    m = len(rows)
    n_slack = sum(1 for _, _, ineq in rows if ineq)
    # column layout: structural | slack | artificial | rhs
    slack_of: dict[int, int] = {}
    si = 0
    for i, (_, _, ineq) in enumerate(rows):
        if ineq:
            slack_of[i] = n_vars + si
            si += 1

    n_art = 0
    art_of: dict[int, int] = {}
    for i, (a, b, ineq) in enumerate(rows):
        neg = b < 0
        # after sign normalization a slack with coefficient +1 can seed the
        # basis only for an inequality row with b >= 0
        if not (ineq and not neg):
            art_of[i] = n_vars + n_slack + n_art
            n_art += 1

    width = n_vars + n_slack + n_art + 1
    tab: list[list[Fraction]] = []
    basis: list[int] = []
    for i, (a, b, ineq) in enumerate(rows):
        r = [ZERO] * width
        sgn = -1 if b < 0 else 1
        for j, v in enumerate(a):
            if v:
                r[j] = sgn * v
        if ineq:
            r[slack_of[i]] = Fraction(sgn)
        r[-1] = sgn * b
        if i in art_of:
            r[art_of[i]] = ONE
            basis.append(art_of[i])
        else:
            basis.append(slack_of[i])
        tab.append(r)

    # phase 1: minimize sum of artificials
    obj = [ZERO] * width
    for i in art_of.values():
        obj[i] = ONE
    tab.append(obj)
    for i, bi in enumerate(basis):
        if obj[bi]:
            f = obj[bi]
            for j in range(width):
                if tab[i][j]:
                    obj[j] -= f * tab[i][j]
    ncols = width - 1
    _run_simplex(tab, basis, ncols)
    if tab[-1][-1] != 0:  # phase-1 objective is -sum(artificials) in rhs cell
        return LPResult(feasible=False)

    art_cols = set(art_of.values())
    # drive leftover artificials out of the basis where possible
    for i in range(m):
        if basis[i] in art_cols:
            for j in range(n_vars + n_slack):
                if tab[i][j] != 0:
                    _pivot(tab, basis, i, j)
                    break

    def extract() -> list[Fraction]:
        x = [ZERO] * n_vars
        for i, bi in enumerate(basis):
            if bi < n_vars:
                x[bi] = tab[i][-1]
        return x

    if objective is None:
        return LPResult(feasible=True, x=extract())

    # phase 2
    tab.pop()
    obj = [ZERO] * width
    for j, v in enumerate(objective):
        obj[j] = Fraction(v)
    tab.append(obj)
    for i, bi in enumerate(basis):
        if tab[-1][bi]:
            f = tab[-1][bi]
            for j in range(width):
                if tab[i][j]:
                    tab[-1][j] -= f * tab[i][j]
    # forbid artificials from re-entering
    bounded = _run_simplex_restricted(tab, basis, ncols, art_cols)
    if not bounded:
        return LPResult(feasible=True, unbounded=True)
    x = extract()
    val = sum(Fraction(objective[j]) * x[j] for j in range(n_vars))
    return LPResult(feasible=True, x=x, objective=val)


def _run_simplex_restricted(
    tab: list[list[Fraction]], basis: list[int], ncols: int, banned: set[int]
) -> bool:
    m = len(tab) - 1
    obj = tab[-1]
    while True:
        col = -1
        for j in range(ncols):
            if j in banned:
                continue
            if obj[j] < 0:
                col = j
                break
        if col < 0:
            return True
        row = -1
        best: Optional[Fraction] = None
        for i in range(m):
            a = tab[i][col]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[row]):
                    best = ratio
                    row = i
        if row < 0:
            return False
        _pivot(tab, basis, row, col)
