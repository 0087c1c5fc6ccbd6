"""
Exact rational feasibility for systems  A x >= b,  x >= 0.

Each subsystem goes to sympy's exact simplex (``linprog``) with the
objective sum(x), so the point returned is the least-sum vertex and
infeasibility is certified by ``InfeasibleLPError``. Large systems are
solved by constraint generation: solve on an active subset, add the
constraints the point violates, repeat.
"""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence

from sympy import Rational
from sympy.solvers.simplex import InfeasibleLPError, linprog

logger = logging.getLogger(__name__)

Row = Sequence[Fraction]

# active constraints in the first round of constraint generation
INITIAL_ACTIVE = 64


def _rational(value) -> Rational:
    value = Fraction(value)
    return Rational(value.numerator, value.denominator)


def _fraction(value) -> Fraction:
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def solve_dense(rows: Sequence[Row], rhs: Sequence[Fraction], n: int) -> Optional[List[Fraction]]:
    """A point x >= 0 with rows . x >= rhs, or None when none exists."""
    if not rows:
        return [Fraction(0)] * n
    if n == 0:
        return [] if all(b <= 0 for b in rhs) else None
    # linprog takes A x <= b
    A = [[-_rational(a) for a in row] for row in rows]
    b = [-_rational(v) for v in rhs]
    try:
        _, x = linprog([1] * n, A, b)
    except InfeasibleLPError:
        return None
    return [_fraction(v) for v in x]


def _slack(row: Row, rhs: Fraction, x: Sequence[Fraction]) -> Fraction:
    return sum((a * v for a, v in zip(row, x) if a), Fraction(0)) - rhs


def find_feasible_point(rows: Sequence[Row], rhs: Sequence[Fraction], n: int) -> Optional[List[Fraction]]:
    """
    Feasibility by constraint generation over ``solve_dense``.

    A subsystem that is infeasible proves the whole system infeasible; a
    point satisfying every constraint ends the loop.
    """
    active = list(range(min(len(rows), INITIAL_ACTIVE)))
    active_set = set(active)
    rounds = 0
    while True:
        rounds += 1
        x = solve_dense([rows[k] for k in active], [rhs[k] for k in active], n)
        if x is None:
            logger.info(f"LP infeasible after {rounds} round(s) on {len(active)} constraints")
            return None
        violated = [
            k for k in range(len(rows))
            if k not in active_set and _slack(rows[k], rhs[k], x) < 0
        ]
        if not violated:
            return x
        added = violated[: max(INITIAL_ACTIVE, n)]
        active.extend(added)
        active_set.update(added)


def irreducible_infeasible_subset(rows: Sequence[Row], rhs: Sequence[Fraction], n: int) -> List[int]:
    """
    Deletion filter: drop each constraint whose removal keeps the system
    infeasible. What remains is infeasible and minimal.
    """
    keep = list(range(len(rows)))
    for k in list(keep):
        trial = [j for j in keep if j != k]
        if find_feasible_point([rows[j] for j in trial], [rhs[j] for j in trial], n) is None:
            keep = trial
    return keep
