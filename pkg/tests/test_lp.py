from fractions import Fraction

from app.services.lp import find_feasible_point, irreducible_infeasible_subset, solve_dense


def satisfies(rows, rhs, x):
    return all(v >= 0 for v in x) and all(
        sum(Fraction(a) * v for a, v in zip(row, x)) >= b for row, b in zip(rows, rhs)
    )


def test_feasible_system():
    rows = [[1, 0], [0, 1], [1, 1], [-1, 0]]
    rhs = [Fraction(1), Fraction(2), Fraction(4), Fraction(-10)]
    x = solve_dense(rows, rhs, 2)
    assert x is not None and satisfies(rows, rhs, x)


def test_infeasible_system():
    assert solve_dense([[1], [-1]], [Fraction(1), Fraction(0)], 1) is None
    assert find_feasible_point([[1, 1], [-1, -1]], [Fraction(1, 2), Fraction(-1, 3)], 2) is None


def test_empty_system():
    assert solve_dense([], [], 3) == [0, 0, 0]
    assert find_feasible_point([], [], 2) == [0, 0]


def test_exact_rationals():
    x = solve_dense([[3, 0], [0, 7]], [Fraction(1), Fraction(2)], 2)
    assert x == [Fraction(1, 3), Fraction(2, 7)]


def test_constraint_generation_adds_late_rows():
    rows = [[k, 1] for k in range(200)] + [[0, 1]]
    rhs = [Fraction(k) for k in range(200)] + [Fraction(5)]
    x = find_feasible_point(rows, rhs, 2)
    assert x is not None and satisfies(rows, rhs, x)


def test_constraint_generation_finds_late_conflict():
    rows = [[1, 0]] + [[0, 1]] * 150 + [[-1, 0]]
    rhs = [Fraction(1)] + [Fraction(0)] * 150 + [Fraction(-1, 2)]
    assert find_feasible_point(rows, rhs, 2) is None


def test_irreducible_infeasible_subset():
    rows = [[1, 0], [0, 1], [-1, 0]]
    rhs = [Fraction(1), Fraction(0), Fraction(0)]
    assert irreducible_infeasible_subset(rows, rhs, 2) == [0, 2]


def test_point_has_least_sum():
    x = solve_dense([[1, 1], [1, 0]], [Fraction(3), Fraction(1)], 2)
    assert satisfies([[1, 1], [1, 0]], [Fraction(3), Fraction(1)], x)
    assert sum(x) == 3


def test_no_variables():
    assert solve_dense([[]], [Fraction(0)], 0) == []
    assert solve_dense([[]], [Fraction(1)], 0) is None
