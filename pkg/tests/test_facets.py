from fractions import Fraction

import pandas as pd
import pytest

from app.config import Config
from app.utils.exceptions import DomainError

DELTA_30_FACETS = [12, 14, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30]
GAMMA = Fraction("0.607714359516618")


# ========== Facet Streaming ==========

@pytest.mark.parametrize("m, n, expected", [
    (12, 30, True),
    (15, 30, False),
    (11, 30, False),
    (1, 1, True),
    (4, 10, True),
    (5, 10, False),
])
def test_is_facet_in_interval(facet_service, m, n, expected):
    assert facet_service.is_facet_in_interval(m, n) is expected


def test_is_facet_range(facet_service):
    with pytest.raises(DomainError):
        facet_service.is_facet_in_interval(31, 30)


def test_enumerate_facets(facet_service):
    assert list(facet_service.enumerate_facets(30)) == DELTA_30_FACETS
    assert list(facet_service.enumerate_facets(1)) == [1]
    assert list(facet_service.enumerate_facets(10)) == [4, 6, 7, 8, 9, 10]
    with pytest.raises(DomainError):
        list(facet_service.enumerate_facets(0))


def test_density(facet_service):
    assert facet_service.count_facets(30) == 17
    assert facet_service.facet_density(30) == Fraction(17, 30)
    summary = facet_service.summary(10, with_list=True)
    assert (summary.count, summary.facets) == (6, [4, 6, 7, 8, 9, 10])
    assert facet_service.summary(10).facets is None


@pytest.mark.parametrize("n", [1, 2, 10, 30, 97, 360, 1001, 2000])
def test_criterion_matches_maximal_faces(facet_service, ideal_service, n):
    complex_ = ideal_service.complex_of(ideal_service.interval_ideal(n))
    maximal = [f.integer_value for f in ideal_service.facets(complex_)]
    assert list(facet_service.enumerate_facets(n)) == maximal


def test_blocks_and_threads_agree(facet_service, monkeypatch):
    expected = list(facet_service.enumerate_facets(5000))
    monkeypatch.setattr(Config, "FACET_BLOCK_SIZE", 7)
    assert list(facet_service.enumerate_facets(5000)) == expected
    monkeypatch.setattr(Config, "THREADS", 3)
    assert list(facet_service.enumerate_facets(5000)) == expected
    assert facet_service.count_facets(5000) == len(expected)


def test_counting_identity(facet_service, arith):
    for n in (30, 200, 1000):
        covered = sum(2 ** len(arith.component_values(w)) for w in facet_service.enumerate_facets(n))
        assert covered >= n


@pytest.mark.slow
def test_density_approaches_gamma(facet_service):
    assert abs(facet_service.facet_density(10**6) - GAMMA) < Fraction(1, 100)


# ========== Gamma ==========

def test_gamma_truncation(facet_service):
    coarse = facet_service.gamma_constant(1.0)
    assert (Fraction(coarse.series_value), coarse.terms_used) == (Fraction(1, 2), 0)
    one_term = facet_service.gamma_constant(0.05)
    assert one_term.terms_used == 1
    assert abs(Fraction(one_term.series_value) - Fraction(7, 12)) < Fraction(1, 10**30)


def test_gamma_constant(facet_service):
    estimate = facet_service.gamma_constant(1e-12)
    assert abs(Fraction(estimate.series_value) - GAMMA) <= Fraction(1, 10**12)


def test_gamma_limit_ignores_the_bound(facet_service):
    coarse = facet_service.gamma_constant(1.0)
    fine = facet_service.gamma_constant(1e-12)
    assert coarse.limit == fine.limit
    assert fine.rounded() == "0.607714359516618"
    assert abs(Fraction(fine.limit) - GAMMA) < Fraction(1, 10**15)
    assert fine.terms_used == 9


def test_gamma_rejects_bad_bound(facet_service):
    with pytest.raises(DomainError):
        facet_service.gamma_constant(0)


# ========== Facet Matrix ==========

def test_facet_matrix_of_ten(facet_service):
    matrix = facet_service.facet_matrix(10)
    assert matrix.prime_powers == [2, 3, 4, 5, 7, 8, 9]
    assert matrix.facets == [4, 6, 7, 8, 9, 10]
    assert matrix.rows == [(2,), (0, 1), (4,), (5,), (6,), (0, 3)]
    assert matrix.dense().sum() == 8


def test_facet_matrix_of_thirty(facet_service):
    matrix = facet_service.facet_matrix(30)
    assert (matrix.ell, matrix.r) == (17, 16)
    assert matrix.dense().shape == (17, 16)
    assert matrix.dense().max() == 1


def test_facet_matrix_of_one(facet_service):
    matrix = facet_service.facet_matrix(1)
    assert (matrix.facets, matrix.rows, matrix.r) == ([1], [()], 0)


def test_facet_matrix_csv(facet_service, tmp_path):
    path = facet_service.write_matrix_csv(facet_service.facet_matrix(10), tmp_path / "matrix.csv")
    frame = pd.read_csv(path)
    assert list(frame.columns) == ["w", "2", "3", "4", "5", "7", "8", "9"]
    assert frame.iloc[0].tolist() == [4, 0, 0, 1, 0, 0, 0, 0]
    assert frame["w"].tolist() == [4, 6, 7, 8, 9, 10]


# ========== Maximization ==========

def test_maximize_two_omega(facet_service, multfunc_service):
    g = multfunc_service.builtin("two_omega")
    for strategy in ("facet", "naive"):
        result = facet_service.maximize_on_interval(30, g, strategy)
        assert (result.value, result.argmax) == (8, 30)
    assert facet_service.maximize_on_interval(30, g, "facet").evaluations < 30 + 16


def test_maximize_on_trivial_interval(facet_service, multfunc_service):
    g = multfunc_service.builtin("two_omega")
    for strategy in ("facet", "naive"):
        result = facet_service.maximize_on_interval(1, g, strategy)
        assert (result.value, result.argmax) == (1, 1)


def test_maximize_needs_log_positive(facet_service, multfunc_service):
    with pytest.raises(DomainError, match=r"g\(2\)"):
        facet_service.maximize_on_interval(30, multfunc_service.builtin("const:1/2"), "facet")
    result = facet_service.maximize_on_interval(30, multfunc_service.builtin("const:1/2"), "naive")
    assert (result.value, result.argmax) == (1, 1)


def test_maximize_unknown_strategy(facet_service, multfunc_service):
    with pytest.raises(DomainError, match="unknown strategy"):
        facet_service.maximize_on_interval(30, multfunc_service.builtin("two_omega"), "greedy")


def test_strategies_agree(facet_service, multfunc_service, arith, rng):
    for _ in range(40):
        n = rng.randint(1, 3000)
        g = multfunc_service.random_log_positive(arith.prime_powers_upto(n), rng, high=Fraction(2), denominator=4)
        naive = facet_service.maximize_on_interval(n, g, "naive")
        facet = facet_service.maximize_on_interval(n, g, "facet")
        assert (facet.value, facet.argmax) == (naive.value, naive.argmax)


def test_evaluate_interval_matches_pointwise(facet_service, multfunc_service, arith, rng):
    g = multfunc_service.random_function(arith.prime_powers_upto(300), rng, Fraction(-2), Fraction(2))
    values = facet_service.evaluate_interval(300, g)
    assert all(values[m] == multfunc_service.evaluate(g, m) for m in range(1, 301))


# ========== Separating Functions ==========

def test_separating_function_for_twelve(facet_service):
    h = facet_service.separating_function(12, 30)
    assert (h.value_at(3), h.value_at(4), h.value_at(5)) == (2, 2, Fraction(101, 100))
    result = facet_service.maximize_on_interval(30, h, "facet")
    assert (result.argmax, result.value) == (12, 4)


def test_max_face_size(facet_service):
    assert [facet_service.max_face_size(n) for n in (1, 2, 6, 29, 30, 210)] == [0, 1, 2, 2, 3, 4]


@pytest.mark.parametrize("w, n, epsilon, message", [
    (15, 30, None, "not a facet"),
    (12, 30, Fraction(1), "does not separate"),
    (12, 30, Fraction(-1, 10), "does not separate"),
])
def test_separating_function_errors(facet_service, w, n, epsilon, message):
    with pytest.raises(DomainError, match=message):
        facet_service.separating_function(w, n, epsilon)


@pytest.mark.parametrize("epsilon", [Fraction(0), Fraction(1, 100)])
def test_every_facet_is_separated(facet_service, epsilon):
    for w, h in facet_service.separating_pairs(200, epsilon):
        values = facet_service.evaluate_interval(200, h)
        best = max(values[1:])
        assert values.index(best, 1) == w
        assert values.count(best) == 1
