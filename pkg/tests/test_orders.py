from fractions import Fraction
from itertools import combinations

import pytest

from app.config import Config
from app.schemas.orders import CoverPoset, TotalOrder
from app.services import lp
from app.utils.exceptions import CapacityError, DomainError, NotInjectiveError

TWO_SUBSETS = list(combinations(range(1, 5), 2))


def feasible(inequalities, r):
    rows, rhs = [], []
    for inequality in inequalities:
        row = [Fraction(0)] * r
        for i in inequality.larger:
            row[i - 1] += 1
        for i in inequality.smaller:
            row[i - 1] -= 1
        rows.append(row)
        rhs.append(Fraction(1 - len(inequality.larger) + len(inequality.smaller)))
    return lp.find_feasible_point(rows, rhs, r) is not None


def is_linear_extension(order, poset):
    position = {face: k for k, face in enumerate(order.sequence)}
    return all(position[poset.elements[i]] < position[poset.elements[j]] for i, j in poset.covers)


# ========== Poset Y ==========

def test_poset_y_small(order_service):
    y1 = order_service.poset_Y(1)
    assert (y1.elements, y1.covers) == ([(), (1,)], [(0, 1)])
    y2 = order_service.poset_Y(2)
    assert y2.elements == [(), (1,), (2,), (1, 2)]
    assert sorted(y2.covers) == [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]


@pytest.mark.parametrize("r", [0, Config.POSET_MAX_R + 1])
def test_poset_y_range(order_service, r):
    with pytest.raises(DomainError):
        order_service.poset_Y(r)


def test_linear_extensions_of_y4(order_service):
    assert order_service.count_linear_extensions(order_service.poset_Y(4)) == 78


def test_restriction_to_two_subsets(order_service):
    restricted = order_service.restrict_by_sizes(order_service.poset_Y(4), [2])
    assert restricted.elements == TWO_SUBSETS
    assert restricted.covers == [(0, 1), (1, 2), (1, 3), (2, 4), (3, 4), (4, 5)]
    assert order_service.count_linear_extensions(restricted) == 2
    assert order_service.restrict_poset(order_service.poset_Y(4), TWO_SUBSETS) == restricted


def test_restriction_rejects_foreign_faces(order_service):
    with pytest.raises(DomainError, match="not an element"):
        order_service.restrict_poset(order_service.poset_Y(3), [(1, 4)])


def test_linear_extension_counts(order_service):
    chain = CoverPoset(r=0, elements=[(), (1,), (2,)], covers=[(0, 1), (1, 2)])
    assert order_service.count_linear_extensions(chain) == 1
    antichain = CoverPoset(r=3, elements=[(1,), (2,), (3,)], covers=[])
    assert order_service.count_linear_extensions(antichain) == 6


def test_linear_extension_cap(order_service):
    antichain = CoverPoset(r=25, elements=[(i,) for i in range(1, 26)], covers=[])
    with pytest.raises(CapacityError):
        order_service.count_linear_extensions(antichain)


def test_cyclic_covers_are_rejected(order_service):
    cycle = CoverPoset(r=2, elements=[(1,), (2,)], covers=[(0, 1), (1, 0)])
    with pytest.raises(DomainError, match="cycle"):
        order_service.count_linear_extensions(cycle)


# ========== Term Orders ==========

def test_binary_weights_give_a_term_order(order_service):
    order = order_service.subset_sum_order([1, 2, 4, 8])
    assert order.sequence[:4] == [(), (1,), (2,), (1, 2)]
    assert order_service.is_boolean_termorder(order).holds
    assert order_service.is_sorted_order(order)


def test_empty_set_must_come_first(order_service):
    result = order_service.is_boolean_termorder(TotalOrder(r=1, sequence=[(1,), ()]))
    assert not result.holds
    assert result.violation == ((1,), (), ())


def test_swapped_order_violates_translation(order_service):
    sequence = [(), (1,), (2,), (1, 2), (3,), (2, 3), (1, 3), (1, 2, 3)]
    result = order_service.is_boolean_termorder(TotalOrder(r=3, sequence=sequence))
    assert not result.holds
    assert result.violation == ((1,), (2,), (3,))


def test_termorder_needs_every_subset(order_service):
    with pytest.raises(DomainError):
        order_service.is_boolean_termorder(TotalOrder(r=2, sequence=[(), (1,), (2,)]))


def test_is_sorted_order(order_service):
    assert order_service.is_sorted_order(order_service.subset_sum_order([1, 2, 4, 8]))
    assert not order_service.is_sorted_order(order_service.subset_sum_order([2, 1, 4, 8]))
    assert order_service.is_sorted_order(TotalOrder(r=1, sequence=[(), (1,)]))
    singletons = [(), (1,), (2,), (3,), (4,)]
    assert order_service.is_sorted_order(order_service.subset_sum_order([1, 2, 3, 4], singletons))
    assert not order_service.is_sorted_order(order_service.subset_sum_order([2, 1, 3, 4], singletons))
    with pytest.raises(DomainError, match="singleton"):
        order_service.is_sorted_order(TotalOrder(r=2, sequence=[(1,), (1, 2)]))


def test_subset_sum_order_refuses_ties(order_service):
    with pytest.raises(NotInjectiveError, match=r"w\(1\) = w\(2\) = 1") as exc:
        order_service.subset_sum_order([1, 1])
    assert exc.value.pair == ((1,), (2,))
    with pytest.raises(NotInjectiveError, match=r"w\(12\) = w\(3\) = 3"):
        order_service.subset_sum_order([2, 1, 3, 4])


def test_weight_orders_are_term_orders(order_service, rng):
    for _ in range(30):
        weights = [Fraction(rng.randint(1, 1000), rng.randint(1, 7)) for _ in range(5)]
        try:
            order = order_service.subset_sum_order(weights)
        except NotInjectiveError:
            continue
        assert order_service.is_boolean_termorder(order).holds


# ========== Coherence ==========

def test_weight_orders_are_coherent(order_service):
    order = order_service.subset_sum_order([Fraction(3, 2), 2, 5], faces=[(1,), (2,), (1, 2), (3,)])
    result = order_service.coherence_witness(order)
    assert result.feasible
    assert order_service.subset_sum_order(result.weights.weights, faces=order.sequence).sequence == order.sequence


def test_impossible_example(order_service):
    report = order_service.verify_impossible_example()
    assert report.descending == [6, 21, 10, 15, 14, 35]
    assert not report.feasible
    first, second = report.opposing_pair
    assert (first.smaller, first.larger) == ((1, 4), (2, 4))
    assert (second.smaller, second.larger) == ((2, 3), (1, 3))
    assert report.conflicts


def test_conflicts_form_a_minimal_contradiction(order_service):
    order = order_service.order_from_integers([35, 14, 15, 10, 21, 6])
    result = order_service.coherence_witness(order)
    assert not result.feasible
    conflicts = result.certificate.conflicts
    assert not feasible(conflicts, order.r)
    for k in range(len(conflicts)):
        assert feasible(conflicts[:k] + conflicts[k + 1:], order.r)
    assert not result.certificate.sorted_constraint


@pytest.mark.parametrize("values", [
    [6, 10, 14, 15, 21, 35],
    [6, 10, 15, 14, 21, 35],
])
def test_realizable_integer_orders(order_service, values):
    result = order_service.coherence_witness(order_service.order_from_integers(values))
    assert result.feasible
    assert all(w >= 1 and w.denominator == 1 for w in result.weights.weights)


def test_sorted_requirement_can_fail(order_service):
    order = TotalOrder(r=2, sequence=[(2,), (1,)])
    assert order_service.coherence_witness(order).feasible
    result = order_service.coherence_witness(order, sorted_only=True)
    assert not result.feasible
    assert result.certificate.sorted_constraint


def test_coherence_cap(order_service):
    r = Config.COHERENCE_MAX_VERTICES + 1
    order = TotalOrder(r=r, sequence=[(i,) for i in range(1, r + 1)])
    with pytest.raises(CapacityError):
        order_service.coherence_witness(order)


# ========== Induced Orders ==========

def test_induced_order_of_identity(order_service, multfunc_service):
    g = multfunc_service.from_values({2: 2, 3: 3, 5: 5, 7: 7})
    order = order_service.induced_order(TWO_SUBSETS, g, vertices=[2, 3, 5, 7])
    integers = order_service.faces_to_integers(order.sequence, 4)
    assert integers == [6, 10, 14, 15, 21, 35]


def test_induced_order_of_an_ideal(order_service, ideal_service, multfunc_service):
    ideal = ideal_service.close_under_unitary_divisors([12])
    order = order_service.induced_order(ideal, multfunc_service.from_values({3: 5, 4: 2}))
    assert order.vertices == [3, 4]
    assert order.sequence == [(), (2,), (1,), (1, 2)]

    ideal = ideal_service.close_under_unitary_divisors([12, 20])
    order = order_service.induced_order(ideal, multfunc_service.from_values({3: 5, 4: 2, 5: 7}))
    assert order.vertices == [3, 4, 5]
    assert order.sequence == [(), (2,), (1,), (3,), (1, 2), (2, 3)]


def test_induced_order_errors(order_service, multfunc_service):
    tied = multfunc_service.from_values({2: 2, 3: 3, 5: 6, 7: 9})
    with pytest.raises(NotInjectiveError) as exc:
        order_service.induced_order(TWO_SUBSETS, tied, vertices=[2, 3, 5, 7])
    assert exc.value.pair == (14, 15)

    flat = multfunc_service.from_values({2: 1, 3: 3})
    with pytest.raises(DomainError, match="strictly log-positive"):
        order_service.induced_order([(1,), (2,)], flat, vertices=[2, 3])
    with pytest.raises(DomainError, match="labels"):
        order_service.induced_order([(1,)], flat)


def test_integer_face_conversions(order_service):
    assert order_service.faces_to_integers([(1, 2), (3,), ()], 3) == [6, 5, 1]
    order = order_service.order_from_integers([6, 10])
    assert (order.vertices, order.sequence) == ([2, 3, 5], [(1, 2), (1, 3)])
    with pytest.raises(DomainError):
        order_service.order_from_integers([6, 6])
    with pytest.raises(DomainError):
        order_service.faces_to_integers([(4,)], 3)


# ========== Realizability ==========

def test_realizable_orders_on_two_subsets(order_service, single_thread):
    orders = order_service.realizable_orders(TWO_SUBSETS, 4)
    assert len(orders) == 48
    sorted_orders = order_service.realizable_orders(TWO_SUBSETS, 4, sorted_only=True)
    assert len(sorted_orders) == 2
    restricted = order_service.restrict_by_sizes(order_service.poset_Y(4), [2])
    assert all(is_linear_extension(order, restricted) for order in sorted_orders)


def test_realizable_orders_are_sound(order_service, multfunc_service, single_thread):
    labels = [2, 3, 5, 7]
    for order in order_service.realizable_orders(TWO_SUBSETS, 4):
        result = order_service.coherence_witness(order)
        assert result.feasible
        g = multfunc_service.weights_to_function(result.weights.weights, labels)
        assert result.function == dict(g.values)
        induced = order_service.induced_order(TWO_SUBSETS, g, vertices=labels)
        assert induced.sequence == order.sequence


def test_realizable_orders_with_workers(order_service, monkeypatch):
    monkeypatch.setattr(Config, "THREADS", 1)
    expected = [o.sequence for o in order_service.realizable_orders(TWO_SUBSETS, 4)]
    monkeypatch.setattr(Config, "THREADS", 2)
    assert [o.sequence for o in order_service.realizable_orders(TWO_SUBSETS, 4)] == expected


def test_realizable_orders_caps(order_service):
    with pytest.raises(CapacityError):
        order_service.realizable_orders(list(combinations(range(1, 9), 1)), 8)
    with pytest.raises(DomainError):
        order_service.realizable_orders([(1, 5)], 4)


@pytest.mark.parametrize("faces, r, expected", [
    (TWO_SUBSETS, 4, (48, 2, 2, 48, True)),
    ([(1,)], 1, (1, 1, 1, 1, True)),
    ([(1,), (2,), (3,)], 3, (6, 1, 1, 6, True)),
])
def test_nord_bound(order_service, single_thread, faces, r, expected):
    bound = order_service.check_nord_bound(faces, r)
    assert (bound.t, bound.t_sorted, bound.linear_extensions, bound.bound, bound.holds) == expected


@pytest.mark.slow
def test_sampled_functions_induce_realizable_orders(order_service, multfunc_service, single_thread, rng):
    nonempty = [c for k in range(1, 4) for c in combinations(range(1, 4), k)]
    realizable = {tuple(o.sequence) for o in order_service.realizable_orders(nonempty, 3)}
    assert realizable
    labels = [2, 3, 5]
    seen = set()
    for _ in range(10**4):
        g = multfunc_service.random_function(labels, rng, Fraction(101, 100), Fraction(10), denominator=1000)
        try:
            order = order_service.induced_order(nonempty, g, vertices=labels)
        except NotInjectiveError:
            continue
        assert tuple(order.sequence) in realizable
        seen.add(tuple(order.sequence))
    assert seen


@pytest.mark.slow
def test_weight_orders_are_found(order_service, single_thread, rng):
    realizable = {tuple(o.sequence) for o in order_service.realizable_orders(TWO_SUBSETS, 4)}
    for _ in range(500):
        weights = [Fraction(rng.randint(1, 10**6), 10**3) for _ in range(4)]
        try:
            order = order_service.subset_sum_order(weights, faces=TWO_SUBSETS)
        except NotInjectiveError:
            continue
        assert tuple(order.sequence) in realizable
