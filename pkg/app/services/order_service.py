import logging
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import islice, permutations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union
import networkx as nx
from sympy import prime

from app.config import Config
from app.schemas.ideal import UnitaryIdeal
from app.schemas.multfunc import MultiplicativeFunction
from app.schemas.orders import (
    CoherenceResult, CoverPoset, FaceTuple, ImpossibilityReport, Infeasible, NordBound,
    StrictInequality, TermorderCheck, TotalOrder, WeightVector, face_label,
)
from app.services import lp
from app.services.arith_service import ArithmeticService
from app.services.multfunc_service import MultiplicativeFunctionService
from app.utils.exceptions import CapacityError, DomainError, NotInjectiveError

logger = logging.getLogger(__name__)

# g(6) > g(21) > g(10) > g(15) > g(14) > g(35) has no multiplicative realization
IMPOSSIBLE_DESCENDING = (6, 21, 10, 15, 14, 35)


def _mask(face: Iterable[int]) -> int:
    mask = 0
    for i in face:
        mask |= 1 << (i - 1)
    return mask


def _face(mask: int) -> FaceTuple:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def _face_key(face: FaceTuple) -> Tuple[int, FaceTuple]:
    return len(face), face


def consecutive_system(
    sequence: Sequence[FaceTuple], r: int, sorted_only: bool = False,
) -> Tuple[List[List[Fraction]], List[Fraction], List[StrictInequality]]:
    """
    Rows of  A x >= b  in x = w - 1 >= 0: one row per consecutive pair
    alpha < beta (sum_beta w - sum_alpha w >= 1), plus w_{i+1} - w_i >= 1
    for i < r when ``sorted_only``.
    """
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    labels: List[StrictInequality] = []
    pairs = list(zip(sequence, sequence[1:]))
    if sorted_only:
        pairs += [((i,), (i + 1,)) for i in range(1, r)]
    for alpha, beta in pairs:
        row = [Fraction(0)] * r
        for i in beta:
            row[i - 1] += 1
        for i in alpha:
            row[i - 1] -= 1
        rows.append(row)
        rhs.append(Fraction(1 - len(beta) + len(alpha)))
        labels.append(StrictInequality(smaller=alpha, larger=beta))
    return rows, rhs, labels


def solve_weights(sequence: Sequence[FaceTuple], r: int, sorted_only: bool = False) -> Optional[List[int]]:
    """Smallest-scale positive integer weights realizing the sequence, or None."""
    rows, rhs, _ = consecutive_system(sequence, r, sorted_only)
    x = lp.find_feasible_point(rows, rhs, r)
    if x is None:
        return None
    weights = [1 + v for v in x]
    scale = math.lcm(*(w.denominator for w in weights)) if weights else 1
    integers = [int(w * scale) for w in weights]
    common = math.gcd(*integers) if integers else 1
    return [w // common for w in integers]


def _feasible_in_range(
    ground: Sequence[FaceTuple], r: int, sorted_only: bool, start: int, stop: int,
) -> List[Tuple[FaceTuple, ...]]:
    """Feasible permutations of ``ground`` with lexicographic rank in [start, stop)."""
    return [
        sequence for sequence in islice(permutations(ground), start, stop)
        if solve_weights(sequence, r, sorted_only) is not None
    ]


class OrderService:
    """
    Boolean term orders, the poset Y and its restrictions, and which total
    orders on a face family come from multiplicative functions.

    Faces here are increasing tuples of 1-based vertex indices.
    """

    def __init__(self, arith: ArithmeticService, multfunc_service: MultiplicativeFunctionService):
        self.arith = arith
        self.multfunc_service = multfunc_service

    # ========== Poset Y ==========

    def poset_Y(self, r: int) -> CoverPoset:
        """
        All subsets of {1..r}, generated by sigma < sigma + {k} and by
        replacing an index i in sigma with i+1 when i+1 <= r is not in sigma.

        Raises:
            DomainError: r outside 1..POSET_MAX_R
        """
        if not 1 <= r <= Config.POSET_MAX_R:
            raise DomainError(f"poset Y needs 1 <= r <= {Config.POSET_MAX_R}, got {r}")
        masks = sorted(range(1 << r), key=lambda m: _face_key(_face(m)))
        index = {m: k for k, m in enumerate(masks)}
        covers = []
        for m in masks:
            for i in range(r):
                bit = 1 << i
                if not m & bit:
                    covers.append((index[m], index[m | bit]))
                elif i + 1 < r and not m & (bit << 1):
                    covers.append((index[m], index[m ^ bit | bit << 1]))
        return CoverPoset.model_construct(r=r, elements=[_face(m) for m in masks], covers=covers)

    def _graph(self, poset: CoverPoset) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(poset.elements)))
        graph.add_edges_from(poset.covers)
        if not nx.is_directed_acyclic_graph(graph):
            raise DomainError("cover relations contain a cycle")
        return graph

    def restrict_poset(self, poset: CoverPoset, faces: Iterable[Sequence[int]]) -> CoverPoset:
        """
        Induced subposet on ``faces``: comparabilities pass through elements
        outside the family. Covers of the result are its Hasse diagram.
        """
        position = {face: k for k, face in enumerate(poset.elements)}
        family = sorted({tuple(sorted(f)) for f in faces}, key=_face_key)
        missing = [f for f in family if f not in position]
        if missing:
            raise DomainError(f"face {face_label(missing[0])} is not an element of the poset")
        graph = self._graph(poset)
        local = {position[f]: k for k, f in enumerate(family)}
        induced = nx.DiGraph()
        induced.add_nodes_from(range(len(family)))
        for face in family:
            source = position[face]
            for target in nx.descendants(graph, source):
                if target in local:
                    induced.add_edge(local[source], local[target])
        hasse = nx.transitive_reduction(induced)
        return CoverPoset(r=poset.r, elements=family, covers=sorted(hasse.edges()))

    def restrict_by_sizes(self, poset: CoverPoset, sizes: Iterable[int]) -> CoverPoset:
        wanted = set(sizes)
        return self.restrict_poset(poset, [f for f in poset.elements if len(f) in wanted])

    def count_linear_extensions(self, poset: CoverPoset) -> int:
        """
        Dynamic programming over down-sets, one layer per size.

        Raises:
            CapacityError: more than LINEAR_EXTENSION_MAX_ELEMENTS elements
        """
        size = len(poset.elements)
        if size > Config.LINEAR_EXTENSION_MAX_ELEMENTS:
            raise CapacityError(
                f"{size} elements exceed the linear-extension cap {Config.LINEAR_EXTENSION_MAX_ELEMENTS}"
            )
        self._graph(poset)
        preds = poset.predecessors()
        layer: Dict[int, int] = {0: 1}
        for _ in range(size):
            following: Dict[int, int] = {}
            for down, ways in layer.items():
                for e in range(size):
                    bit = 1 << e
                    if not down & bit and preds[e] & down == preds[e]:
                        following[down | bit] = following.get(down | bit, 0) + ways
            layer = following
        logger.debug(f"linear extensions of a {size}-element poset: {layer.get((1 << size) - 1, 0)}")
        return layer.get((1 << size) - 1, 0)

    # ========== Term Orders ==========

    def is_boolean_termorder(self, order: TotalOrder) -> TermorderCheck:
        """
        Both axioms on all of 2^[r]: the empty set comes first, and
        sigma < tau implies sigma + gamma < tau + gamma for gamma disjoint
        from both. Single vertices gamma suffice by induction.

        Raises:
            DomainError: the order is not on all 2^r subsets
            CapacityError: r above TERMORDER_MAX_R
        """
        r = order.r
        if r > Config.TERMORDER_MAX_R:
            raise CapacityError(f"exhaustive term-order check is capped at r = {Config.TERMORDER_MAX_R}")
        if len(order.sequence) != 1 << r:
            raise DomainError(f"a boolean term order ranks all {1 << r} subsets, got {len(order.sequence)}")
        masks = [_mask(f) for f in order.sequence]
        if masks[0] != 0:
            return TermorderCheck(holds=False, violation=(order.sequence[0], (), ()))
        rank = {m: k for k, m in enumerate(masks)}
        full = (1 << r) - 1
        for i, sigma in enumerate(masks):
            for tau in masks[i + 1:]:
                free = full & ~(sigma | tau)
                while free:
                    bit = free & -free
                    free ^= bit
                    if rank[sigma | bit] > rank[tau | bit]:
                        return TermorderCheck(holds=False, violation=(_face(sigma), _face(tau), _face(bit)))
        return TermorderCheck(holds=True)

    def is_sorted_order(self, order: TotalOrder) -> bool:
        position = {face: k for k, face in enumerate(order.sequence)}
        singletons = [(i,) for i in range(1, order.r + 1)]
        missing = [s for s in singletons if s not in position]
        if missing:
            raise DomainError(f"sortedness needs every singleton; v{missing[0][0]} is missing")
        return all(position[a] < position[b] for a, b in zip(singletons, singletons[1:]))

    def subset_sum_order(self, weights: Sequence[Fraction], faces: Optional[Iterable[FaceTuple]] = None) -> TotalOrder:
        """Faces (all subsets by default) sorted by total weight; ties are refused."""
        vector = WeightVector(weights=[Fraction(w) for w in weights])
        r = len(vector.weights)
        family = list(faces) if faces is not None else [_face(m) for m in range(1 << r)]
        ranked = sorted(family, key=lambda f: (vector.weight_of(f), f))
        for a, b in zip(ranked, ranked[1:]):
            if vector.weight_of(a) == vector.weight_of(b):
                value = vector.weight_of(a)
                raise NotInjectiveError(
                    a, b, value, f"subset sums tie: w({face_label(a)}) = w({face_label(b)}) = {value}"
                )
        return TotalOrder(r=r, sequence=ranked)

    # ========== Coherence ==========

    def coherence_witness(self, order: TotalOrder, sorted_only: bool = False) -> CoherenceResult:
        """
        Positive integer weights w with sum_alpha w < sum_beta w for every
        consecutive alpha < beta, with g(v_i) = 2^{w_i} realizing the order;
        or a minimal contradictory subset of those inequalities.

        Raises:
            CapacityError: r above COHERENCE_MAX_VERTICES
        """
        if order.r > Config.COHERENCE_MAX_VERTICES:
            raise CapacityError(f"coherence check is capped at r = {Config.COHERENCE_MAX_VERTICES}")
        weights = solve_weights(order.sequence, order.r, sorted_only)
        if weights is not None:
            labels = order.vertices or [prime(i) for i in range(1, order.r + 1)]
            g = self.multfunc_service.weights_to_function(weights, labels)
            return CoherenceResult(
                feasible=True, order=order,
                weights=WeightVector(weights=[Fraction(w) for w in weights]),
                function=dict(g.values),
            )
        return CoherenceResult(feasible=False, order=order, certificate=self.conflict_set(order, sorted_only))

    def conflict_set(self, order: TotalOrder, sorted_only: bool = False) -> Infeasible:
        rows, rhs, labels = consecutive_system(order.sequence, order.r, sorted_only)
        keep = lp.irreducible_infeasible_subset(rows, rhs, order.r)
        consecutive = len(order.sequence) - 1
        return Infeasible(
            conflicts=[labels[k] for k in keep],
            sorted_constraint=any(k >= consecutive for k in keep),
        )

    def opposing_pair(self, order: TotalOrder) -> Optional[Tuple[StrictInequality, StrictInequality]]:
        """
        Two comparisons implied by the order that reduce, after cancelling
        common vertices, to opposite inequalities between the same sums.
        """
        masks = [_mask(f) for f in order.sequence]
        seen: Dict[Tuple[int, int], Tuple[int, int]] = {}
        for i, alpha in enumerate(masks):
            for beta in masks[i + 1:]:
                reduced = (alpha & ~beta, beta & ~alpha)
                reverse = (reduced[1], reduced[0])
                if reverse in seen:
                    gamma, delta = seen[reverse]
                    return (
                        StrictInequality(smaller=_face(gamma), larger=_face(delta)),
                        StrictInequality(smaller=_face(alpha), larger=_face(beta)),
                    )
                seen.setdefault(reduced, (alpha, beta))
        return None

    # ========== Induced Orders ==========

    def induced_order(
        self,
        ground: Union[UnitaryIdeal, Sequence[FaceTuple]],
        g: MultiplicativeFunction,
        vertices: Optional[Sequence[int]] = None,
    ) -> TotalOrder:
        """
        Faces sorted by g-value. ``vertices`` labels v1..vr with prime powers;
        a UnitaryIdeal supplies its own.

        Raises:
            DomainError: g(v) <= 1 for some vertex
            NotInjectiveError: two faces share a value (names the pair)
        """
        if isinstance(ground, UnitaryIdeal):
            vertices = ground.vertex_values
            position = {q: k + 1 for k, q in enumerate(vertices)}
            faces = [
                tuple(sorted(position[q] for q in self.arith.component_values(s)))
                for s in ground.sorted_elements()
            ]
        else:
            faces = [tuple(sorted(f)) for f in ground]
            if vertices is None:
                raise DomainError("face families need vertex labels to evaluate g")
        vertex_values = [g.value_at(q) for q in vertices]
        for q, value in zip(vertices, vertex_values):
            if value <= 1:
                raise DomainError(f"g is not strictly log-positive: g({q}) = {value}")

        def value_of(face: FaceTuple) -> Fraction:
            value = Fraction(1)
            for i in face:
                value *= vertex_values[i - 1]
            return value

        valued = sorted((value_of(f), f) for f in faces)
        for (a_value, a), (b_value, b) in zip(valued, valued[1:]):
            if a_value == b_value:
                raise NotInjectiveError(self._name(a, vertices), self._name(b, vertices), a_value)
        return TotalOrder(r=len(vertices), sequence=[f for _, f in valued], vertices=list(vertices))

    def _name(self, face: FaceTuple, vertices: Sequence[int]) -> int:
        value = 1
        for i in face:
            value *= vertices[i - 1]
        return value

    def faces_to_integers(self, faces: Iterable[Sequence[int]], r: int) -> List[int]:
        """Each face v_i v_j ... becomes p_i p_j ..., p_i the i-th prime."""
        primes = [prime(i) for i in range(1, r + 1)]
        values = []
        for face in faces:
            value = 1
            for i in face:
                if not 1 <= i <= r:
                    raise DomainError(f"vertex {i} outside 1..{r}")
                value *= primes[i - 1]
            values.append(value)
        return values

    def order_from_integers(self, values: Sequence[int]) -> TotalOrder:
        """
        Read integers listed in ascending claimed g-order as faces over the
        union of their unitary components (sorted, v1 the smallest).
        """
        if len(set(values)) != len(values):
            raise DomainError("an order lists each integer once")
        components = {m: self.arith.component_values(m) for m in values}
        universe = sorted({q for qs in components.values() for q in qs})
        position = {q: k + 1 for k, q in enumerate(universe)}
        sequence = [tuple(position[q] for q in components[m]) for m in values]
        sequence = [tuple(sorted(f)) for f in sequence]
        return TotalOrder(r=len(universe), sequence=sequence, vertices=universe)

    # ========== Realizability ==========

    def realizable_orders(self, faces: Iterable[Sequence[int]], r: int, sorted_only: bool = False) -> List[TotalOrder]:
        """
        Every total order on the family induced by some multiplicative g
        (strictly log-positive and injective; sorted ones when ``sorted_only``).
        Candidates are the |T|! permutations in lexicographic order.

        Raises:
            CapacityError: |T|! above ORDER_ENUMERATION_LIMIT or r above ORDER_ENUMERATION_MAX_R
        """
        ground = sorted({tuple(sorted(f)) for f in faces}, key=_face_key)
        total = math.factorial(len(ground))
        if total > Config.ORDER_ENUMERATION_LIMIT or r > Config.ORDER_ENUMERATION_MAX_R:
            raise CapacityError(
                f"{total} candidate orders on r = {r} vertices exceed the enumeration caps "
                f"({Config.ORDER_ENUMERATION_LIMIT} orders, r <= {Config.ORDER_ENUMERATION_MAX_R})"
            )
        if any(i < 1 or i > r for f in ground for i in f):
            raise DomainError(f"faces must use vertices 1..{r}")

        workers = Config.THREADS
        if workers <= 1 or total < 2 * workers:
            feasible = _feasible_in_range(ground, r, sorted_only, 0, total)
        else:
            chunk = math.ceil(total / workers)
            with ProcessPoolExecutor(max_workers=workers) as executor:
                futures = [
                    executor.submit(_feasible_in_range, ground, r, sorted_only, start, min(start + chunk, total))
                    for start in range(0, total, chunk)
                ]
                feasible = [sequence for future in futures for sequence in future.result()]
        logger.info(f"{len(feasible)} of {total} orders realizable (sorted_only={sorted_only})")
        return [TotalOrder(r=r, sequence=list(sequence)) for sequence in feasible]

    def check_nord_bound(self, faces: Iterable[Sequence[int]], r: int) -> NordBound:
        """t(T) <= r! times the number of linear extensions of Y restricted to T."""
        family = [tuple(sorted(f)) for f in faces]
        t = len(self.realizable_orders(family, r))
        t_sorted = len(self.realizable_orders(family, r, sorted_only=True))
        extensions = self.count_linear_extensions(self.restrict_poset(self.poset_Y(r), family))
        bound = math.factorial(r) * extensions
        return NordBound(t=t, t_sorted=t_sorted, linear_extensions=extensions, bound=bound, holds=t <= bound)

    def verify_impossible_example(self) -> ImpossibilityReport:
        """
        g(6) > g(21) > g(10) > g(15) > g(14) > g(35) over the primes 2, 3, 5, 7:
        the ascending order is not coherent.
        """
        order = self.order_from_integers(list(reversed(IMPOSSIBLE_DESCENDING)))
        result = self.coherence_witness(order)
        return ImpossibilityReport(
            descending=list(IMPOSSIBLE_DESCENDING),
            feasible=result.feasible,
            opposing_pair=self.opposing_pair(order),
            conflicts=result.certificate.conflicts if result.certificate else [],
        )
