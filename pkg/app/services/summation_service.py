import logging
from fractions import Fraction
from math import comb
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from app.config import Config
from app.schemas.ideal import Face, FVector, UnitaryIdeal
from app.schemas.multfunc import MultiplicativeFunction
from app.schemas.summation import KozlovVertex, PsiResult, SumResult
from app.services.ideal_service import IdealService
from app.services.multfunc_service import MultiplicativeFunctionService
from app.utils.exceptions import AmbiguousBoundaryError, CapacityError, DomainError

logger = logging.getLogger(__name__)

SUM_METHODS = ("direct", "incl-excl", "fvector")


class SummationService:
    """
    G(S) = sum of g over S by direct evaluation, by the f-vector when g is
    constant on prime powers, and by inclusion-exclusion over facets; and
    the extremal value Psi(r, c) with its closed form and a brute-force oracle.
    """

    def __init__(self, ideal_service: IdealService, multfunc_service: MultiplicativeFunctionService):
        self.ideal_service = ideal_service
        self.multfunc_service = multfunc_service
        self._fvector_cache: Dict[int, List[Tuple[int, ...]]] = {}

    # ========== G(S) ==========

    def g_sum_direct(self, ideal: UnitaryIdeal, g: MultiplicativeFunction) -> Fraction:
        if not ideal.is_materialized and ideal.size > self.ideal_service.materialize_limit:
            raise CapacityError(f"direct summation over {ideal.size} elements exceeds the materialization limit")
        total = Fraction(0)
        for s in ideal.sorted_elements():
            total += self.multfunc_service.evaluate(g, s)
        return total

    def g_sum_fvector(self, f: FVector, c: Fraction) -> Fraction:
        """1 + sum_i c^(i+1) f_i."""
        c = Fraction(c)
        total = Fraction(1)
        power = Fraction(1)
        for entry in f.entries:
            power *= c
            total += power * entry
        return total

    def g_sum_inclusion_exclusion(self, facets: Sequence[Face], g: MultiplicativeFunction) -> Fraction:
        """
        Alternating sum over nonempty facet subsets of g~ of the common
        vertices, g~(sigma) = prod over sigma of (1 + g(v)).

        Raises:
            CapacityError: more facets than INCLUSION_EXCLUSION_MAX_FACETS
        """
        value, _ = self._inclusion_exclusion(facets, g)
        return value

    def _inclusion_exclusion(self, facets: Sequence[Face], g: MultiplicativeFunction) -> Tuple[Fraction, int]:
        cap = Config.INCLUSION_EXCLUSION_MAX_FACETS
        if len(facets) > cap:
            raise CapacityError(f"{len(facets)} facets exceed the inclusion-exclusion cap {cap}")
        vertex_sets: List[FrozenSet[int]] = []
        for face in facets:
            if face.vertex_values is None:
                raise DomainError(f"face {face.vertex_indices} carries no vertex labels")
            vertex_sets.append(frozenset(face.vertex_values))

        g_tilde: Dict[FrozenSet[int], Fraction] = {}

        def tilde(vertices: FrozenSet[int]) -> Fraction:
            if vertices not in g_tilde:
                value = Fraction(1)
                for q in vertices:
                    value *= 1 + g.value_at(q)
                g_tilde[vertices] = value
            return g_tilde[vertices]

        last = len(vertex_sets) - 1
        total = Fraction(0)
        visited = 0
        # (next index, running intersection, subset size)
        stack = [(i + 1, vertex_sets[i], 1) for i in range(len(vertex_sets) - 1, -1, -1)]
        while stack:
            start, common, k = stack.pop()
            visited += 1
            sign = 1 if k % 2 else -1
            if not common:
                # every extension keeps the empty intersection; their signs cancel
                if start - 1 == last:
                    total += sign
                continue
            total += sign * tilde(common)
            for j in range(len(vertex_sets) - 1, start - 1, -1):
                stack.append((j + 1, common & vertex_sets[j], k + 1))
        logger.info(f"Inclusion-exclusion over {len(vertex_sets)} facets visited {visited} subsets")
        return total, visited

    def g_sum(self, ideal: UnitaryIdeal, g: MultiplicativeFunction, method: str = "direct") -> SumResult:
        """
        G(S) by the named route.

        Raises:
            DomainError: unknown method, or fvector with g not constant on X(S)
        """
        if method == "direct":
            return SumResult(method=method, value=self.g_sum_direct(ideal, g), terms=ideal.size)
        complex_ = self.ideal_service.complex_of(ideal)
        if method == "incl-excl":
            value, visited = self._inclusion_exclusion(self.ideal_service.facets(complex_), g)
            return SumResult(method=method, value=value, terms=visited)
        if method == "fvector":
            c = self.multfunc_service.constant_value(g, ideal.vertex_values)
            if c is None:
                raise DomainError("the f-vector route needs g constant on the prime powers of S")
            f = self.ideal_service.f_vector(complex_)
            return SumResult(method=method, value=self.g_sum_fvector(f, c), terms=len(f.entries) + 1)
        raise DomainError(f"unknown summation method {method!r}; known: {', '.join(SUM_METHODS)}")

    # ========== Psi(r, c) ==========

    def kozlov_vertex(self, r: int, i: int) -> KozlovVertex:
        if r < 1 or not 1 <= i <= r:
            raise DomainError(f"Kozlov vertex needs 1 <= i <= r, got r={r}, i={i}")
        vector = [comb(r, j) if j <= i else 0 for j in range(1, r + 1)]
        return KozlovVertex(r=r, i=i, vector=vector)

    def k_values(self, r: int, c: Fraction) -> List[Fraction]:
        """K_1, ..., K_r with K_i = sum_{j<=i} c^j C(r, j)."""
        c = Fraction(c)
        values = []
        running = Fraction(0)
        power = Fraction(1)
        for j in range(1, r + 1):
            power *= c
            running += power * comb(r, j)
            values.append(running)
        return values

    def psi(self, r: int, c: Fraction) -> PsiResult:
        """
        Psi(r, c) = 1 + max_i K_i. The argmax level is the smallest
        maximizing i.

        Raises:
            DomainError: r < 1
        """
        if r < 1:
            raise DomainError(f"Psi needs r >= 1, got {r}")
        c = Fraction(c)
        k = self.k_values(r, c)
        best = max(k)
        return PsiResult(r=r, c=c, value=1 + best, argmax_level=k.index(best) + 1, k_values=k)

    def k_difference(self, r: int, c: Fraction, i: int) -> Fraction:
        """K_{2i+2} - K_{2i} in factored form."""
        if i < 0 or 2 * i + 2 > r:
            raise DomainError(f"K_{{2i+2}} needs 2i+2 <= r, got r={r}, i={i}")
        c = Fraction(c)
        return c ** (2 * i + 1) * (comb(r, 2 * i + 1) + c * comb(r, 2 * i + 2))

    def psi_thresholds(self, r: int) -> List[Fraction]:
        """
        -(2i+2)/(r-2i-1) for i = 1, 2, ... while 2i+2 <= r. For c < 0,
        K_{2i+2} exceeds K_{2i} exactly when c is below the i-th threshold.
        The list is strictly decreasing.
        """
        return [
            Fraction(-(2 * i + 2), r - 2 * i - 1)
            for i in range(1, r // 2)
        ]

    def psi_level(self, r: int, c: Fraction) -> int:
        """
        The level L selected by the closed-form case analysis.

        Raises:
            AmbiguousBoundaryError: c = 0 or c equals a threshold
        """
        if r < 1:
            raise DomainError(f"Psi needs r >= 1, got {r}")
        c = Fraction(c)
        if r == 1:
            return 1
        if c > 0:
            return r
        thresholds = self.psi_thresholds(r)
        if c == 0 or c in thresholds:
            raise AmbiguousBoundaryError(f"c = {c} lies on an interval boundary for r = {r}")
        return 2 + 2 * sum(1 for t in thresholds if c < t)

    def psi_piecewise(self, r: int, c: Fraction) -> Fraction:
        level = self.psi_level(r, c)
        c = Fraction(c)
        return 1 + sum((c ** i * comb(r, i) for i in range(1, level + 1)), Fraction(0))

    def distinct_f_vectors(self, r: int) -> List[Tuple[int, ...]]:
        """f-vectors of every complex on r labelled vertices with all singletons."""
        if r > Config.PSI_BRUTEFORCE_MAX_R:
            raise CapacityError(
                f"brute force over complexes on {r} vertices exceeds the cap {Config.PSI_BRUTEFORCE_MAX_R}"
            )
        if r not in self._fvector_cache:
            seen: Set[Tuple[int, ...]] = set()
            count = 0
            for faces in self.ideal_service.enumerate_complexes(r):
                count += 1
                entries = [0] * r
                for face in faces:
                    if face:
                        entries[len(face) - 1] += 1
                seen.add(tuple(entries))
            logger.info(f"{count} complexes on {r} vertices, {len(seen)} distinct f-vectors")
            self._fvector_cache[r] = sorted(seen)
        return self._fvector_cache[r]

    def psi_bruteforce(self, r: int, c: Fraction) -> Fraction:
        if r < 1:
            raise DomainError(f"Psi needs r >= 1, got {r}")
        c = Fraction(c)
        best: Optional[Fraction] = None
        for entries in self.distinct_f_vectors(r):
            value = self.g_sum_fvector(FVector(entries=list(entries)), c)
            if best is None or value > best:
                best = value
        return best

    def psi_report(self, r: int, c: Fraction, piecewise: bool = False, bruteforce: bool = False) -> PsiResult:
        result = self.psi(r, c)
        if piecewise:
            result.piecewise_value = self.psi_piecewise(r, c)
        if bruteforce:
            result.bruteforce_value = self.psi_bruteforce(r, c)
        return result
