"""
Named reproduction checks: every published number recomputed, compared
with its expected value and timed.
"""

import logging
import random
import time
from fractions import Fraction
from itertools import combinations
from typing import Callable, List, Optional, Sequence, Tuple

from app.config import Config
from app.schemas.command import ReproCheck, ReproReport
from app.services.facet_service import FacetService
from app.services.ideal_service import IdealService
from app.services.multfunc_service import MultiplicativeFunctionService
from app.services.order_service import OrderService
from app.services.summation_service import SummationService
from app.utils.exceptions import AmbiguousBoundaryError

logger = logging.getLogger(__name__)

DELTA_30_FACETS = [12, 14, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30]
GAMMA_REFERENCE = Fraction("0.607714359516618")

Outcome = Tuple[str, str, bool]


class ReproService:
    def __init__(
        self,
        ideal_service: IdealService,
        multfunc_service: MultiplicativeFunctionService,
        summation_service: SummationService,
        facet_service: FacetService,
        order_service: OrderService,
    ):
        self.ideal_service = ideal_service
        self.multfunc_service = multfunc_service
        self.summation_service = summation_service
        self.facet_service = facet_service
        self.order_service = order_service

    @property
    def checks(self) -> List[Tuple[str, Callable[[random.Random], Outcome]]]:
        return [
            ("facets of [30]", self.check_facets_30),
            ("facet density of [30]", self.check_density_30),
            ("gamma series", self.check_gamma),
            ("facet density of [10^6]", self.check_density_large),
            ("linear extensions of Y(4)", self.check_linear_extensions),
            ("realizable orders on 2-subsets", self.check_realizable_orders),
            ("impossible order", self.check_impossible),
            ("extension bound", self.check_nord_bound),
            ("Psi oracle", self.check_psi_oracle),
            ("summation routes", self.check_summation_routes),
            ("maximization strategies", self.check_maximization),
            ("realization round trip", self.check_round_trip),
        ]

    def run(self, names: Optional[Sequence[str]] = None, seed: Optional[int] = None) -> ReproReport:
        """Run all checks, or those whose name contains one of ``names``."""
        seed = Config.REPRO_SEED if seed is None else seed
        results = []
        for name, check in self.checks:
            if names and not any(n in name for n in names):
                continue
            start = time.perf_counter()
            expected, observed, passed = check(random.Random(seed))
            seconds = time.perf_counter() - start
            logger.info(f"repro {name}: {'pass' if passed else 'FAIL'} in {seconds:.2f}s")
            results.append(ReproCheck(
                name=name, expected=expected, observed=observed, passed=passed, seconds=round(seconds, 3)
            ))
        return ReproReport(checks=results)

    # ========== Facets and gamma ==========

    def check_facets_30(self, rng: random.Random) -> Outcome:
        facets = list(self.facet_service.enumerate_facets(30))
        return ",".join(map(str, DELTA_30_FACETS)), ",".join(map(str, facets)), facets == DELTA_30_FACETS

    def check_density_30(self, rng: random.Random) -> Outcome:
        density = self.facet_service.facet_density(30)
        return "17/30", str(density), density == Fraction(17, 30)

    def check_gamma(self, rng: random.Random) -> Outcome:
        estimate = self.facet_service.gamma_constant(1e-12)
        error = abs(Fraction(estimate.series_value) - GAMMA_REFERENCE)
        rounded = estimate.rounded()
        return "0.607714359516618", rounded, error <= Fraction(1, 10**12) and rounded == "0.607714359516618"

    def check_density_large(self, rng: random.Random) -> Outcome:
        n = 10**6
        gamma = Fraction(self.facet_service.gamma_constant(1e-12).series_value)
        density = self.facet_service.facet_density(n)
        return f"within 0.01 of {float(gamma):.6f}", f"{float(density):.6f}", abs(density - gamma) < Fraction(1, 100)

    # ========== Orders ==========

    def _two_subsets(self, r: int = 4) -> List[Tuple[int, ...]]:
        return list(combinations(range(1, r + 1), 2))

    def check_linear_extensions(self, rng: random.Random) -> Outcome:
        y4 = self.order_service.poset_Y(4)
        full = self.order_service.count_linear_extensions(y4)
        restricted = self.order_service.count_linear_extensions(
            self.order_service.restrict_poset(y4, self._two_subsets())
        )
        return "78, 2", f"{full}, {restricted}", (full, restricted) == (78, 2)

    def check_realizable_orders(self, rng: random.Random) -> Outcome:
        family = self._two_subsets()
        unsorted = len(self.order_service.realizable_orders(family, 4))
        sorted_ = len(self.order_service.realizable_orders(family, 4, sorted_only=True))
        return "48 unsorted, 2 sorted", f"{unsorted} unsorted, {sorted_} sorted", (unsorted, sorted_) == (48, 2)

    def check_impossible(self, rng: random.Random) -> Outcome:
        report = self.order_service.verify_impossible_example()
        observed = "FEASIBLE" if report.feasible else "INFEASIBLE"
        return "INFEASIBLE", observed, not report.feasible and report.opposing_pair is not None

    def check_nord_bound(self, rng: random.Random) -> Outcome:
        bound = self.order_service.check_nord_bound(self._two_subsets(), 4)
        observed = f"({bound.t}, {bound.bound}, {str(bound.holds).lower()})"
        return "(48, 48, true)", observed, (bound.t, bound.bound, bound.holds) == (48, 48, True)

    # ========== Summation ==========

    def check_psi_oracle(self, rng: random.Random) -> Outcome:
        mismatches = 0
        piecewise_checked = 0
        for r in range(1, 5):
            for _ in range(50):
                denominator = rng.randint(1, 20)
                c = Fraction(rng.randint(-10 * denominator, 10 * denominator), denominator)
                value = self.summation_service.psi(r, c).value
                if value != self.summation_service.psi_bruteforce(r, c):
                    mismatches += 1
                try:
                    piecewise = self.summation_service.psi_piecewise(r, c)
                except AmbiguousBoundaryError:
                    continue
                piecewise_checked += 1
                if piecewise != value:
                    mismatches += 1
        return "0 mismatches", f"{mismatches} mismatches ({piecewise_checked} piecewise)", mismatches == 0

    def random_ideal(self, rng: random.Random, max_facets: int = 12):
        while True:
            generators = [rng.randint(1, 500) for _ in range(rng.randint(1, 4))]
            ideal = self.ideal_service.close_under_unitary_divisors(generators)
            complex_ = self.ideal_service.complex_of(ideal)
            facets = self.ideal_service.facets(complex_)
            if len(facets) <= max_facets:
                return ideal, complex_, facets

    def check_summation_routes(self, rng: random.Random) -> Outcome:
        failures = 0
        for _ in range(200):
            ideal, complex_, facets = self.random_ideal(rng)
            g = self.multfunc_service.random_function(ideal.vertex_values, rng, Fraction(-3), Fraction(3))
            direct = self.summation_service.g_sum_direct(ideal, g)
            if direct != self.summation_service.g_sum_inclusion_exclusion(facets, g):
                failures += 1
            c = Fraction(rng.randint(-30, 30), 10)
            constant = self.multfunc_service.from_values({q: c for q in ideal.vertex_values})
            by_f = self.summation_service.g_sum_fvector(self.ideal_service.f_vector(complex_), c)
            if not (self.summation_service.g_sum_direct(ideal, constant)
                    == self.summation_service.g_sum_inclusion_exclusion(facets, constant) == by_f):
                failures += 1
        return "0 failures", f"{failures} failures", failures == 0

    # ========== Maximization ==========

    def check_maximization(self, rng: random.Random) -> Outcome:
        failures = 0
        arith = self.facet_service.arith
        for _ in range(100):
            n = rng.randint(1, 5000)
            g = self.multfunc_service.random_log_positive(arith.prime_powers_upto(n), rng)
            naive = self.facet_service.maximize_on_interval(n, g, "naive")
            facet = self.facet_service.maximize_on_interval(n, g, "facet")
            if (naive.value, naive.argmax) != (facet.value, facet.argmax):
                failures += 1
        separated = 0
        for w, h in self.facet_service.separating_pairs(200):
            values = self.facet_service.evaluate_interval(200, h)
            best = max(values[1:])
            if values.index(best, 1) == w and values.count(best) == 1:
                separated += 1
        facets = self.facet_service.count_facets(200)
        observed = f"{failures} strategy failures, {separated}/{facets} facets separated"
        expected = f"0 strategy failures, {facets}/{facets} facets separated"
        return expected, observed, failures == 0 and separated == facets

    # ========== Realization ==========

    def check_round_trip(self, rng: random.Random) -> Outcome:
        checked = failures = 0
        for r in range(0, 6):
            families = list(self.ideal_service.enumerate_complexes(r))
            if r == 5:
                families = rng.sample(families, min(500, len(families)))
            for faces in families:
                complex_ = self.ideal_service.abstract_complex(r, faces)
                realized = self.ideal_service.complex_of(self.ideal_service.realize(complex_))
                checked += 1
                if realized.faces != complex_.faces:
                    failures += 1
        return "0 failures", f"{failures} failures in {checked} complexes", failures == 0
