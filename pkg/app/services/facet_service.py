import logging
from concurrent.futures import ThreadPoolExecutor
from decimal import Decimal
from fractions import Fraction
from pathlib import Path
from typing import Iterator, List, Optional, Tuple
import mpmath
import numpy as np
import pandas as pd
from sympy import nextprime

from app.config import Config
from app.schemas.facets import FacetMatrix, FacetSummary, GammaEstimate, MaximizationResult
from app.schemas.multfunc import MultiplicativeFunction
from app.services.arith_service import ArithmeticService
from app.services.multfunc_service import MultiplicativeFunctionService
from app.utils.exceptions import CapacityError, DomainError

logger = logging.getLogger(__name__)

STRATEGIES = ("facet", "naive")


def _small_primes(n: int) -> List[int]:
    """Primes p_1..p_k with p_1 * ... * p_{k-1} <= n: every spnd(m), m <= n, is among them."""
    primes = [2]
    primorial = 1
    while primorial * primes[-1] <= n:
        primorial *= primes[-1]
        primes.append(int(nextprime(primes[-1])))
    return primes


def facet_block(lo: int, hi: int, n: int, primes: List[int]) -> np.ndarray:
    """Facets of Delta([n]) in [lo, hi): the m with m * spnd(m) > n."""
    m = np.arange(lo, hi, dtype=np.int64)
    spnd = np.zeros_like(m)
    for p in primes:
        unassigned = spnd == 0
        if not unassigned.any():
            break
        spnd[unassigned & (m % p != 0)] = p
    return m[m * spnd > n]


class FacetService:
    """
    Facets of Delta([n]) without building the complex: m <= n is a facet
    iff m times the smallest prime not dividing m exceeds n.
    """

    def __init__(self, arith: ArithmeticService, multfunc_service: MultiplicativeFunctionService):
        self.arith = arith
        self.multfunc_service = multfunc_service

    # ========== Facet Streaming ==========

    def is_facet_in_interval(self, m: int, n: int) -> bool:
        if not 1 <= m <= n:
            raise DomainError(f"facet test needs 1 <= m <= n, got m={m}, n={n}")
        return m * self.arith.smallest_prime_not_dividing(m) > n

    def _blocks(self, n: int) -> Iterator[np.ndarray]:
        """Facet blocks in increasing order; with THREADS > 1, a window of blocks runs concurrently."""
        size = Config.FACET_BLOCK_SIZE
        primes = _small_primes(n)
        starts = list(range(1, n + 1, size))
        threads = Config.THREADS
        if threads <= 1 or len(starts) == 1:
            for lo in starts:
                yield facet_block(lo, min(lo + size, n + 1), n, primes)
            return
        with ThreadPoolExecutor(max_workers=threads) as executor:
            for w in range(0, len(starts), threads):
                window = starts[w:w + threads]
                futures = [
                    executor.submit(facet_block, lo, min(lo + size, n + 1), n, primes)
                    for lo in window
                ]
                for future in futures:
                    yield future.result()
                logger.info(f"Facet blocks up to {min(window[-1] + size - 1, n)} of {n} done")

    def enumerate_facets(self, n: int) -> Iterator[int]:
        """Facets of Delta([n]) as integers, increasing."""
        if n < 1:
            raise DomainError(f"[n] needs n >= 1, got {n}")
        for block in self._blocks(n):
            yield from block.tolist()

    def count_facets(self, n: int) -> int:
        if n < 1:
            raise DomainError(f"[n] needs n >= 1, got {n}")
        return sum(int(block.size) for block in self._blocks(n))

    def facet_density(self, n: int) -> Fraction:
        return Fraction(self.count_facets(n), n)

    def summary(self, n: int, with_list: bool = False) -> FacetSummary:
        if with_list:
            facets = list(self.enumerate_facets(n))
            return FacetSummary(n=n, count=len(facets), density=Fraction(len(facets), n), facets=facets)
        count = self.count_facets(n)
        return FacetSummary(n=n, count=count, density=Fraction(count, n))

    # ========== Gamma ==========

    def gamma_constant(self, truncation_bound: float = 1e-12) -> GammaEstimate:
        """
        gamma = 1 - 1/2 + sum_i (1/p_i - 1/p_{i+1}) / (p_1 ... p_i).

        ``series_value`` is the partial sum up to the first term below
        ``truncation_bound``. ``limit`` sums on until the tail is below
        10^-GAMMA_PRECISION: term i is at most 1/(p_1 ... p_{i+1}), so the
        tail after term i is at most 2/(p_1 ... p_{i+2}).
        """
        if truncation_bound <= 0:
            raise DomainError(f"truncation bound must be positive, got {truncation_bound}")
        digits = Config.GAMMA_PRECISION
        with mpmath.workdps(digits + 5):
            bound = mpmath.mpf(truncation_bound)
            precision = mpmath.mpf(10) ** -digits
            value = mpmath.mpf(1) / 2
            series_value = None
            terms = 0
            primorial = mpmath.mpf(1)
            p, following = 2, 3
            while True:
                primorial *= p
                term = (mpmath.mpf(1) / p - mpmath.mpf(1) / following) / primorial
                if series_value is None and term < bound:
                    series_value = value
                value += term
                if series_value is None:
                    terms += 1
                p, following = following, int(nextprime(following))
                if series_value is not None and 2 / (primorial * p * following) < precision:
                    break
            estimate = GammaEstimate(
                series_value=Decimal(mpmath.nstr(series_value, digits)),
                limit=Decimal(mpmath.nstr(value, digits)),
                terms_used=terms,
                truncation_bound=truncation_bound,
            )
        logger.info(f"gamma series: {terms} terms above {truncation_bound}")
        return estimate

    # ========== Facet Matrix ==========

    def facet_matrix(self, n: int) -> FacetMatrix:
        """
        Rows are the facets w_i, each stored as the columns of its unitary
        components among the prime powers <= n.

        Raises:
            CapacityError: n above the materialization limit
        """
        if n < 1:
            raise DomainError(f"[n] needs n >= 1, got {n}")
        if n > Config.MATERIALIZE_LIMIT:
            raise CapacityError(f"facet matrix of [{n}] exceeds the materialization limit {Config.MATERIALIZE_LIMIT}")
        prime_powers = self.arith.prime_powers_upto(n)
        column = {q: j for j, q in enumerate(prime_powers)}
        facets = list(self.enumerate_facets(n))
        rows = [
            tuple(sorted(column[q] for q in self.arith.component_values(w)))
            for w in facets
        ]
        return FacetMatrix(n=n, prime_powers=prime_powers, facets=facets, rows=rows)

    def write_matrix_csv(self, matrix: FacetMatrix, path: Path) -> Path:
        """Header "w, q_1, ..., q_r"; one row "w_i, a_i1, ..., a_ir" per facet."""
        frame = pd.DataFrame(matrix.dense(), columns=[str(q) for q in matrix.prime_powers])
        frame.insert(0, "w", matrix.facets)
        path = Path(path)
        frame.to_csv(path, index=False)
        logger.info(f"Wrote {matrix.ell}x{matrix.r} facet matrix to {path}")
        return path

    # ========== Maximization ==========

    def evaluate_interval(self, n: int, g: MultiplicativeFunction) -> List[Fraction]:
        """
        g(0..n) by the multiplicative sieve g(m) = g(m/q) g(q), q the
        unitary component of the smallest prime of m. Index 0 is unused.
        """
        if n > Config.MATERIALIZE_LIMIT:
            raise CapacityError(f"evaluating g on [{n}] exceeds the materialization limit {Config.MATERIALIZE_LIMIT}")
        values = [Fraction(0)] * (n + 1)
        if n >= 1:
            values[1] = Fraction(1)
        table = self.arith.spf_table(n)
        for m in range(2, n + 1):
            p = table.smallest_factor(m)
            q, rest = p, m // p
            while rest % p == 0:
                q *= p
                rest //= p
            values[m] = values[rest] * g.value_at(q)
        return values

    def require_log_positive(self, g: MultiplicativeFunction, n: int) -> List[int]:
        """
        Raises:
            DomainError: g(q) < 1 for some prime power q <= n (named)
        """
        prime_powers = self.arith.prime_powers_upto(n)
        for q in prime_powers:
            value = g.value_at(q)
            if value < 1:
                raise DomainError(
                    f"g is not log-positive: g({q}) = {value} < 1, "
                    f"so the maximum need not lie on a facet; use --strategy naive"
                )
        return prime_powers

    def maximize_on_interval(self, n: int, g: MultiplicativeFunction, strategy: str = "facet") -> MaximizationResult:
        """
        max of g over [n] and the smallest m attaining it.

        The facet strategy evaluates g on the facets only. Its argmax is the
        smallest, over maximal facets, of the product of the vertices where
        g exceeds 1.
        """
        if n < 1:
            raise DomainError(f"[n] needs n >= 1, got {n}")
        if strategy == "naive":
            values = self.evaluate_interval(n, g)
            best = max(values[1:])
            return MaximizationResult(
                n=n, strategy=strategy, argmax=values.index(best, 1), value=best, evaluations=n
            )
        if strategy != "facet":
            raise DomainError(f"unknown strategy {strategy!r}; known: {', '.join(STRATEGIES)}")

        prime_powers = self.require_log_positive(g, n)
        best: Optional[Fraction] = None
        argmax = 1
        evaluations = len(prime_powers)
        for w in self.enumerate_facets(n):
            evaluations += 1
            components = self.arith.component_values(w)
            value = Fraction(1)
            for q in components:
                value *= g.value_at(q)
            if best is not None and value < best:
                continue
            reduced = 1
            for q in components:
                if g.value_at(q) > 1:
                    reduced *= q
            if best is None or value > best:
                best, argmax = value, reduced
            else:
                argmax = min(argmax, reduced)
        return MaximizationResult(n=n, strategy=strategy, argmax=argmax, value=best, evaluations=evaluations)

    # ========== Separating Functions ==========

    def max_face_size(self, n: int) -> int:
        """Largest number of pairwise coprime prime powers with product <= n."""
        k, primorial, p = 0, 1, 2
        while primorial * p <= n:
            primorial *= p
            k += 1
            p = int(nextprime(p))
        return k

    def separating_function(self, w: int, n: int, epsilon: Optional[Fraction] = None) -> MultiplicativeFunction:
        """
        h = 2 on the vertices of the facet w and 1 + epsilon on every other
        prime power <= n; h attains its maximum over [n] only at w.

        Raises:
            DomainError: w is not a facet of Delta([n]), or epsilon is too
                large for the separation ((1 + epsilon)^k < 2, k the largest
                face size)
        """
        epsilon = Config.HXS_EPSILON if epsilon is None else Fraction(epsilon)
        if not self.is_facet_in_interval(w, n):
            raise DomainError(f"{w} is not a facet of Delta([{n}])")
        k = self.max_face_size(n)
        if epsilon < 0 or (1 + epsilon) ** k >= 2:
            raise DomainError(f"epsilon = {epsilon} does not separate: need 0 <= epsilon and (1+epsilon)^{k} < 2")
        inside = set(self.arith.component_values(w))
        values = {
            q: Fraction(2) if q in inside else 1 + epsilon
            for q in self.arith.prime_powers_upto(n)
        }
        return MultiplicativeFunction(values=values, name=f"separating:{w}")

    def separating_pairs(
        self, n: int, epsilon: Optional[Fraction] = None,
    ) -> Iterator[Tuple[int, MultiplicativeFunction]]:
        for w in self.enumerate_facets(n):
            yield w, self.separating_function(w, n, epsilon)
