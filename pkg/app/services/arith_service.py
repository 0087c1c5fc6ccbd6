import math
import logging
from typing import List, Optional
import numpy as np
from sympy import factorint, nextprime, primerange

from app.config import Config
from app.schemas.arith import PrimePower, SpfTable
from app.utils.exceptions import CapacityError, DomainError

logger = logging.getLogger(__name__)

# first table built on demand; grows by doubling up to Config.SIEVE_LIMIT
_INITIAL_TABLE = 1 << 16


def build_spf_table(limit: int) -> SpfTable:
    """
    Sieve the smallest prime factor of every integer in 2..limit.

    Raises:
        DomainError: limit < 2
        CapacityError: the table does not fit in memory
    """
    if limit < 2:
        raise DomainError(f"SPF table needs limit >= 2, got {limit}")
    dtype = np.int32 if limit < 2**31 else np.int64
    try:
        spf = np.zeros(limit + 1, dtype=dtype)
        for p in range(2, math.isqrt(limit) + 1):
            if spf[p] == 0:
                multiples = spf[p * p::p]
                multiples[multiples == 0] = p
        primes = np.flatnonzero(spf == 0)
        spf[primes] = primes
        spf[:2] = 0
    except MemoryError as exc:
        raise CapacityError(f"SPF table up to {limit} does not fit in memory") from exc
    spf.flags.writeable = False
    logger.info(f"Built SPF table up to {limit}")
    return SpfTable(limit=limit, spf=spf)


def smallest_prime_not_dividing(m: int) -> int:
    if m < 1:
        raise DomainError(f"expected a positive integer, got {m}")
    p = 2
    while m % p == 0:
        p = nextprime(p)
    return p


def is_unitary_divisor(d: int, m: int) -> bool:
    if d < 1 or m < 1:
        raise DomainError(f"unitary divisibility is defined on positive integers, got ({d}, {m})")
    return m % d == 0 and math.gcd(d, m // d) == 1


class ArithmeticService:
    """
    Integer kernels: unique factorization into unitary components and
    unitary divisors, backed by a lazily grown smallest-prime-factor table.

    Integers up to ``sieve_limit`` are factored by table lookups; larger ones
    by trial division with the sieved primes and sympy for any cofactor left.
    """

    def __init__(self, sieve_limit: Optional[int] = None):
        self.sieve_limit = sieve_limit or Config.SIEVE_LIMIT
        self._table: Optional[SpfTable] = None

    # ========== Sieve ==========

    def spf_table(self, at_least: int = _INITIAL_TABLE) -> SpfTable:
        """Return a table covering ``at_least`` (capped at the sieve limit)."""
        wanted = max(2, min(at_least, self.sieve_limit))
        if self._table is None or self._table.limit < wanted:
            size = self._table.limit if self._table is not None else _INITIAL_TABLE
            while size < wanted:
                size *= 2
            self._table = build_spf_table(min(size, self.sieve_limit))
        return self._table

    # ========== Factorization ==========

    def unitary_components(self, m: int) -> List[PrimePower]:
        """
        Split m into its prime powers p^a with p^a || m, sorted by prime.

        Raises:
            DomainError: m < 1
        """
        if m < 1:
            raise DomainError(f"unitary components are defined on positive integers, got {m}")
        return [
            PrimePower.model_construct(prime=p, exponent=a)
            for p, a in sorted(self._factor(m).items())
        ]

    def component_values(self, m: int) -> List[int]:
        """Values p^a of the unitary components of m, sorted by prime."""
        if m < 1:
            raise DomainError(f"unitary components are defined on positive integers, got {m}")
        return [p ** a for p, a in sorted(self._factor(m).items())]

    def _factor(self, m: int) -> dict:
        factors: dict = {}
        if m <= self.sieve_limit:
            table = self.spf_table(m)
            while m > 1:
                p = table.smallest_factor(m)
                while m % p == 0:
                    m //= p
                    factors[p] = factors.get(p, 0) + 1
            return factors

        bound = math.isqrt(m)
        for p in primerange(2, min(bound, self.sieve_limit) + 1):
            if m % p == 0:
                while m % p == 0:
                    m //= p
                    factors[p] = factors.get(p, 0) + 1
                bound = math.isqrt(m)
            if p > bound:
                break
        if m > 1:
            # cofactor has no prime factor below the sieve limit
            for p, a in factorint(m).items():
                factors[p] = factors.get(p, 0) + a
        return factors

    def primes_upto(self, n: int) -> np.ndarray:
        if n < 2:
            return np.array([], dtype=np.int64)
        if n > self.sieve_limit:
            raise CapacityError(f"primes up to {n} exceed the sieve limit {self.sieve_limit}")
        spf = self.spf_table(n).spf[2: n + 1]
        return (np.flatnonzero(spf == np.arange(2, n + 1)) + 2).astype(np.int64)

    def prime_powers_upto(self, n: int) -> List[int]:
        """Sorted values of all prime powers q <= n."""
        powers = []
        for p in self.primes_upto(n).tolist():
            q = p
            while q <= n:
                powers.append(q)
                q *= p
        return sorted(powers)

    # ========== Unitary Divisors ==========

    def is_unitary_divisor(self, d: int, m: int) -> bool:
        return is_unitary_divisor(d, m)

    def unitary_divisors(self, m: int) -> List[int]:
        """All 2^omega(m) unitary divisors of m, ascending."""
        divisors = [1]
        for q in self.component_values(m):
            divisors += [d * q for d in divisors]
        return sorted(divisors)

    def smallest_prime_not_dividing(self, m: int) -> int:
        return smallest_prime_not_dividing(m)
