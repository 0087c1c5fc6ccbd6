from fractions import Fraction
from typing import Callable, Dict, Optional
from pydantic import BaseModel, ConfigDict, PrivateAttr, field_validator
from sympy import perfect_power, isprime

from app.utils.exceptions import UnsupportedVertexError


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    if isprime(q):
        return True
    pp = perfect_power(q)
    return bool(pp) and isprime(pp[0])


# ========== Multiplicative Function Schemas ==========

class MultiplicativeFunction(BaseModel):
    """
    A multiplicative function given by its values on prime powers.

    ``values`` is keyed by the prime-power value p^a. Built-in functions
    carry a rule that supplies values lazily for any prime power; explicit
    values take precedence over the rule.
    """
    values: Dict[int, Fraction] = {}
    name: Optional[str] = None

    model_config = ConfigDict(frozen=True)

    _rule: Optional[Callable[[int], Fraction]] = PrivateAttr(default=None)

    @field_validator("values")
    @classmethod
    def check_support(cls, v):
        for q in v:
            if not is_prime_power(q):
                raise ValueError(f"{q} is not a prime power")
        return v

    @classmethod
    def from_rule(cls, name: str, rule: Callable[[int], Fraction]) -> "MultiplicativeFunction":
        g = cls(name=name)
        g._rule = rule
        return g

    def value_at(self, q: int) -> Fraction:
        """Value at the prime power q (q = 1 gives 1)."""
        if q == 1:
            return Fraction(1)
        if q in self.values:
            return self.values[q]
        if self._rule is not None:
            return self._rule(q)
        raise UnsupportedVertexError(q)


class Classification(BaseModel):
    log_positive: bool
    strictly_log_positive: bool
    injective_on_S: bool
