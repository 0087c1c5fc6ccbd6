from typing import Any
import numpy as np
from pydantic import BaseModel, Field, ConfigDict, computed_field, model_validator
from sympy import isprime


# ========== Prime Power Schemas ==========

class PrimePower(BaseModel):
    """A vertex of a complex: p^a with p prime and a >= 1."""
    prime: int = Field(..., ge=2)
    exponent: int = Field(..., ge=1)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_prime(self):
        if not isprime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        return self

    @computed_field
    @property
    def value(self) -> int:
        return self.prime ** self.exponent

    def __str__(self) -> str:
        return f"{self.prime}^{self.exponent}"


# ========== Sieve Schemas ==========

class SpfTable(BaseModel):
    """Smallest-prime-factor table for 2..limit (entries 0 and 1 are unused)."""
    limit: int = Field(..., ge=2)
    spf: Any

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @model_validator(mode="after")
    def check_shape(self):
        if not isinstance(self.spf, np.ndarray) or self.spf.shape != (self.limit + 1,):
            raise ValueError("spf must be a numpy array of length limit + 1")
        return self

    def smallest_factor(self, m: int) -> int:
        return int(self.spf[m])
