from fractions import Fraction
from typing import List, Optional
from pydantic import BaseModel, Field, model_validator


class KozlovVertex(BaseModel):
    """f-vector of the (i-1)-skeleton of the (r-1)-simplex."""
    r: int = Field(..., ge=1)
    i: int = Field(..., ge=1)
    vector: List[int]

    @model_validator(mode="after")
    def check_length(self):
        if self.i > self.r or len(self.vector) != self.r:
            raise ValueError("vector must have length r and 1 <= i <= r")
        return self


class PsiResult(BaseModel):
    r: int
    c: Fraction
    value: Fraction
    argmax_level: int = Field(..., description="smallest i with K_i maximal")
    k_values: List[Fraction] = Field(..., description="K_1, ..., K_r")
    piecewise_value: Optional[Fraction] = None
    bruteforce_value: Optional[Fraction] = None


class SumResult(BaseModel):
    method: str
    value: Fraction
    terms: int = Field(..., description="summands (elements, f-vector entries or facet subsets)")
