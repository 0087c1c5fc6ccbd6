from decimal import Decimal
from fractions import Fraction
from typing import List, Optional, Tuple
import numpy as np
from pydantic import BaseModel, Field, computed_field


# ========== Facet Matrix Schemas ==========

class FacetMatrix(BaseModel):
    """
    Exponent matrix of the facets of Delta([n]) over the prime powers <= n.

    Every entry is 0 or 1 (each unitary component of a facet has its own
    column), so rows are stored sparsely as the column positions holding a 1.
    """
    n: int = Field(..., ge=1)
    prime_powers: List[int]
    facets: List[int]
    rows: List[Tuple[int, ...]]

    @computed_field
    @property
    def r(self) -> int:
        return len(self.prime_powers)

    @computed_field
    @property
    def ell(self) -> int:
        return len(self.facets)

    def dense(self) -> np.ndarray:
        matrix = np.zeros((self.ell, self.r), dtype=np.int8)
        for i, row in enumerate(self.rows):
            matrix[i, list(row)] = 1
        return matrix


# ========== Gamma Schemas ==========

class GammaEstimate(BaseModel):
    series_value: Decimal = Field(..., description="partial sum up to the first term below the bound")
    limit: Decimal = Field(..., description="the series summed to GAMMA_PRECISION digits")
    terms_used: int
    truncation_bound: float

    def rounded(self, digits: int = 15) -> str:
        return format(self.limit, f".{digits}g")


# ========== Facet Listing and Maximization Schemas ==========

class FacetSummary(BaseModel):
    n: int
    count: int
    density: Fraction
    facets: Optional[List[int]] = None


class MaximizationResult(BaseModel):
    n: int
    strategy: str
    argmax: int = Field(..., description="smallest m <= n attaining the maximum")
    value: Fraction
    evaluations: int = Field(..., description="products formed to locate the maximum")
