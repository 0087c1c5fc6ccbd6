from fractions import Fraction
from typing import Dict, List, Optional, Tuple
from pydantic import BaseModel, Field, computed_field, field_validator, model_validator

# Faces in this module are tuples of 1-based vertex indices: (1, 3) is v1 v3.
FaceTuple = Tuple[int, ...]


def face_label(face: FaceTuple) -> str:
    return "".join(str(i) for i in face) if face and max(face) < 10 else "{" + ",".join(map(str, face)) + "}"


# ========== Total Order Schemas ==========

class TotalOrder(BaseModel):
    """A total order on a family of faces, listed smallest first."""
    r: int = Field(..., ge=0)
    sequence: List[FaceTuple]
    vertices: Optional[List[int]] = Field(None, description="labels of v1..vr, when known")

    @model_validator(mode="after")
    def check_sequence(self):
        if len(set(self.sequence)) != len(self.sequence):
            raise ValueError("an order lists each face exactly once")
        for face in self.sequence:
            if list(face) != sorted(set(face)) or any(i < 1 or i > self.r for i in face):
                raise ValueError(f"face {face} is not an increasing tuple over 1..{self.r}")
        if self.vertices is not None and len(self.vertices) != self.r:
            raise ValueError("vertices must label exactly r vertices")
        return self

    def labels(self) -> List[str]:
        return [face_label(f) for f in self.sequence]


class WeightVector(BaseModel):
    weights: List[Fraction]

    @field_validator("weights")
    @classmethod
    def check_positive(cls, v):
        if any(w <= 0 for w in v):
            raise ValueError("weights must be strictly positive")
        return v

    def weight_of(self, face: FaceTuple) -> Fraction:
        return sum((self.weights[i - 1] for i in face), Fraction(0))


class StrictInequality(BaseModel):
    """sum of w over ``smaller`` < sum of w over ``larger``."""
    smaller: FaceTuple
    larger: FaceTuple

    def __str__(self) -> str:
        lhs = " + ".join(f"w{i}" for i in self.smaller) or "0"
        rhs = " + ".join(f"w{i}" for i in self.larger) or "0"
        return f"{lhs} < {rhs}"


class Infeasible(BaseModel):
    """No positive weights realize the order; ``conflicts`` is a minimal contradictory subset."""
    conflicts: List[StrictInequality]
    sorted_constraint: bool = False


class CoherenceResult(BaseModel):
    feasible: bool
    order: TotalOrder
    weights: Optional[WeightVector] = None
    function: Optional[Dict[int, Fraction]] = Field(
        None, description="g(v_i) = 2^{w_i} on the vertex labels, a multiplicative function inducing the order"
    )
    certificate: Optional[Infeasible] = None


# ========== Poset Schemas ==========

class CoverPoset(BaseModel):
    """
    A finite poset given by cover pairs (i, j), meaning elements[i] < elements[j].
    Comparabilities are the reflexive-transitive closure of the covers.
    """
    r: int
    elements: List[FaceTuple]
    covers: List[Tuple[int, int]]

    @model_validator(mode="after")
    def check_covers(self):
        n = len(self.elements)
        for i, j in self.covers:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise ValueError(f"cover ({i}, {j}) out of range")
        return self

    @computed_field
    @property
    def size(self) -> int:
        return len(self.elements)

    def predecessors(self) -> List[int]:
        """Bitmask of immediate predecessors of each element."""
        preds = [0] * len(self.elements)
        for i, j in self.covers:
            preds[j] |= 1 << i
        return preds


# ========== Result Schemas ==========

class TermorderCheck(BaseModel):
    holds: bool
    violation: Optional[Tuple[FaceTuple, FaceTuple, FaceTuple]] = Field(
        None,
        description="(sigma, tau, gamma): sigma < tau but sigma+gamma > tau+gamma; empty gamma flags the first axiom",
    )


class NordBound(BaseModel):
    t: int = Field(..., description="orders induced by strictly log-positive injective g")
    t_sorted: int
    linear_extensions: int
    bound: int
    holds: bool


class ImpossibilityReport(BaseModel):
    descending: List[int]
    feasible: bool
    opposing_pair: Optional[Tuple[StrictInequality, StrictInequality]] = None
    conflicts: List[StrictInequality] = []


class ExtensionCount(BaseModel):
    size: int
    linear_extensions: int


class OrderListing(BaseModel):
    r: int
    sorted_only: bool
    candidates: int
    orders: List[List[str]] = Field(..., description="face labels, smallest first")
