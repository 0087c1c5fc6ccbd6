from typing import Optional, List, Tuple, FrozenSet
from pydantic import BaseModel, Field, ConfigDict, computed_field, model_validator

from app.schemas.arith import PrimePower


# ========== Unitary Ideal Schemas ==========

class UnitaryIdeal(BaseModel):
    """
    A finite set S of positive integers closed under unitary divisors.

    Large intervals [n] are kept unmaterialized: ``elements`` is None and
    ``interval_bound`` holds n; only the vertex list is stored.
    """
    elements: Optional[FrozenSet[int]] = None
    interval_bound: Optional[int] = Field(None, ge=1)
    vertex_list: List[PrimePower] = []

    @model_validator(mode="after")
    def check_shape(self):
        if self.elements is None and self.interval_bound is None:
            raise ValueError("an ideal needs either its elements or an interval bound")
        if self.elements is not None and any(e < 1 for e in self.elements):
            raise ValueError("elements must be positive integers")
        return self

    @computed_field
    @property
    def r(self) -> int:
        return len(self.vertex_list)

    @property
    def size(self) -> int:
        if self.elements is not None:
            return len(self.elements)
        return self.interval_bound or 0

    @property
    def is_materialized(self) -> bool:
        return self.elements is not None

    @property
    def vertex_values(self) -> List[int]:
        return [q.value for q in self.vertex_list]

    def __contains__(self, m: int) -> bool:
        if self.elements is not None:
            return m in self.elements
        return 1 <= m <= (self.interval_bound or 0)

    def sorted_elements(self) -> List[int]:
        if self.elements is not None:
            return sorted(self.elements)
        return list(range(1, (self.interval_bound or 0) + 1))


class ClosureCheck(BaseModel):
    """Result of the closure test of a candidate set."""
    closed: bool
    witness: Optional[Tuple[int, int]] = Field(
        None, description="(s, d): d is a unitary divisor of s missing from the set"
    )


# ========== Complex Schemas ==========

class Face(BaseModel):
    vertex_indices: Tuple[int, ...]
    vertex_values: Optional[Tuple[int, ...]] = None
    integer_value: Optional[int] = None

    model_config = ConfigDict(frozen=True)

    @property
    def dimension(self) -> int:
        return len(self.vertex_indices) - 1


class SimplicialComplex(BaseModel):
    """
    A downward-closed family of faces on ``vertex_count`` vertices.

    Faces are sorted tuples of 0-based positions into ``vertices``. The
    labels in ``vertices`` are prime-power values for complexes built from
    an ideal, and 1..r for abstract complexes.
    """
    vertices: List[int]
    faces: FrozenSet[Tuple[int, ...]]

    @model_validator(mode="after")
    def check_faces(self):
        r = len(self.vertices)
        if () not in self.faces:
            raise ValueError("a complex always contains the empty face")
        for face in self.faces:
            if any(i < 0 or i >= r for i in face):
                raise ValueError(f"face {face} uses a vertex outside 0..{r - 1}")
            if list(face) != sorted(set(face)):
                raise ValueError(f"face {face} must be a strictly increasing tuple")
        return self

    @computed_field
    @property
    def vertex_count(self) -> int:
        return len(self.vertices)


class FVector(BaseModel):
    """(f_0, ..., f_{r-1}); f_{-1} = 1 is implicit."""
    entries: List[int]

    @property
    def face_count(self) -> int:
        return 1 + sum(self.entries)


# ========== Import / Export Schemas ==========

class IdealDocument(BaseModel):
    elements: List[int]


class ComplexDocument(BaseModel):
    vertices: List[int]
    facets: List[List[int]]


# ========== Report Schemas ==========

class IdealSummary(BaseModel):
    elements: List[int]
    vertices: List[int]
    r: int


class ComplexSummary(BaseModel):
    vertices: List[int]
    f_vector: List[int]
    facets: List[int] = Field(..., description="integer values of the facets")
