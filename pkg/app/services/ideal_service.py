import json
import logging
from itertools import combinations
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple
from sympy import prime

from app.config import Config
from app.schemas.arith import PrimePower
from app.schemas.ideal import (
    ClosureCheck, ComplexDocument, Face, FVector, IdealDocument, SimplicialComplex, UnitaryIdeal,
)
from app.schemas.multfunc import is_prime_power
from app.services.arith_service import ArithmeticService
from app.utils.exceptions import CapacityError, DomainError

logger = logging.getLogger(__name__)

FaceSet = FrozenSet[Tuple[int, ...]]


def downward_closure(facets: Iterable[Sequence[int]]) -> FaceSet:
    faces = {()}
    for facet in facets:
        facet = tuple(sorted(set(facet)))
        for k in range(1, len(facet) + 1):
            faces.update(combinations(facet, k))
    return frozenset(faces)


def is_downward_closed(faces: FaceSet) -> bool:
    return all(
        face[:i] + face[i + 1:] in faces
        for face in faces
        for i in range(len(face))
    )


class IdealService:
    """
    Unitary ideals S, their complexes Delta(S), f-vectors and facets, and
    the realization of abstract complexes as ideals.
    """

    def __init__(self, arith: ArithmeticService, materialize_limit: Optional[int] = None):
        self.arith = arith
        self.materialize_limit = materialize_limit or Config.MATERIALIZE_LIMIT

    # ========== Ideals ==========

    def _vertex_list(self, values: Iterable[int]) -> List[PrimePower]:
        vertices = []
        for q in sorted(values):
            (component,) = self.arith.unitary_components(q)
            vertices.append(component)
        return vertices

    def from_elements(self, elements: Iterable[int]) -> UnitaryIdeal:
        """
        Wrap a set already known to be closed.

        Raises:
            DomainError: the set is not a unitary ideal
        """
        elements = frozenset(elements)
        check = self.is_unitary_ideal(elements)
        if not check.closed:
            s, d = check.witness
            raise DomainError(f"not a unitary ideal: {d} is a unitary divisor of {s} but missing")
        return UnitaryIdeal(
            elements=elements,
            vertex_list=self._vertex_list(e for e in elements if is_prime_power(e)),
        )

    def close_under_unitary_divisors(self, generators: Iterable[int]) -> UnitaryIdeal:
        """Smallest unitary ideal containing the generators."""
        elements = set()
        for g in generators:
            if g < 1:
                raise DomainError(f"generators must be positive integers, got {g}")
            elements.update(self.arith.unitary_divisors(g))
        vertices = [q for q in elements if q > 1 and len(self.arith.component_values(q)) == 1]
        return UnitaryIdeal(elements=frozenset(elements), vertex_list=self._vertex_list(vertices))

    def interval_ideal(self, n: int) -> UnitaryIdeal:
        """
        The ideal [n] = {1, ..., n}. Elements are stored only when n is within
        the materialization limit; the vertex list is always built.
        """
        if n < 1:
            raise DomainError(f"[n] needs n >= 1, got {n}")
        vertex_list = [
            self.arith.unitary_components(q)[0] for q in self.arith.prime_powers_upto(n)
        ]
        if n > self.materialize_limit:
            logger.info(f"[{n}] kept unmaterialized ({len(vertex_list)} vertices)")
            return UnitaryIdeal.model_construct(
                elements=None, interval_bound=n, vertex_list=vertex_list
            )
        return UnitaryIdeal(
            elements=frozenset(range(1, n + 1)), interval_bound=n, vertex_list=vertex_list
        )

    def is_unitary_ideal(self, candidate: Iterable[int]) -> ClosureCheck:
        """
        Closure test. The witness is the first missing unitary divisor d of
        the smallest s that has one; within s, divisors d > 1 are tried in
        ascending order before d = 1.
        """
        members = set(candidate)
        for s in sorted(members):
            if s < 1:
                raise DomainError(f"ideals contain positive integers only, got {s}")
            divisors = self.arith.unitary_divisors(s)
            for d in divisors[1:] + divisors[:1]:
                if d not in members:
                    return ClosureCheck(closed=False, witness=(s, d))
        return ClosureCheck(closed=True)

    # ========== Complexes ==========

    def complex_of(self, ideal: UnitaryIdeal) -> SimplicialComplex:
        """
        Build Delta(S): one face per element of S, the face of s being the
        positions of its unitary components in the vertex list.

        Raises:
            CapacityError: S is unmaterialized or larger than the materialization limit
        """
        if not ideal.is_materialized or ideal.size > self.materialize_limit:
            raise CapacityError(
                f"ideal of size {ideal.size} exceeds the materialization limit "
                f"{self.materialize_limit}; stream facets of [n] instead"
            )
        position: Dict[int, int] = {q.value: i for i, q in enumerate(ideal.vertex_list)}
        faces = set()
        for s in ideal.elements:
            try:
                faces.add(tuple(sorted(position[q] for q in self.arith.component_values(s))))
            except KeyError as exc:
                raise DomainError(f"{s} has unitary component {exc.args[0]} outside S") from exc
        return SimplicialComplex.model_construct(
            vertices=ideal.vertex_values, faces=frozenset(faces)
        )

    def from_facets(self, vertices: Sequence[int], facets: Iterable[Sequence[int]]) -> SimplicialComplex:
        return SimplicialComplex(vertices=list(vertices), faces=downward_closure(facets))

    def abstract_complex(self, r: int, faces: Iterable[Sequence[int]]) -> SimplicialComplex:
        """
        Complex on vertices labelled 1..r from an explicit face family.

        Raises:
            DomainError: the family is not downward closed
        """
        face_set = frozenset(tuple(sorted(f)) for f in faces) | {()}
        if not is_downward_closed(face_set):
            raise DomainError("face family is not downward closed")
        return SimplicialComplex(vertices=list(range(1, r + 1)), faces=face_set)

    def f_vector(self, complex_: SimplicialComplex) -> FVector:
        entries = [0] * complex_.vertex_count
        for face in complex_.faces:
            if face:
                entries[len(face) - 1] += 1
        return FVector(entries=entries)

    def facets(self, complex_: SimplicialComplex) -> List[Face]:
        """Inclusion-maximal faces, ordered by integer value (or by indices for abstract complexes)."""
        covered = set()
        for face in complex_.faces:
            for i in range(len(face)):
                covered.add(face[:i] + face[i + 1:])
        maximal = [face for face in complex_.faces if face not in covered]
        primes = self._vertex_primes(complex_)
        result = [self.make_face(complex_, face, primes) for face in maximal]
        return sorted(result, key=lambda f: (f.integer_value or 0, f.vertex_indices))

    def make_face(
        self, complex_: SimplicialComplex, face: Tuple[int, ...], primes: Optional[List[int]] = None
    ) -> Face:
        """The integer value is the product of the labels when they are powers of distinct primes."""
        values = tuple(complex_.vertices[i] for i in face)
        integer_value = None
        if primes is None:
            primes = self._vertex_primes(complex_)
        if primes is not None and len({primes[i] for i in face}) == len(face):
            integer_value = 1
            for q in values:
                integer_value *= q
        return Face.model_construct(
            vertex_indices=face, vertex_values=values, integer_value=integer_value
        )

    def _vertex_primes(self, complex_: SimplicialComplex) -> Optional[List[int]]:
        """The prime of each label, or None unless every label is a prime power."""
        if not all(is_prime_power(q) for q in complex_.vertices):
            return None
        return [self.arith.unitary_components(q)[0].prime for q in complex_.vertices]

    # ========== Realization ==========

    def realize(self, complex_: SimplicialComplex) -> UnitaryIdeal:
        """
        Map vertex i to the (i+1)-th prime and every face to the product of
        its primes.

        Raises:
            DomainError: the family is not downward closed or misses a singleton
        """
        if not is_downward_closed(complex_.faces):
            raise DomainError("cannot realize a family that is not downward closed")
        missing = [i for i in range(complex_.vertex_count) if (i,) not in complex_.faces]
        if missing:
            raise DomainError(f"vertex {missing[0]} is not a face; every singleton must be present")
        primes = [prime(i + 1) for i in range(complex_.vertex_count)]
        elements = set()
        for face in complex_.faces:
            product = 1
            for i in face:
                product *= primes[i]
            elements.add(product)
        return UnitaryIdeal(
            elements=frozenset(elements),
            vertex_list=[PrimePower(prime=p, exponent=1) for p in primes],
        )

    def enumerate_complexes(self, r: int) -> Iterator[FaceSet]:
        """
        Every complex on r labelled vertices containing all singletons.

        Candidate faces are decided in order of size; a face may enter only
        when all its codimension-one faces are present, so each complex is
        produced exactly once.
        """
        if r < 0:
            raise DomainError(f"vertex count must be non-negative, got {r}")
        base = {()} | {(i,) for i in range(r)}
        candidates = [
            c for k in range(2, r + 1) for c in combinations(range(r), k)
        ]

        def walk(position: int, faces: set) -> Iterator[FaceSet]:
            if position == len(candidates):
                yield frozenset(faces)
                return
            candidate = candidates[position]
            yield from walk(position + 1, faces)
            if all(candidate[:i] + candidate[i + 1:] in faces for i in range(len(candidate))):
                faces.add(candidate)
                yield from walk(position + 1, faces)
                faces.remove(candidate)

        yield from walk(0, set(base))

    # ========== Import / Export ==========

    def ideal_to_document(self, ideal: UnitaryIdeal) -> IdealDocument:
        return IdealDocument(elements=ideal.sorted_elements())

    def load_ideal(self, path: Path) -> UnitaryIdeal:
        document = IdealDocument.model_validate(json.loads(Path(path).read_text()))
        return self.from_elements(document.elements)

    def complex_to_document(self, complex_: SimplicialComplex) -> ComplexDocument:
        return ComplexDocument(
            vertices=list(complex_.vertices),
            facets=[list(f.vertex_indices) for f in self.facets(complex_)],
        )

    def load_complex(self, path: Path) -> SimplicialComplex:
        document = ComplexDocument.model_validate(json.loads(Path(path).read_text()))
        return self.from_facets(document.vertices, document.facets)

    def facet_lines(self, complex_: SimplicialComplex) -> str:
        """Newline-delimited integer values of the facets."""
        return "".join(f"{f.integer_value}\n" for f in self.facets(complex_))
