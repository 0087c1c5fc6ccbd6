import logging
import math
import random
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, Optional, Sequence

from app.schemas.ideal import Face, UnitaryIdeal
from app.schemas.multfunc import Classification, MultiplicativeFunction, is_prime_power
from app.services.arith_service import ArithmeticService
from app.utils.exceptions import CapacityError, DomainError, NotInjectiveError

logger = logging.getLogger(__name__)

BUILTIN_NAMES = ("two_omega", "sigma_over_n", "const:<c>")


def parse_rational(text: str) -> Fraction:
    """Exact rational from "3/2", "1.25" or "2"; decimals are taken verbatim."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a rational number: {text!r}") from exc


class MultiplicativeFunctionService:
    """
    Evaluation and classification of multiplicative functions given by
    their values on prime powers.
    """

    def __init__(self, arith: ArithmeticService):
        self.arith = arith

    # ========== Evaluation ==========

    def evaluate(self, g: MultiplicativeFunction, m: int) -> Fraction:
        """
        g(m) as the product of g over the unitary components of m.

        Raises:
            UnsupportedVertexError: a component of m has no value
        """
        value = Fraction(1)
        for q in self.arith.component_values(m):
            value *= g.value_at(q)
        return value

    def evaluate_face(self, g: MultiplicativeFunction, face: Face) -> Fraction:
        if not face.vertex_indices:
            return Fraction(1)
        if face.vertex_values is not None:
            value = Fraction(1)
            for q in face.vertex_values:
                value *= g.value_at(q)
            return value
        if face.integer_value is None:
            raise DomainError(f"face {face.vertex_indices} carries no prime-power labels")
        return self.evaluate(g, face.integer_value)

    def classify(self, g: MultiplicativeFunction, ideal: UnitaryIdeal) -> Classification:
        """
        Log-positivity is read off the vertices of S; injectivity needs all
        of S evaluated, so S must be materialized.
        """
        vertex_values = [g.value_at(q) for q in ideal.vertex_values]
        if not ideal.is_materialized:
            raise CapacityError("injectivity on S needs a materialized ideal")
        try:
            self.require_injective(g, sorted(ideal.elements))
            injective = True
        except NotInjectiveError:
            injective = False
        return Classification(
            log_positive=all(v >= 1 for v in vertex_values),
            strictly_log_positive=all(v > 1 for v in vertex_values),
            injective_on_S=injective,
        )

    def require_injective(self, g: MultiplicativeFunction, values: Iterable[int]) -> Dict[int, Fraction]:
        """
        Evaluate g on ``values``.

        Raises:
            NotInjectiveError: two of them share a value (names the pair)
        """
        evaluated: Dict[int, Fraction] = {}
        owner: Dict[Fraction, int] = {}
        for m in values:
            value = self.evaluate(g, m)
            if value in owner:
                raise NotInjectiveError(owner[value], m, value)
            owner[value] = m
            evaluated[m] = value
        return evaluated

    def constant_value(self, g: MultiplicativeFunction, vertex_values: Sequence[int]) -> Optional[Fraction]:
        """The common value of g on the given prime powers, or None."""
        values = {g.value_at(q) for q in vertex_values}
        if len(values) > 1:
            return None
        return values.pop() if values else Fraction(0)

    # ========== Construction ==========

    def builtin(self, name: str) -> MultiplicativeFunction:
        """
        Built-in log-positive functions, defined on every prime power:
        two_omega (g = 2), sigma_over_n (g = sigma(q)/q), const:c (g = c).

        Raises:
            DomainError: unknown name
        """
        if name == "two_omega":
            return MultiplicativeFunction.from_rule(name, lambda q: Fraction(2))
        if name == "sigma_over_n":
            def sigma_over_n(q: int) -> Fraction:
                (component,) = self.arith.unitary_components(q)
                p = component.prime
                return Fraction(p * q - 1, q * (p - 1))
            return MultiplicativeFunction.from_rule(name, sigma_over_n)
        if name.startswith("const:"):
            c = parse_rational(name.split(":", 1)[1])
            return MultiplicativeFunction.from_rule(name, lambda q: c)
        raise DomainError(f"unknown builtin function {name!r}; known: {', '.join(BUILTIN_NAMES)}")

    def from_values(self, values: Dict[int, Fraction], name: Optional[str] = None) -> MultiplicativeFunction:
        return MultiplicativeFunction(values={q: Fraction(v) for q, v in values.items()}, name=name)

    def parse_function_text(self, text: str, name: Optional[str] = None) -> MultiplicativeFunction:
        """
        Parse lines "p^a = value" (or "q = value"); '#' starts a comment.

        Raises:
            DomainError: malformed line, non prime power, or duplicate entry
        """
        values: Dict[int, Fraction] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"line {lineno}: expected 'p^a = value', got {raw!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            try:
                if "^" in key:
                    p, a = (int(x) for x in key.split("^", 1))
                    q = p ** a
                else:
                    q = int(key)
            except ValueError as exc:
                raise DomainError(f"line {lineno}: bad prime power {key!r}") from exc
            if not is_prime_power(q):
                raise DomainError(f"line {lineno}: {key} is not a prime power")
            if q in values:
                raise DomainError(f"line {lineno}: duplicate entry for {q}")
            values[q] = parse_rational(value)
        return MultiplicativeFunction(values=values, name=name)

    def load_function_file(self, path: Path) -> MultiplicativeFunction:
        path = Path(path)
        return self.parse_function_text(path.read_text(), name=path.name)

    def resolve(self, source: str) -> MultiplicativeFunction:
        """A builtin name, or else a path to a function file."""
        if source in ("two_omega", "sigma_over_n") or source.startswith("const:"):
            return self.builtin(source)
        path = Path(source)
        if not path.exists():
            raise DomainError(f"{source!r} is neither a builtin function nor an existing file")
        return self.load_function_file(path)

    def random_function(
        self,
        vertex_values: Iterable[int],
        rng: random.Random,
        low: Fraction,
        high: Fraction,
        denominator: int = 100,
        name: str = "random",
    ) -> MultiplicativeFunction:
        """Random values on a grid of step 1/denominator in [low, high]."""
        lo, hi = math.ceil(low * denominator), math.floor(high * denominator)
        return MultiplicativeFunction(
            values={q: Fraction(rng.randint(lo, hi), denominator) for q in vertex_values},
            name=name,
        )

    def random_log_positive(
        self,
        vertex_values: Iterable[int],
        rng: random.Random,
        low: Fraction = Fraction(1),
        high: Fraction = Fraction(3),
        denominator: int = 100,
    ) -> MultiplicativeFunction:
        if low < 1:
            raise DomainError(f"log-positive values start at 1, got low = {low}")
        return self.random_function(vertex_values, rng, low, high, denominator, name="random_log_positive")

    def weights_to_function(self, weights: Sequence[Fraction], vertex_values: Sequence[int]) -> MultiplicativeFunction:
        """
        g(v_i) = 2^{w_i} after scaling the weights to integers, so that
        products of g compare exactly like sums of w.
        """
        if len(weights) != len(vertex_values):
            raise DomainError("one weight per vertex is required")
        scale = math.lcm(*(Fraction(w).denominator for w in weights))
        return MultiplicativeFunction(
            values={q: Fraction(2 ** int(Fraction(w) * scale)) for q, w in zip(vertex_values, weights)},
            name="weights",
        )
