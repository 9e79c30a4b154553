"""Module defining quadratic integers, prime ideals, embedded points and
JobSettings"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import Field

from weak_model_sets.core_models import BaseJobSettings

SQRT2 = math.sqrt(2)


@dataclass(frozen=True)
class QuadInt:
    """The integer a + b sqrt(2) of Z[sqrt 2]."""

    a: int
    b: int

    @classmethod
    def from_int(cls, x: int) -> "QuadInt":
        """Embed a rational integer."""
        return cls(int(x), 0)

    @staticmethod
    def _coerce(other: Union[int, "QuadInt"]) -> Optional["QuadInt"]:
        """Integers become QuadInt, anything else None."""
        if isinstance(other, QuadInt):
            return other
        if isinstance(other, int):
            return QuadInt.from_int(other)
        return None

    def __str__(self) -> str:
        """E.g. 3+1√2."""
        return f"{self.a}{self.b:+}√2"

    def __add__(self, other: Union[int, "QuadInt"]) -> "QuadInt":
        """Sum."""
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QuadInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> "QuadInt":
        """Negation."""
        return QuadInt(-self.a, -self.b)

    def __sub__(self, other: Union[int, "QuadInt"]) -> "QuadInt":
        """Difference."""
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Union[int, "QuadInt"]) -> "QuadInt":
        """Reflected difference."""
        return (-self) + other

    def __mul__(self, other: Union[int, "QuadInt"]) -> "QuadInt":
        """Product."""
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QuadInt(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "QuadInt":
        """Nonnegative power by repeated squaring."""
        if exponent < 0:
            raise ValueError("Only nonnegative powers stay integral")
        result, base = QuadInt(1, 0), self
        while exponent:
            if exponent & 1:
                result *= base
            base *= base
            exponent >>= 1
        return result

    def conjugate(self) -> "QuadInt":
        """The Galois conjugate a - b sqrt(2)."""
        return QuadInt(self.a, -self.b)

    def norm(self) -> int:
        """a^2 - 2 b^2."""
        return self.a * self.a - 2 * self.b * self.b

    def trace(self) -> int:
        """2 a."""
        return 2 * self.a

    def is_zero(self) -> bool:
        """True for 0."""
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        """True when the norm is +1 or -1."""
        return abs(self.norm()) == 1

    def exact_div(self, other: "QuadInt") -> Optional["QuadInt"]:
        """
        Quotient in Z[sqrt 2], if it exists.
        Parameters
        ----------
        other : QuadInt
          Nonzero divisor.

        Returns
        -------
        Optional[QuadInt]
          None when other does not divide self.

        """
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("Division by zero in Z[sqrt 2]")
        product = self * other.conjugate()
        if product.a % n or product.b % n:
            return None
        return QuadInt(product.a // n, product.b // n)

    def round_div(self, other: "QuadInt") -> "QuadInt":
        """Quotient rounded componentwise, for Euclidean division."""
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("Division by zero in Z[sqrt 2]")
        product = self * other.conjugate()
        return QuadInt(
            round(Fraction(product.a, n)), round(Fraction(product.b, n))
        )

    def embedded(self) -> Tuple[float, float]:
        """The real pair (a + b sqrt 2, a - b sqrt 2)."""
        return self.a + self.b * SQRT2, self.a - self.b * SQRT2


UNIT = QuadInt(1, 1)


@dataclass(frozen=True)
class PrimeIdealZr2:
    """A prime ideal of Z[sqrt 2] given by a generator."""

    kind: Literal["ramified", "split", "inert"]
    p: int
    generator: QuadInt
    norm: int

    def __str__(self) -> str:
        """E.g. (3+1√2)."""
        return f"({self.generator})"


@dataclass(frozen=True)
class EmbeddedPoint:
    """The image (x, x') of a number under the Minkowski embedding."""

    x: float
    x_conjugate: float

    @property
    def coordinates(self) -> Tuple[float, float]:
        """The pair (x, x')."""
        return self.x, self.x_conjugate


@dataclass(frozen=True)
class KElement:
    """The element r + s sqrt(2) of Q(sqrt 2)."""

    r: Fraction
    s: Fraction

    @classmethod
    def parse(cls, r: Union[str, int, Fraction], s: Union[str, int, Fraction]):
        """Build from exact rationals such as '1/4'."""
        return cls(Fraction(r), Fraction(s))

    def is_zero(self) -> bool:
        """True for 0."""
        return self.r == 0 and self.s == 0

    def embedded(self) -> Tuple[float, float]:
        """The real pair (r + s sqrt 2, r - s sqrt 2)."""
        return (
            float(self.r) + float(self.s) * SQRT2,
            float(self.r) - float(self.s) * SQRT2,
        )

    def __str__(self) -> str:
        """E.g. 1/4+0√2."""
        sign = "-" if self.s < 0 else "+"
        return f"{self.r}{sign}{abs(self.s)}√2"


@dataclass(frozen=True)
class DenominatorIdeal:
    """An integral ideal by generator and prime ideal factorisation."""

    generator: QuadInt
    factors: Tuple[Tuple[PrimeIdealZr2, int], ...]

    @property
    def norm(self) -> int:
        """Absolute norm of the ideal."""
        return abs(self.generator.norm())

    def exponents(self) -> dict:
        """Prime ideal generator mapped to its exponent."""
        return {ideal.generator: e for ideal, e in self.factors}

    def is_power_free(self, power: int) -> bool:
        """True when no prime ideal appears with exponent power or more."""
        return all(e < power for _, e in self.factors)


@dataclass(frozen=True)
class NfAtom:
    """A Bragg peak of an embedded k-free set, at j(element)."""

    element: KElement
    denominator: DenominatorIdeal
    intensity: float

    @property
    def plane_coordinates(self) -> Tuple[float, float]:
        """Position in the embedding plane."""
        return self.element.embedded()

    def csv_row(self) -> dict:
        """Columns of the atom table, with the exact preimage."""
        x, x_conjugate = self.plane_coordinates
        return {
            "x": x,
            "x_conjugate": x_conjugate,
            "r": str(self.element.r),
            "s": str(self.element.s),
            "denominator_norm": self.denominator.norm,
            "intensity": self.intensity,
        }


class NfGenerateJobSettings(BaseJobSettings):
    """Settings to list the embedded k-free integers in a disk."""

    job_settings_name: Literal["NfGenerate"] = "NfGenerate"
    power: int = Field(default=2, ge=2)
    radius: float = Field(default=20.0, gt=0)


class NfZetaJobSettings(BaseJobSettings):
    """Settings to evaluate the Dedekind zeta function of Q(sqrt 2)."""

    job_settings_name: Literal["NfZeta"] = "NfZeta"
    points: List[float] = Field(default=[2.0])


class NfDiffractJobSettings(BaseJobSettings):
    """Settings to list or draw the Bragg peaks of an embedded k-free
    set."""

    job_settings_name: Literal["NfDiffract"] = "NfDiffract"
    power: int = Field(default=2, ge=2)
    lower: Tuple[float, float] = (-1.0, -1.0)
    upper: Tuple[float, float] = (1.0, 1.0)
    threshold: float = Field(default=1e-6, gt=0, le=1)
    output_format: Literal["csv", "svg"] = "csv"
    style: Literal["area_proportional", "quartic_rescale"] = (
        "quartic_rescale"
    )


@dataclass(frozen=True, eq=False)
class NfPointSet:
    """Embedded k-free integers of a disk, with exact preimages."""

    power: int
    radius: float
    a: np.ndarray
    b: np.ndarray

    def __len__(self) -> int:
        """Number of points."""
        return len(self.a)

    def elements(self) -> List[QuadInt]:
        """Preimages in Z[sqrt 2]."""
        pairs = zip(self.a.tolist(), self.b.tolist())
        return [QuadInt(a, b) for a, b in pairs]

    def embedded(self) -> np.ndarray:
        """Points (x, x') as an (N, 2) array."""
        return np.stack([self.a + self.b * SQRT2, self.a - self.b * SQRT2], 1)

    def __contains__(self, alpha: Any) -> bool:
        """Membership of a QuadInt."""
        if not isinstance(alpha, QuadInt):
            return False
        return bool(np.any((self.a == alpha.a) & (self.b == alpha.b)))
