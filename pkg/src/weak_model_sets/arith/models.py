"""Module defining the arithmetic value types"""

from dataclasses import dataclass
from typing import Any, Callable, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

Character = Literal["principal", "kronecker8"]


class ResidueVector(BaseModel):
    """An integer vector reduced componentwise modulo m. Coordinates are
    stored as canonical representatives in [0, m)."""

    model_config = ConfigDict(frozen=True)

    coordinates: Tuple[int, ...]
    modulus: int = Field(..., ge=1)

    @model_validator(mode="before")
    @classmethod
    def reduce_coordinates(cls, data: Any) -> Any:
        """Reduce the coordinates before they are stored."""
        if isinstance(data, dict) and "modulus" in data:
            modulus = int(data["modulus"])
            if modulus >= 1:
                data = dict(data)
                data["coordinates"] = tuple(
                    int(c) % modulus for c in data.get("coordinates", ())
                )
        return data

    @property
    def dimension(self) -> int:
        """Rank of the ambient lattice."""
        return len(self.coordinates)


@dataclass(frozen=True)
class SeriesTerm:
    """One term c * chi(p) * p^(-e) of the logarithm of an Euler factor."""

    coefficient: float
    exponent: float
    character: Character = "principal"


@dataclass(frozen=True)
class EulerFactorSpec:
    """
    Description of an infinite product over primes.

    Attributes
    ----------
    name : str
      Identifier, also used as cache key.
    factor : Callable[[np.ndarray], np.ndarray]
      Local factor evaluated on a float64 array of primes, values in (0, 1].
    decay_constant : float
      C with |1 - factor(p)| <= C p^(-s) for p >= threshold.
    decay_exponent : float
      s of the decay bound, greater than 1.
    threshold : int
      Smallest prime from which the decay bound holds.
    log_series : Optional[Callable[[int], Sequence[SeriesTerm]]]
      Terms of order j of log(factor(p)) for primes beyond the explicit
      cutoff. Enables the accelerated evaluation.
    """

    name: str
    factor: Callable[[np.ndarray], np.ndarray]
    decay_constant: float
    decay_exponent: float
    threshold: int = 2
    log_series: Optional[Callable[[int], Sequence[SeriesTerm]]] = None

    def __post_init__(self):
        """Validate the decay bound."""
        if self.decay_exponent <= 1:
            raise ValueError(
                f"Decay exponent of '{self.name}' must exceed 1, got "
                f"{self.decay_exponent}."
            )
        if self.decay_constant < 0:
            raise ValueError(
                f"Decay constant of '{self.name}' must be nonnegative."
            )


class EulerProductResult(BaseModel):
    """Value of a truncated Euler product with its certified relative
    error bound."""

    model_config = ConfigDict(frozen=True)

    value: float
    certified_bound: float = Field(..., ge=0)
    cutoff: int
    method: Literal["truncated", "accelerated", "exact"]

    @property
    def absolute_bound(self) -> float:
        """Certified absolute error."""
        return abs(self.value) * self.certified_bound
