"""Module defining rational points, diffraction atoms and JobSettings"""

import math
from fractions import Fraction
from functools import reduce
from typing import Any, List, Literal, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from weak_model_sets.core_models import BaseJobSettings


class RationalPoint(BaseModel):
    """A point numerator / denominator of Q^n in lowest terms, so that the
    denominator is the least d with d * point in Z^n."""

    model_config = ConfigDict(frozen=True)

    numerator: Tuple[int, ...]
    denominator: int = Field(default=1, ge=1)

    @model_validator(mode="before")
    @classmethod
    def reduce_fraction(cls, data: Any) -> Any:
        """Divide out the common factor of numerators and denominator."""
        if isinstance(data, dict) and "numerator" in data:
            numerator = tuple(int(a) for a in data["numerator"])
            denominator = int(data.get("denominator", 1))
            g = reduce(math.gcd, numerator, denominator)
            if g > 1:
                numerator = tuple(a // g for a in numerator)
                denominator //= g
            data = {"numerator": numerator, "denominator": denominator}
        return data

    @classmethod
    def from_fractions(
        cls, values: Sequence[Union[Fraction, int, str]]
    ) -> "RationalPoint":
        """Build from exact coordinates such as Fraction(1, 2) or '1/3'."""
        fractions = [Fraction(v) for v in values]
        denominator = reduce(
            lambda a, b: a * b // math.gcd(a, b),
            (f.denominator for f in fractions),
            1,
        )
        return cls(
            numerator=tuple(int(f * denominator) for f in fractions),
            denominator=denominator,
        )

    @property
    def dimension(self) -> int:
        """Number of coordinates."""
        return len(self.numerator)

    @property
    def coordinates(self) -> Tuple[Fraction, ...]:
        """Exact coordinates."""
        return tuple(Fraction(a, self.denominator) for a in self.numerator)

    def shifted(self, v: Sequence[int]) -> "RationalPoint":
        """Translate by an integer vector."""
        return RationalPoint(
            numerator=tuple(
                a + self.denominator * int(c)
                for a, c in zip(self.numerator, v)
            ),
            denominator=self.denominator,
        )

    def __str__(self) -> str:
        """Coordinates as a comma-joined list of fractions."""
        return ",".join(str(c) for c in self.coordinates)


class SpectralWindow(BaseModel):
    """A box of R^n. Upper bounds are closed unless closed_upper is
    False."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lower: Tuple[Fraction, ...]
    upper: Tuple[Fraction, ...]
    closed_upper: bool = True

    @model_validator(mode="before")
    @classmethod
    def exact_bounds(cls, data: Any) -> Any:
        """Store bounds as exact fractions."""
        if isinstance(data, dict):
            data = dict(data)
            for key in ("lower", "upper"):
                if key in data:
                    data[key] = tuple(Fraction(str(v)) for v in data[key])
        return data

    @model_validator(mode="after")
    def check_dimension(self):
        """Bounds share a dimension."""
        if len(self.lower) != len(self.upper):
            raise ValueError("Spectral window bounds differ in dimension")
        return self

    @property
    def dimension(self) -> int:
        """Number of axes."""
        return len(self.lower)

    def numerator_ranges(self, denominator: int) -> List[range]:
        """Per axis, the numerators a with a / denominator in the box."""
        ranges = []
        for lo, hi in zip(self.lower, self.upper):
            start = math.ceil(lo * denominator)
            if self.closed_upper:
                stop = math.floor(hi * denominator)
            else:
                stop = math.ceil(hi * denominator) - 1
            ranges.append(range(start, stop + 1))
        return ranges


class DiffractionAtom(BaseModel):
    """A Bragg peak: position and intensity."""

    model_config = ConfigDict(frozen=True)

    position: RationalPoint
    intensity: float = Field(..., ge=0)

    @property
    def plane_coordinates(self) -> Tuple[float, ...]:
        """Position as floats for drawing."""
        return tuple(float(c) for c in self.position.coordinates)

    def csv_row(self) -> dict:
        """Columns of the atom table."""
        row = {
            f"k{i}": str(c) for i, c in enumerate(self.position.coordinates)
        }
        row["denominator"] = self.position.denominator
        row["intensity"] = self.intensity
        return row


class DiffractJobSettings(BaseJobSettings):
    """Settings to list the Bragg peaks inside a spectral window."""

    job_settings_name: Literal["Diffract"] = "Diffract"
    lower: Tuple[str, ...] = ("0", "0")
    upper: Tuple[str, ...] = ("2", "2")
    closed_upper: bool = True
    threshold: float = Field(default=1e-6, gt=0, le=1)
    output_format: Literal["csv", "svg"] = "csv"
    style: Literal["area_proportional", "quartic_rescale"] = (
        "area_proportional"
    )

    def spectral_window(self) -> SpectralWindow:
        """The window described by the settings."""
        return SpectralWindow(
            lower=self.lower, upper=self.upper, closed_upper=self.closed_upper
        )


class FigureJobSettings(DiffractJobSettings):
    """Settings to draw the Bragg peaks of a spectral window."""

    job_settings_name: Literal["Figure"] = "Figure"
    output_format: Literal["csv", "svg"] = "svg"
