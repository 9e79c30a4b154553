"""Module defining patches, frequency results and JobSettings"""

from typing import Any, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from weak_model_sets.core_models import BaseJobSettings
from weak_model_sets.pointsets.specs import ball_norm_bound


class Patch(BaseModel):
    """A finite set of lattice points inside the closed ball B_radius(0),
    stored in lexicographic order."""

    model_config = ConfigDict(frozen=True)

    radius: float = Field(..., ge=0)
    dimension: int = Field(default=2, ge=1)
    points: Tuple[Tuple[int, ...], ...] = ()

    @model_validator(mode="before")
    @classmethod
    def canonical_order(cls, data: Any) -> Any:
        """Sort and deduplicate the points."""
        if isinstance(data, dict) and "points" in data:
            data = dict(data)
            data["points"] = tuple(
                sorted({tuple(int(c) for c in x) for x in data["points"]})
            )
        return data

    @model_validator(mode="after")
    def check_points(self):
        """Points have the right dimension and lie in the ball."""
        bound = ball_norm_bound(self.radius)
        for x in self.points:
            if len(x) != self.dimension:
                raise ValueError(
                    f"Patch point {x} does not have dimension "
                    f"{self.dimension}"
                )
            if sum(c * c for c in x) > bound:
                raise ValueError(
                    f"Patch point {x} lies outside radius {self.radius}"
                )
        return self

    def __len__(self) -> int:
        """Number of points."""
        return len(self.points)

    def as_array(self) -> np.ndarray:
        """Points as an (N, n) integer array."""
        return np.asarray(self.points, dtype=np.int64).reshape(
            -1, self.dimension
        )

    def key(self) -> str:
        """Semicolon-joined points, e.g. '-1,0;0,1'."""
        return ";".join(",".join(str(c) for c in x) for x in self.points)

    @classmethod
    def parse(cls, text: str, radius: float, dimension: int = 2) -> "Patch":
        """Inverse of key."""
        points = [
            tuple(int(c) for c in item.split(","))
            for item in text.split(";")
            if item.strip()
        ]
        return cls(radius=radius, dimension=dimension, points=points)


class FrequencyResult(BaseModel):
    """A frequency or measure with its certified absolute error."""

    model_config = ConfigDict(frozen=True)

    value: float
    term_count: int = Field(..., ge=0)
    tail_error: float = Field(..., ge=0)


class FrequencyJobSettings(BaseJobSettings):
    """Settings to compute the frequency of one patch."""

    job_settings_name: Literal["Frequency"] = "Frequency"
    radius: float = Field(..., ge=0)
    points: List[Tuple[int, ...]] = []
    empirical_radius: Optional[float] = Field(
        default=None,
        gt=0,
        description="Also count occurrences in a ball of this radius.",
    )


class CensusJobSettings(BaseJobSettings):
    """Settings to count every patch occurring in a ball."""

    job_settings_name: Literal["Census"] = "Census"
    radius: float = Field(..., ge=0)
    window_radius: float = Field(..., gt=0)
    closed_form: bool = Field(
        default=False,
        description="Add the closed form frequency of each patch.",
    )


class EntropyJobSettings(BaseJobSettings):
    """Settings to evaluate the patch counting entropy."""

    job_settings_name: Literal["Entropy"] = "Entropy"
    log2: bool = False
    precision: int = Field(default=6, ge=1, le=17)
