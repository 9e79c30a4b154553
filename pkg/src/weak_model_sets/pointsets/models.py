"""Module defining JobSettings for the point set commands"""

from pathlib import Path
from typing import List, Literal, Optional, Tuple

from pydantic import Field, model_validator

from weak_model_sets.core_models import BaseJobSettings
from weak_model_sets.pointsets.specs import LatticeWindow


class WindowSettingsMixin:
    """Fields describing a lattice window: a radius, or a box."""

    def window(self) -> LatticeWindow:
        """The window described by the settings."""
        if self.radius is not None:
            return LatticeWindow.ball(self.radius, self.spec.dimension)
        return LatticeWindow.box(tuple(self.lower), tuple(self.upper))


class GenerateJobSettings(WindowSettingsMixin, BaseJobSettings):
    """Settings to write the points of a window."""

    job_settings_name: Literal["Generate"] = "Generate"
    radius: Optional[float] = Field(default=None, ge=0)
    lower: Optional[Tuple[int, ...]] = None
    upper: Optional[Tuple[int, ...]] = None
    output_format: Literal["csv", "rle"] = "csv"

    @model_validator(mode="after")
    def check_window(self):
        """A radius or both box bounds are needed."""
        if self.radius is None and (self.lower is None or self.upper is None):
            raise ValueError("Give a radius or lower and upper box bounds")
        return self


class MemberJobSettings(BaseJobSettings):
    """Settings to test one lattice point."""

    job_settings_name: Literal["Member"] = "Member"
    point: Tuple[int, ...]


class AdmissibleJobSettings(BaseJobSettings):
    """Settings to test a finite set for admissibility. Points come from
    the settings or from a point set file."""

    job_settings_name: Literal["Admissible"] = "Admissible"
    points: List[Tuple[int, ...]] = []
    input_path: Optional[Path] = None


class HoleJobSettings(BaseJobSettings):
    """Settings to construct and verify a lattice of holes."""

    job_settings_name: Literal["Hole"] = "Hole"
    radius: float = Field(..., gt=0)
    translates: int = Field(default=3, ge=0)
