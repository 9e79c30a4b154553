"""Module defining autocorrelation samples and JobSettings"""

from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from weak_model_sets.core_models import BaseJobSettings


class AutocorrSample(BaseModel):
    """One autocorrelation coefficient eta(x)."""

    model_config = ConfigDict(frozen=True)

    shift: Tuple[int, ...]
    value: float = Field(..., ge=0)
    radius_used: Optional[float] = None
    pair_count: Optional[int] = None


class AutocorrJobSettings(BaseJobSettings):
    """Settings for a table of empirical autocorrelation coefficients."""

    job_settings_name: Literal["Autocorr"] = "Autocorr"
    shifts: List[Tuple[int, ...]] = []
    radius: float = Field(default=1000, gt=0)
    closed_form: bool = Field(
        default=False,
        description="Add the closed form column (visible points only).",
    )
