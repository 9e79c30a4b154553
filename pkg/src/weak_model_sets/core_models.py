"""Job responses, the settings every job shares and their JSON config
source"""

import argparse
import json
import logging
from functools import cached_property
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Type, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator
from pydantic.fields import FieldInfo
from pydantic_settings import (
    BaseSettings,
    EnvSettingsSource,
    InitSettingsSource,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)

from weak_model_sets.pointsets.specs import VISIBLE, FreenessSpec, parse_spec

CONFIG_VERSION = "1"


class JobResponse(BaseModel):
    """Standard model of a JobResponse."""

    model_config = ConfigDict(extra="forbid")
    status_code: int
    message: Optional[str] = Field(None)
    data: Optional[str] = Field(None)


class JsonConfigSettingsSource(PydanticBaseSettingsSource):
    """
    Job settings stored in a JSON config file.

    The file holds one object keyed by settings field names, with an
    optional config_version. Only files of the current version are read.
    """

    def __init__(
        self, settings_cls: Type[BaseSettings], config_file: Path
    ) -> None:
        """Remember the config file; it is read on first lookup."""
        super().__init__(settings_cls)
        self.config_file = Path(config_file)

    @cached_property
    def contents(self) -> Dict[str, Any]:
        """The parsed config object, checked for its version."""
        try:
            contents = json.loads(self.config_file.read_text())
        except (json.JSONDecodeError, OSError) as e:
            logging.warning(
                f"Error loading config from {self.config_file}: {e}"
            )
            raise e
        if not isinstance(contents, dict):
            raise ValueError(
                f"Config file {self.config_file} must hold a JSON object, "
                f"got {type(contents).__name__}"
            )
        version = str(contents.get("config_version", CONFIG_VERSION))
        if version != CONFIG_VERSION:
            raise ValueError(
                f"Config file {self.config_file} has version {version}; "
                f"this release reads version {CONFIG_VERSION}."
            )
        return contents

    def get_field_value(
        self, field: FieldInfo, field_name: str
    ) -> Tuple[Any, str, bool]:
        """
        Look up one settings field.
        Parameters
        ----------
        field : FieldInfo
        field_name : str

        Returns
        -------
        Tuple[Any, str, bool]
          The stored value, None when the file leaves the field out, the
          field name, and False: point set specs and windows are stored
          as plain JSON and parsed by the field validators.

        """
        return self.contents.get(field_name), field_name, False

    def __call__(self) -> Dict[str, Any]:
        """Fields the config file sets, keyed for model validation."""
        values: Dict[str, Any] = {}
        for field_name, field in self.settings_cls.model_fields.items():
            value, key, _ = self.get_field_value(field, field_name)
            if value is not None:
                values[key] = value
        return values


class BaseJobSettings(BaseSettings):
    """Settings every job shares: the point set, precision, caps and
    output. Keyword arguments win over WMS_ environment variables (e.g.
    WMS_REL_ERR), which win over the optional JSON config file."""

    model_config = SettingsConfigDict(env_prefix="WMS_", extra="allow")

    job_settings_name: str = Field(
        ...,
        description=(
            "Literal name for job settings to make serialized class distinct."
        ),
    )
    config_version: Literal["1"] = Field(
        default=CONFIG_VERSION,
        description="Version of the settings layout.",
    )
    spec: FreenessSpec = Field(
        default_factory=lambda: VISIBLE,
        description=(
            "Point set to work on: 'visible', 'kfree:n,k' or "
            "'bfree:n:b1,b2,...'. Environment values use the JSON form."
        ),
    )
    rel_err: float = Field(
        default=1e-8,
        gt=0,
        description="Relative error for every certified Euler product.",
    )
    window_cap: int = Field(
        default=10**8,
        ge=1,
        description="Maximum number of lattice points a job may visit.",
    )
    inclusion_exclusion_cap: int = Field(
        default=20,
        ge=0,
        description="Maximum number of free window points in a frequency.",
    )
    output_path: Optional[Path] = Field(
        default=None,
        description="File to write the artifact to. None to return it.",
    )
    output_format: str = Field(default="csv", description="Artifact format.")
    seed: int = Field(
        default=20160101,
        description="Seed for every randomised verification.",
    )
    workers: int = Field(
        default=1, ge=1, description="Worker threads for slab kernels."
    )
    cache_dir: Optional[Path] = Field(
        default=None,
        description="Directory caching computed Euler constants.",
    )
    user_settings_config_file: Optional[Union[Path, str]] = Field(
        default=None,
        repr=False,
        exclude=True,
        description="Optionally pull settings from a local config file.",
    )

    @field_validator("spec", mode="before")
    @classmethod
    def parse_spec_string(cls, value: Any) -> Any:
        """Accept the compact text form of a point set."""
        if isinstance(value, str):
            return parse_spec(value)
        return value

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: InitSettingsSource,
        env_settings: EnvSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        """Keyword arguments, then the environment, then the config file
        named by user_settings_config_file when it exists."""
        sources: List[PydanticBaseSettingsSource] = [
            init_settings,
            env_settings,
        ]
        config_file = init_settings.init_kwargs.get(
            "user_settings_config_file"
        )
        if config_file is not None and Path(config_file).is_file():
            sources.append(
                JsonConfigSettingsSource(settings_cls, Path(config_file))
            )
        return tuple(sources)

    def provenance(self) -> str:
        """Settings as a single JSON line for artifact headers."""
        return self.model_dump_json(exclude={"output_path", "workers"})

    @classmethod
    def from_args(cls, args: list):
        """
        Settings from a -j JSON argument, for running one job module as a
        script.
        Parameters
        ----------
        args : list
          Command line arguments without the program name.
        """
        parser = argparse.ArgumentParser()
        parser.add_argument(
            "-j",
            "--job-settings",
            required=True,
            type=str,
            help=(
                r"""
                Job settings as one JSON object. For example: -j
                 '{
                 "spec":"kfree:2,1",
                 "output_path":"/tmp/points.csv",
                 "job_settings_name": "Generate"}'
                """
            ),
        )
        job_args = parser.parse_args(args)
        return cls.model_validate_json(job_args.job_settings)
