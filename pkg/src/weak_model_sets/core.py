"""Core abstract class that can be used as a template for jobs."""

import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Dict, Generic, Optional, TypeVar, Union

from weak_model_sets.core_models import BaseJobSettings, JobResponse
from weak_model_sets.exceptions import (
    EulerProductError,
    InclusionExclusionCapError,
    NonCoprimeModuliError,
    NotInA1Error,
    WindowCapError,
)

_T = TypeVar("_T", bound=BaseJobSettings)

logger = logging.getLogger(__name__)

# Failures caused by the request rather than the environment.
INPUT_ERRORS = (
    WindowCapError,
    InclusionExclusionCapError,
    NonCoprimeModuliError,
    NotInA1Error,
    EulerProductError,
    ValueError,
)


class GenericJob(ABC, Generic[_T]):
    """A generic job class. Child classes will need to create a JobSettings
    object that is json serializable. Child class will also need to
    implement the _compute method, which returns the artifact contents and
    the outcome of any verification the job performs."""

    def __init__(self, job_settings: _T):
        """
        Class constructor for the GenericJob class.
        Parameters
        ----------
        job_settings : _T
          Generic type that is bound by the BaseSettings class.
        """
        self.job_settings = job_settings
        if isinstance(self.job_settings.output_path, str):
            self.job_settings.output_path = Path(
                self.job_settings.output_path
            )

    def _header(self, comment: str = "#") -> str:
        """Provenance line echoing the full settings."""
        return f"{comment} config: {self.job_settings.provenance()}\n"

    @staticmethod
    def _run_verification_check(checks: Dict[str, bool]) -> Optional[str]:
        """
        Collect the names of failed checks.
        Parameters
        ----------
        checks : Dict[str, bool]
          Check name mapped to its outcome.

        Returns
        -------
        Optional[str]
          None if every check passed. Else, a message naming the failures.

        """
        failed = [name for name, passed in checks.items() if not passed]
        if failed:
            logging.debug(f"Verification failures detected: {failed}")
            return f"Verification failed: {', '.join(failed)}"
        logging.debug("No verification failures detected.")
        return None

    def _load(
        self,
        contents: Union[str, bytes],
        output_path: Optional[Path],
        checks: Optional[Dict[str, bool]] = None,
    ) -> JobResponse:
        """
        Will write to output_path if it is not None. If output_path is None,
        then the contents will be returned in the JobResponse object.
        Parameters
        ----------
        contents : Union[str, bytes]
          The final artifact that has been constructed.
        output_path : Optional[Path]
          Path to write the artifact to.
        checks : Optional[Dict[str, bool]]
          Verification outcomes attached to the artifact.

        Returns
        -------
        JobResponse
          The JobResponse object with information about the artifact. The
          status_codes are:
          200 - All checks passed and written without errors
          406 - There were failed verification checks
          500 - There were errors writing the artifact to output_path

        """
        failure = self._run_verification_check(checks or {})
        if failure:
            verification_message = failure
            status_code = 406
        else:
            verification_message = "No verification failures detected."
            status_code = 200
        if output_path is None:
            if isinstance(contents, bytes):
                return JobResponse(
                    status_code=400,
                    message="Binary formats need an output_path.",
                )
            data = contents
            message = verification_message
        else:
            data = None
            try:
                mode = "wb" if isinstance(contents, bytes) else "w"
                with open(output_path, mode) as f:
                    f.write(contents)
                message = f"Wrote {output_path}\n" + verification_message
            except OSError as e:
                message = (
                    f"Error writing to {output_path}: {repr(e)}\n"
                    + verification_message
                )
                status_code = 500
        return JobResponse(status_code=status_code, message=message, data=data)

    @abstractmethod
    def run_job(self) -> JobResponse:
        """Abstract method that needs to be implemented by child classes."""

    def run(self) -> JobResponse:
        """
        Run the job, turning rejected input into a 400 response.
        Returns
        -------
        JobResponse

        """
        try:
            return self.run_job()
        except INPUT_ERRORS as e:
            logger.warning(f"{type(self).__name__} rejected input: {e}")
            return JobResponse(status_code=400, message=str(e))
        except OSError as e:
            logger.warning(f"{type(self).__name__} failed on I/O: {e}")
            return JobResponse(status_code=500, message=str(e))
