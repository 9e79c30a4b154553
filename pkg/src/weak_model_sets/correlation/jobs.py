"""Job for the autocorr command."""

import io
import sys

from weak_model_sets.core import GenericJob
from weak_model_sets.core_models import JobResponse
from weak_model_sets.correlation.autocorrelation import (
    autocorr_frame,
    autocorr_table,
)
from weak_model_sets.correlation.models import AutocorrJobSettings


class AutocorrJob(GenericJob[AutocorrJobSettings]):
    """Tabulate empirical autocorrelation coefficients as CSV."""

    def run_job(self) -> JobResponse:
        """Run the job."""
        settings = self.job_settings
        samples = autocorr_table(
            settings.spec,
            settings.shifts,
            settings.radius,
            cap=settings.window_cap,
            workers=settings.workers,
        )
        frame = autocorr_frame(samples, closed_form=settings.closed_form)
        buffer = io.StringIO()
        buffer.write(self._header())
        frame.to_csv(
            buffer, index=False, lineterminator="\n", float_format="%.10g"
        )
        return self._load(buffer.getvalue(), settings.output_path)


if __name__ == "__main__":
    sys_args = sys.argv[1:]
    main_job_settings = AutocorrJobSettings.from_args(sys_args)
    job = AutocorrJob(job_settings=main_job_settings)
    print(job.run().model_dump_json())
