"""Job for the ergocheck command."""

import io
import sys

from weak_model_sets.core import GenericJob
from weak_model_sets.core_models import JobResponse
from weak_model_sets.ergodics.models import ErgoCheckJobSettings
from weak_model_sets.ergodics.report import report_frame, verification_report


class ErgoCheckJob(GenericJob[ErgoCheckJobSettings]):
    """Write the verification report as CSV; any failed row gives 406."""

    def run_job(self) -> JobResponse:
        """Run the job."""
        settings = self.job_settings
        rows = verification_report(
            settings.spec,
            settings.seed,
            trials=settings.trials,
            moduli=settings.moduli,
            cesaro_radii=settings.cesaro_radii,
            cesaro_bound=settings.cesaro_bound,
            torus_primes=settings.torus_prime_bound,
            torus_trials=settings.torus_trials,
            translations=settings.translations,
            rel_err=settings.rel_err,
            cap=settings.window_cap,
        )
        buffer = io.StringIO()
        buffer.write(self._header())
        report_frame(rows).to_csv(
            buffer, index=False, lineterminator="\n", float_format="%.6g"
        )
        checks = {
            f"{row.identity} {row.parameters}": row.passed for row in rows
        }
        return self._load(buffer.getvalue(), settings.output_path, checks)


if __name__ == "__main__":
    sys_args = sys.argv[1:]
    main_job_settings = ErgoCheckJobSettings.from_args(sys_args)
    job = ErgoCheckJob(job_settings=main_job_settings)
    print(job.run().model_dump_json())
