"""Jobs for the freq, census and entropy commands."""

import io
import sys

from weak_model_sets.core import GenericJob
from weak_model_sets.core_models import JobResponse
from weak_model_sets.patches.entropy import entropy_formula
from weak_model_sets.patches.frequency import (
    census_frame,
    frequency_closed,
    frequency_empirical,
    measure_B,
    patch_census,
)
from weak_model_sets.patches.models import (
    CensusJobSettings,
    EntropyJobSettings,
    FrequencyJobSettings,
    Patch,
)
from weak_model_sets.pointsets.sets import density


class FrequencyJob(GenericJob[FrequencyJobSettings]):
    """Report the closed form frequency, the B-set measure and optionally
    the empirical frequency of a patch."""

    def run_job(self) -> JobResponse:
        """Run the job."""
        settings = self.job_settings
        patch = Patch(
            radius=settings.radius,
            dimension=settings.spec.dimension,
            points=settings.points,
        )
        closed = frequency_closed(
            settings.spec,
            patch,
            rel_err=settings.rel_err,
            cap=settings.inclusion_exclusion_cap,
        )
        measure = measure_B(settings.spec, patch, rel_err=settings.rel_err)
        lines = [
            self._header().rstrip("\n"),
            f"patch: {patch.key()}",
            f"frequency: {closed.value:.10g}",
            f"term_count: {closed.term_count}",
            f"tail_error: {closed.tail_error:.3e}",
            f"measure_B: {measure.value:.10g}",
            f"measure_B_tail_error: {measure.tail_error:.3e}",
        ]
        if settings.empirical_radius is not None:
            empirical = frequency_empirical(
                settings.spec,
                patch,
                settings.empirical_radius,
                cap=settings.window_cap,
                workers=settings.workers,
            )
            lines.append(
                f"empirical: {empirical:.10g} "
                f"(R={settings.empirical_radius:g})"
            )
        return self._load("\n".join(lines) + "\n", settings.output_path)


class CensusJob(GenericJob[CensusJobSettings]):
    """Tabulate every patch observed in a ball."""

    def run_job(self) -> JobResponse:
        """Run the job."""
        settings = self.job_settings
        census, observed = patch_census(
            settings.spec,
            settings.radius,
            settings.window_radius,
            cap=settings.window_cap,
            workers=settings.workers,
        )
        closed = None
        if settings.closed_form:
            closed = {
                patch: frequency_closed(
                    settings.spec,
                    patch,
                    rel_err=settings.rel_err,
                    cap=settings.inclusion_exclusion_cap,
                )
                for patch in census
            }
        frame = census_frame(
            census, settings.window_radius, settings.spec.dimension, closed
        )
        buffer = io.StringIO()
        buffer.write(self._header())
        buffer.write(f"# observed: {observed}\n")
        frame.to_csv(
            buffer, index=False, lineterminator="\n", float_format="%.10g"
        )
        return self._load(buffer.getvalue(), settings.output_path)


class EntropyJob(GenericJob[EntropyJobSettings]):
    """Print the patch counting entropy and its certified error."""

    def run_job(self) -> JobResponse:
        """Run the job."""
        settings = self.job_settings
        base = 2 if settings.log2 else None
        value = entropy_formula(settings.spec, settings.rel_err, base)
        relative = density(settings.spec, settings.rel_err).certified_bound
        unit = "bits" if settings.log2 else "nats"
        lines = [
            f"{value:.{settings.precision}f}",
            f"# unit: {unit}",
            f"# certified_error: {abs(value) * relative:.3e}",
            self._header().rstrip("\n"),
        ]
        return self._load("\n".join(lines) + "\n", settings.output_path)


if __name__ == "__main__":
    sys_args = sys.argv[1:]
    main_job_settings = EntropyJobSettings.from_args(sys_args)
    job = EntropyJob(job_settings=main_job_settings)
    print(job.run().model_dump_json())
