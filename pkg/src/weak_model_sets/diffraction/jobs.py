"""Jobs for the diffract and figure commands."""

import sys

from weak_model_sets.core import GenericJob
from weak_model_sets.core_models import JobResponse
from weak_model_sets.diffraction.figure import render_csv, render_svg
from weak_model_sets.diffraction.intensity import support_enumerate
from weak_model_sets.diffraction.models import (
    DiffractJobSettings,
    FigureJobSettings,
)


class DiffractJob(GenericJob[DiffractJobSettings]):
    """List or draw the Bragg peaks above a relative threshold."""

    def run_job(self) -> JobResponse:
        """Run the job."""
        settings = self.job_settings
        atoms = support_enumerate(
            settings.spec,
            settings.spectral_window(),
            settings.threshold,
            rel_err=settings.rel_err,
        )
        provenance = f"spec={settings.spec.label} config: " + (
            settings.provenance()
        )
        if settings.output_format == "svg":
            contents = render_svg(atoms, settings.style, provenance)
        else:
            contents = render_csv(atoms, provenance)
        return self._load(contents, settings.output_path)


if __name__ == "__main__":
    sys_args = sys.argv[1:]
    main_job_settings = FigureJobSettings.from_args(sys_args)
    job = DiffractJob(job_settings=main_job_settings)
    print(job.run().model_dump_json())
