"""Jobs for the nf-gen, nf-zeta and nf-diffract commands."""

import io
import sys

import pandas as pd

from weak_model_sets.arith.euler import EulerConstantCache
from weak_model_sets.core import GenericJob
from weak_model_sets.core_models import JobResponse
from weak_model_sets.diffraction.figure import render_csv, render_svg
from weak_model_sets.numfield.lattice import generate_nf, nf_density
from weak_model_sets.numfield.models import (
    NfDiffractJobSettings,
    NfGenerateJobSettings,
    NfZetaJobSettings,
)
from weak_model_sets.numfield.spectrum import nf_support_enumerate
from weak_model_sets.numfield.zeta import dedekind_factor_spec, invert_product
from weak_model_sets.pointsets.sets import ball_volume


class NfGenerateJob(GenericJob[NfGenerateJobSettings]):
    """List the embedded k-free integers of a disk as CSV."""

    def run_job(self) -> JobResponse:
        """Run the job."""
        settings = self.job_settings
        point_set = generate_nf(
            settings.power,
            settings.radius,
            cap=settings.window_cap,
            workers=settings.workers,
        )
        embedded = point_set.embedded()
        frame = pd.DataFrame(
            {
                "a": point_set.a,
                "b": point_set.b,
                "x": embedded[:, 0],
                "x_conjugate": embedded[:, 1],
            }
        )
        observed = len(point_set) / ball_volume(settings.radius, 2)
        expected = nf_density(settings.power, settings.rel_err).value
        buffer = io.StringIO()
        buffer.write(self._header())
        buffer.write(f"# density: {observed:.6f} expected {expected:.6f}\n")
        frame.to_csv(
            buffer, index=False, lineterminator="\n", float_format="%.12g"
        )
        return self._load(buffer.getvalue(), settings.output_path)


class NfZetaJob(GenericJob[NfZetaJobSettings]):
    """Tabulate zeta_K(s) with certified errors, through the constant
    cache when cache_dir is set."""

    def run_job(self) -> JobResponse:
        """Run the job."""
        settings = self.job_settings
        cache = EulerConstantCache(settings.cache_dir)
        rows = []
        for s in settings.points:
            result = invert_product(
                cache.get_or_compute(dedekind_factor_spec(s), settings.rel_err)
            )
            rows.append(
                {
                    "s": s,
                    "zeta": result.value,
                    "certified_error": result.absolute_bound,
                    "method": result.method,
                }
            )
        buffer = io.StringIO()
        buffer.write(self._header())
        frame = pd.DataFrame(
            rows, columns=["s", "zeta", "certified_error", "method"]
        )
        frame.to_csv(
            buffer, index=False, lineterminator="\n", float_format="%.12g"
        )
        return self._load(buffer.getvalue(), settings.output_path)


class NfDiffractJob(GenericJob[NfDiffractJobSettings]):
    """List or draw the Bragg peaks of the embedded k-free integers."""

    def run_job(self) -> JobResponse:
        """Run the job."""
        settings = self.job_settings
        atoms = nf_support_enumerate(
            settings.power,
            settings.lower,
            settings.upper,
            settings.threshold,
            rel_err=settings.rel_err,
        )
        provenance = f"k={settings.power} config: " + settings.provenance()
        if settings.output_format == "svg":
            contents = render_svg(atoms, settings.style, provenance)
        else:
            contents = render_csv(atoms, provenance)
        return self._load(contents, settings.output_path)


if __name__ == "__main__":
    sys_args = sys.argv[1:]
    main_job_settings = NfDiffractJobSettings.from_args(sys_args)
    job = NfDiffractJob(job_settings=main_job_settings)
    print(job.run().model_dump_json())
