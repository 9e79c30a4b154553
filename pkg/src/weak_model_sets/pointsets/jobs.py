"""Jobs for the gen, member, admissible and hole commands."""

import logging
import sys

import numpy as np

from weak_model_sets.core import GenericJob
from weak_model_sets.core_models import JobResponse
from weak_model_sets.pointsets.models import (
    AdmissibleJobSettings,
    GenerateJobSettings,
    HoleJobSettings,
    MemberJobSettings,
)
from weak_model_sets.pointsets.serialization import (
    encode_rle,
    point_set_to_csv,
    read_point_set,
)
from weak_model_sets.pointsets.sets import (
    find_hole,
    generate,
    is_admissible,
    is_member,
    verify_hole,
)

logger = logging.getLogger(__name__)


class GenerateJob(GenericJob[GenerateJobSettings]):
    """Write the members of a window as CSV or run-length bytes."""

    def run_job(self) -> JobResponse:
        """Run the job."""
        settings = self.job_settings
        point_set = generate(
            settings.spec,
            settings.window(),
            cap=settings.window_cap,
            workers=settings.workers,
        )
        config = settings.provenance()
        if settings.output_format == "rle":
            contents = encode_rle(point_set, config)
        else:
            contents = point_set_to_csv(point_set, config)
        return self._load(contents, settings.output_path)


class MemberJob(GenericJob[MemberJobSettings]):
    """Answer true or false for one point."""

    def run_job(self) -> JobResponse:
        """Run the job."""
        answer = is_member(self.job_settings.spec, self.job_settings.point)
        return self._load(
            str(answer).lower() + "\n", self.job_settings.output_path
        )


class AdmissibleJob(GenericJob[AdmissibleJobSettings]):
    """Report admissibility and the witness modulus."""

    def run_job(self) -> JobResponse:
        """Run the job."""
        settings = self.job_settings
        points = list(settings.points)
        if settings.input_path is not None:
            points.extend(read_point_set(settings.input_path).as_tuples())
        admissible, witness = is_admissible(settings.spec, points)
        line = "true" if admissible else f"false witness {witness}"
        return self._load(line + "\n", settings.output_path)


class HoleJob(GenericJob[HoleJobSettings]):
    """Construct a hole lattice and verify it at sampled translates."""

    def run_job(self) -> JobResponse:
        """Run the job."""
        settings = self.job_settings
        center, period = find_hole(settings.spec, settings.radius)
        rng = np.random.default_rng(settings.seed)
        translates = rng.integers(
            -3, 4, size=(settings.translates, settings.spec.dimension)
        ).tolist()
        verified = verify_hole(
            settings.spec, center, period, settings.radius, translates
        )
        lines = [
            self._header().rstrip("\n"),
            f"center: {','.join(str(c) for c in center)}",
            f"period: {period}",
            f"verified: {str(verified).lower()}",
        ]
        return self._load(
            "\n".join(lines) + "\n",
            settings.output_path,
            checks={"hole emptiness": verified},
        )


if __name__ == "__main__":
    sys_args = sys.argv[1:]
    main_job_settings = GenerateJobSettings.from_args(sys_args)
    job = GenerateJob(job_settings=main_job_settings)
    print(job.run().model_dump_json())
