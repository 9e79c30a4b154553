"""SVG and CSV renderings of diffraction atoms."""

import io
import logging
import math
from pathlib import Path
from typing import Literal, Optional, Protocol, Sequence, Tuple

import pandas as pd

logger = logging.getLogger(__name__)

Style = Literal["area_proportional", "quartic_rescale"]

CANVAS_SIZE = 800
MARGIN = 0.25
# Radius of the strongest disk under area_proportional, in position units.
PEAK_RADIUS = 0.12


class Atom(Protocol):
    """Anything drawable as a disk."""

    intensity: float

    @property
    def plane_coordinates(self) -> Tuple[float, ...]:
        """Planar position."""

    def csv_row(self) -> dict:
        """Columns of the atom table."""


def disk_radius(intensity: float, style: Style, scale: float) -> float:
    """
    Radius of the disk drawn for an atom, in position units.
    Parameters
    ----------
    intensity : float
    style : Style
      area_proportional draws radius scale * sqrt(I), so areas follow the
      intensities; quartic_rescale draws I^(1/4) / 20.
    scale : float

    Returns
    -------
    float

    """
    if style == "quartic_rescale":
        return intensity**0.25 / 20
    return scale * math.sqrt(intensity)


def _extent(atoms: Sequence[Atom]) -> Tuple[float, float, float, float]:
    """Bounding box of the atom positions with a margin."""
    if not atoms:
        return 0.0, 0.0, 1.0, 1.0
    xs = [a.plane_coordinates[0] for a in atoms]
    ys = [a.plane_coordinates[1] for a in atoms]
    return (
        min(xs) - MARGIN,
        min(ys) - MARGIN,
        max(xs) + MARGIN,
        max(ys) + MARGIN,
    )


def render_svg(
    atoms: Sequence[Atom],
    style: Style = "area_proportional",
    provenance: Optional[str] = None,
) -> str:
    """
    Draw atoms as filled disks on a white canvas.
    Parameters
    ----------
    atoms : Sequence[Atom]
      Planar atoms.
    style : Style
    provenance : Optional[str]
      Text embedded as a comment under the XML prolog.

    Returns
    -------
    str
      Byte-stable SVG document.

    """
    if any(len(a.plane_coordinates) != 2 for a in atoms):
        raise ValueError("Only planar atoms can be drawn")
    x0, y0, x1, y1 = _extent(atoms)
    unit = CANVAS_SIZE / max(x1 - x0, y1 - y0)
    width = (x1 - x0) * unit
    height = (y1 - y0) * unit
    peak = max((a.intensity for a in atoms), default=1.0)
    scale = PEAK_RADIUS / math.sqrt(peak) if peak > 0 else 0.0

    parts = ['<?xml version="1.0" encoding="UTF-8"?>']
    comment = f"style={style}"
    if provenance:
        comment += f" {provenance}"
    parts.append(f"<!-- {comment.replace('--', '- -')} -->")
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{width:.2f}" height="{height:.2f}" '
        f'viewBox="0 0 {width:.2f} {height:.2f}">'
    )
    parts.append('<rect width="100%" height="100%" fill="white"/>')
    for atom in atoms:
        x, y = atom.plane_coordinates
        r = disk_radius(atom.intensity, style, scale) * unit
        parts.append(
            f'<circle cx="{(x - x0) * unit:.3f}" cy="{(y1 - y) * unit:.3f}" '
            f'r="{r:.3f}" fill="black"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_csv(
    atoms: Sequence[Atom], provenance: Optional[str] = None
) -> str:
    """
    Tabulate atoms with their position columns and intensity.
    Parameters
    ----------
    atoms : Sequence[Atom]
    provenance : Optional[str]
      Text written as a leading comment line.

    Returns
    -------
    str

    """
    buffer = io.StringIO()
    if provenance:
        buffer.write(f"# {provenance}\n")
    if atoms:
        frame = pd.DataFrame([a.csv_row() for a in atoms])
        frame.to_csv(
            buffer, index=False, lineterminator="\n", float_format="%.12e"
        )
    return buffer.getvalue()


def emit_figure(
    atoms: Sequence[Atom],
    style: Style,
    output: Path,
    output_format: Literal["svg", "csv"] = "svg",
    provenance: Optional[str] = None,
) -> Path:
    """
    Write atoms as an SVG figure or a CSV table.
    Parameters
    ----------
    atoms : Sequence[Atom]
    style : Style
    output : Path
    output_format : Literal["svg", "csv"]
    provenance : Optional[str]

    Returns
    -------
    Path
      The written file.

    """
    if output_format == "svg":
        contents = render_svg(atoms, style, provenance)
    elif output_format == "csv":
        contents = render_csv(atoms, provenance)
    else:
        raise ValueError(f"Unknown figure format '{output_format}'")
    output = Path(output)
    try:
        output.write_text(contents)
    except OSError as e:
        raise OSError(f"Could not write figure to {output}: {e}") from e
    logger.info(f"Wrote {len(atoms)} atoms to {output}")
    return output
