"""CSV and run-length encodings of point sets."""

import io
import json
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np
import pandas as pd

from weak_model_sets.pointsets.specs import (
    LatticeWindow,
    PointSet,
    parse_spec,
)

CSV_VERSION = "weak-model-sets pointset csv v1"
RLE_MAGIC = b"WMSRLE1\n"


def _columns(dimension: int):
    """Coordinate column names."""
    return [f"x{i}" for i in range(dimension)]


def point_set_to_csv(point_set: PointSet, config: Optional[str] = None) -> str:
    """
    Render a point set as CSV, one vector per line in lexicographic order.
    Parameters
    ----------
    point_set : PointSet
    config : Optional[str]
      Settings echoed into the header.

    Returns
    -------
    str

    """
    buffer = io.StringIO()
    buffer.write(f"# {CSV_VERSION}\n")
    buffer.write(f"# spec: {point_set.spec.label}\n")
    buffer.write(f"# window: {point_set.window.model_dump_json()}\n")
    if config is not None:
        buffer.write(f"# config: {config}\n")
    frame = pd.DataFrame(
        point_set.points, columns=_columns(point_set.spec.dimension)
    )
    frame.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def _read_header(lines) -> dict:
    """Header fields of a CSV point set."""
    header = {}
    for line in lines:
        if not line.startswith("#"):
            break
        key, _, value = line[1:].strip().partition(": ")
        header[key] = value
    return header


def read_csv(source: Union[Path, str, io.StringIO]) -> PointSet:
    """
    Parse a CSV point set written by point_set_to_csv.
    Parameters
    ----------
    source : Union[Path, str, io.StringIO]
      A path or a text buffer.

    Returns
    -------
    PointSet

    """
    if isinstance(source, io.StringIO):
        text = source.getvalue()
    else:
        text = Path(source).read_text()
    lines = text.splitlines()
    if not lines or lines[0] != f"# {CSV_VERSION}":
        raise ValueError("Not a version 1 point set CSV")
    header = _read_header(lines)
    spec = parse_spec(header["spec"])
    window = LatticeWindow.model_validate_json(header["window"])
    frame = pd.read_csv(io.StringIO(text), comment="#")
    points = frame[_columns(spec.dimension)].to_numpy(dtype=np.int64)
    return PointSet(spec=spec, window=window, points=points)


def _membership_bits(point_set: PointSet) -> Tuple[np.ndarray, tuple]:
    """Flattened membership bits over the bounding box of the window."""
    lower, upper = point_set.window.bounding_box()
    shape = tuple(hi - lo + 1 for lo, hi in zip(lower, upper))
    bits = np.zeros(shape, dtype=bool)
    if len(point_set):
        bits[tuple((point_set.points - np.array(lower)).T)] = True
    return bits.ravel(), shape


def encode_rle(point_set: PointSet, config: Optional[str] = None) -> bytes:
    """
    Run-length encode the membership bits of the bounding box.
    Parameters
    ----------
    point_set : PointSet
    config : Optional[str]
      Settings echoed into the header.

    Returns
    -------
    bytes
      Magic line, one JSON header line, then little-endian uint64 run
      lengths alternating absent and present, starting with absent.

    """
    if point_set.window.is_empty:
        flat = np.zeros(0, dtype=bool)
    else:
        flat, _ = _membership_bits(point_set)
    changes = np.flatnonzero(np.diff(flat.astype(np.int8))) + 1
    boundaries = np.concatenate([[0], changes, [len(flat)]])
    runs = np.diff(boundaries)
    if len(flat) and flat[0]:
        runs = np.concatenate([[0], runs])
    header = {
        "spec": point_set.spec.label,
        "window": point_set.window.model_dump(),
        "config": config,
    }
    return (
        RLE_MAGIC
        + json.dumps(header, sort_keys=True).encode()
        + b"\n"
        + runs.astype("<u8").tobytes()
    )


def decode_rle(payload: bytes) -> PointSet:
    """
    Inverse of encode_rle.
    Parameters
    ----------
    payload : bytes

    Returns
    -------
    PointSet

    """
    if not payload.startswith(RLE_MAGIC):
        raise ValueError("Not a version 1 run-length point set")
    header_line, _, body = payload[len(RLE_MAGIC) :].partition(b"\n")
    header = json.loads(header_line)
    spec = parse_spec(header["spec"])
    window = LatticeWindow.model_validate(header["window"])
    runs = np.frombuffer(body, dtype="<u8").astype(np.int64)
    values = np.arange(len(runs)) % 2 == 1
    flat = np.repeat(values, runs)
    if window.is_empty or not flat.any():
        points = np.empty((0, spec.dimension), dtype=np.int64)
    else:
        lower, upper = window.bounding_box()
        shape = tuple(hi - lo + 1 for lo, hi in zip(lower, upper))
        index = np.unravel_index(np.flatnonzero(flat), shape)
        points = np.stack(index, axis=1) + np.array(lower)
    return PointSet(spec=spec, window=window, points=points.astype(np.int64))


def write_point_set(
    point_set: PointSet,
    path: Path,
    output_format: str = "csv",
    config: Optional[str] = None,
) -> None:
    """Write a point set as csv or rle."""
    if output_format == "csv":
        Path(path).write_text(point_set_to_csv(point_set, config))
    elif output_format == "rle":
        Path(path).write_bytes(encode_rle(point_set, config))
    else:
        raise ValueError(f"Unknown point set format '{output_format}'")


def read_point_set(path: Path) -> PointSet:
    """Read a point set, detecting the format from its first bytes."""
    payload = Path(path).read_bytes()
    if payload.startswith(RLE_MAGIC):
        return decode_rle(payload)
    return read_csv(io.StringIO(payload.decode()))
