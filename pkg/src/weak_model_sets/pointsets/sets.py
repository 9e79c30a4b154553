"""Membership, generation, admissibility and holes of lattice point sets."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import (
    Callable,
    Iterable,
    Iterator,
    List,
    Optional,
    Sequence,
    Tuple,
    TypeVar,
    Union,
)

import numpy as np

from weak_model_sets.arith.crt import crt_solve
from weak_model_sets.arith.euler import euler_product, inverse_zeta_spec
from weak_model_sets.arith.models import EulerProductResult, ResidueVector
from weak_model_sets.arith.primes import (
    first_primes,
    gcd_vector,
    integer_root,
    is_k_free_integer,
)
from weak_model_sets.exceptions import WindowCapError
from weak_model_sets.pointsets.specs import (
    BFree,
    KFree,
    LatticeWindow,
    PointSet,
    ball_norm_bound,
)

logger = logging.getLogger(__name__)

Spec = Union[KFree, BFree]
_R = TypeVar("_R")

SLAB_TARGET = 1 << 20


def _check_dimension(spec: Spec, x: Sequence[int]) -> None:
    """Raise on a vector of the wrong dimension."""
    if len(x) != spec.dimension:
        raise ValueError(
            f"Vector {tuple(x)} has dimension {len(x)}, the point set has "
            f"dimension {spec.dimension}"
        )


def is_member(spec: Spec, x: Sequence[int]) -> bool:
    """
    Test a single lattice point.
    Parameters
    ----------
    spec : Spec
    x : Sequence[int]

    Returns
    -------
    bool
      False for the origin, which lies in every excluded sublattice.

    """
    _check_dimension(spec, x)
    g = gcd_vector(x)
    if g == 0:
        return False
    if isinstance(spec, KFree):
        return is_k_free_integer(g, spec.power)
    return all(g % b for b in spec.moduli)


@lru_cache(maxsize=64)
def _gcd_table(spec: Spec, size: int) -> np.ndarray:
    """Membership of a point by the gcd g of its coordinates, g < size."""
    table = np.ones(size, dtype=bool)
    table[0] = False
    for m in spec.excluded_moduli(size - 1):
        table[::m] = False
    table.flags.writeable = False
    return table


def member_mask(spec: Spec, coordinates: Sequence[np.ndarray]) -> np.ndarray:
    """
    Vectorised membership over broadcastable coordinate arrays.
    Parameters
    ----------
    spec : Spec
    coordinates : Sequence[np.ndarray]
      One integer array per axis.

    Returns
    -------
    np.ndarray
      Boolean array of the broadcast shape.

    """
    if len(coordinates) != spec.dimension:
        raise ValueError(
            f"Got {len(coordinates)} coordinate arrays for dimension "
            f"{spec.dimension}"
        )
    g = np.abs(np.asarray(coordinates[0], dtype=np.int64))
    for axis in coordinates[1:]:
        g = np.gcd(g, np.asarray(axis, dtype=np.int64))
    shape = np.broadcast_shapes(*(np.shape(c) for c in coordinates))
    g = np.broadcast_to(g, shape)
    largest = int(g.max()) if g.size else 0
    size = 1 << max(largest + 1, 2).bit_length()
    return _gcd_table(spec, size)[g]


def ball_volume(radius: float, dimension: int) -> float:
    """Volume of the n-ball; exactly pi R^2 in the plane."""
    if dimension == 2:
        return math.pi * radius * radius
    return (
        math.pi ** (dimension / 2)
        * radius**dimension
        / math.gamma(dimension / 2 + 1)
    )


def ball_points(radius: float, dimension: int) -> np.ndarray:
    """
    Lattice points of the closed ball B_radius(0).
    Parameters
    ----------
    radius : float
    dimension : int

    Returns
    -------
    np.ndarray
      Array of shape (N, dimension) in lexicographic order.

    """
    reach = math.isqrt(ball_norm_bound(radius))
    axis = np.arange(-reach, reach + 1)
    grid = np.meshgrid(*([axis] * dimension), indexing="ij")
    squared = sum(g * g for g in grid)
    inside = squared <= ball_norm_bound(radius)
    return np.stack([g[inside] for g in grid], axis=1).astype(np.int64)


def iter_slabs(
    lower: Sequence[int],
    upper: Sequence[int],
    target: int = SLAB_TARGET,
) -> Iterator[List[np.ndarray]]:
    """
    Split a box into slabs along the first axis.
    Parameters
    ----------
    lower, upper : Sequence[int]
      Inclusive bounds.
    target : int
      Approximate number of points per slab.

    Returns
    -------
    Iterator[List[np.ndarray]]
      Sparse broadcastable coordinate arrays of each slab, in order.

    """
    if any(lo > hi for lo, hi in zip(lower, upper)):
        return
    row = math.prod(hi - lo + 1 for lo, hi in zip(lower[1:], upper[1:]))
    rows_per_slab = max(1, target // max(row, 1))
    tail_axes = [
        np.arange(lo, hi + 1) for lo, hi in zip(lower[1:], upper[1:])
    ]
    for start in range(lower[0], upper[0] + 1, rows_per_slab):
        stop = min(start + rows_per_slab - 1, upper[0])
        axes = [np.arange(start, stop + 1)] + tail_axes
        yield np.meshgrid(*axes, indexing="ij", sparse=True)


def window_mask(
    window: LatticeWindow, coordinates: Sequence[np.ndarray]
) -> np.ndarray:
    """Points of a slab inside the window."""
    shape = np.broadcast_shapes(*(np.shape(c) for c in coordinates))
    if not window.is_ball:
        return np.ones(shape, dtype=bool)
    squared = sum((c - o) ** 2 for c, o in zip(coordinates, window.origin))
    return np.broadcast_to(squared <= ball_norm_bound(window.radius), shape)


def check_window_cap(window: LatticeWindow, cap: int) -> None:
    """Raise when the window visits more lattice points than cap."""
    required = window.box_size()
    if required > cap:
        raise WindowCapError(required=required, cap=cap)


def map_slabs(
    kernel: Callable[[List[np.ndarray]], _R],
    lower: Sequence[int],
    upper: Sequence[int],
    workers: int = 1,
) -> List[_R]:
    """Run a kernel over the slabs of a box, results in slab order."""
    slabs = iter_slabs(lower, upper)
    if workers <= 1:
        return [kernel(slab) for slab in slabs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(kernel, slabs))


def generate(
    spec: Spec,
    window: LatticeWindow,
    cap: int = 10**8,
    workers: int = 1,
) -> PointSet:
    """
    All members of the point set inside a window.
    Parameters
    ----------
    spec : Spec
    window : LatticeWindow
    cap : int
      Largest number of lattice points to visit.
    workers : int
      Threads used for the slabs.

    Returns
    -------
    PointSet

    """
    if window.dimension != spec.dimension:
        raise ValueError(
            f"Window dimension {window.dimension} does not match "
            f"{spec.dimension}"
        )
    check_window_cap(window, cap)

    def kernel(slab: List[np.ndarray]) -> np.ndarray:
        """Members of one slab."""
        full = np.broadcast_arrays(*slab)
        keep = member_mask(spec, slab) & window_mask(window, slab)
        return np.stack([axis[keep] for axis in full], axis=1)

    lower, upper = window.bounding_box()
    parts = map_slabs(kernel, lower, upper, workers)
    if parts:
        points = np.concatenate(parts).astype(np.int64)
    else:
        points = np.empty((0, spec.dimension), dtype=np.int64)
    logger.debug(f"Generated {len(points)} points of {spec.label}")
    return PointSet(spec=spec, window=window, points=points)


def count_members(
    spec: Spec,
    window: LatticeWindow,
    cap: int = 10**8,
    workers: int = 1,
) -> int:
    """Number of members inside a window, without storing them."""
    check_window_cap(window, cap)

    def kernel(slab: List[np.ndarray]) -> int:
        """Members of one slab."""
        keep = member_mask(spec, slab) & window_mask(window, slab)
        return int(np.count_nonzero(keep))

    lower, upper = window.bounding_box()
    return sum(map_slabs(kernel, lower, upper, workers))


def density(spec: Spec, rel_err: float = 1e-8) -> EulerProductResult:
    """
    Natural density of the point set.
    Parameters
    ----------
    spec : Spec
    rel_err : float

    Returns
    -------
    EulerProductResult
      1/zeta(nk) for k-free points; the finite product of (1 - b^-n)
      for B-free points.

    """
    if isinstance(spec, KFree):
        return euler_product(inverse_zeta_spec(spec.sieve_exponent), rel_err)
    value = math.prod(1 - b ** -spec.dimension for b in spec.moduli)
    return EulerProductResult(
        value=value,
        certified_bound=0.0,
        cutoff=max(spec.moduli, default=1),
        method="exact",
    )


def _as_array(points: Iterable[Sequence[int]], dimension: int) -> np.ndarray:
    """Distinct points as an (N, n) integer array."""
    array = np.asarray(list(points), dtype=np.int64).reshape(-1, dimension)
    if len(array) == 0:
        return array
    return np.unique(array, axis=0)


def residue_count(points: np.ndarray, modulus: int) -> int:
    """Number of classes of Z^n / m Z^n met by the points."""
    if len(points) == 0:
        return 0
    return len(np.unique(np.mod(points, modulus), axis=0))


def is_admissible(
    spec: Spec, points: Iterable[Sequence[int]]
) -> Tuple[bool, Optional[int]]:
    """
    Test whether a finite set misses a residue class of every modulus.
    Parameters
    ----------
    spec : Spec
    points : Iterable[Sequence[int]]

    Returns
    -------
    Tuple[bool, Optional[int]]
      The outcome and the first modulus whose classes are all met.

    """
    array = _as_array(points, spec.dimension)
    limit = integer_root(len(array), spec.dimension)
    for m in spec.excluded_moduli(limit):
        if residue_count(array, m) >= m**spec.dimension:
            return False, m
    return True, None


def hole_moduli(spec: Spec, count: int) -> List[int]:
    """Distinct excluded moduli, one per point of a hole."""
    if isinstance(spec, KFree):
        return [p**spec.power for p in first_primes(count)]
    if len(spec.moduli) < count:
        raise ValueError(
            f"B too small for requested inradius: {count} moduli needed, "
            f"{len(spec.moduli)} available"
        )
    return list(spec.moduli[:count])


def find_hole(spec: Spec, radius: float) -> Tuple[Tuple[int, ...], int]:
    """
    Centre and period of a lattice of holes of the given inradius.
    Parameters
    ----------
    spec : Spec
    radius : float
      Inradius, positive.

    Returns
    -------
    Tuple[Tuple[int, ...], int]
      The canonical solution t of t = -x_i (mod m_i) over the ball points
      x_i, and the product of the moduli. Every t + period * v is a hole.

    """
    if radius <= 0:
        raise ValueError(f"Hole inradius must be positive, got {radius}")
    offsets = ball_points(radius, spec.dimension).tolist()
    moduli = hole_moduli(spec, len(offsets))
    congruences = [
        ResidueVector(coordinates=tuple(-c for c in x), modulus=m)
        for x, m in zip(offsets, moduli)
    ]
    return crt_solve(congruences)


def excluded_by_sieve(x: Sequence[int], moduli: Sequence[int]) -> bool:
    """True if some listed modulus divides gcd(x), or x is the origin."""
    g = gcd_vector(x)
    return g == 0 or any(g % m == 0 for m in moduli)


def verify_hole(
    spec: Spec,
    center: Sequence[int],
    period: int,
    radius: float,
    translates: Sequence[Sequence[int]] = (),
) -> bool:
    """
    Check that B_radius(c) holds no member at c = center and at
    c = center + period * v for each translate v.

    Every ball point must first be excluded by one of the moduli the
    hole is built from. Each ball point is then tested with is_member,
    so the answer does not rest on how the hole was constructed.
    Parameters
    ----------
    spec : Spec
    center : Sequence[int]
    period : int
    radius : float
    translates : Sequence[Sequence[int]]

    Returns
    -------
    bool

    """
    offsets = ball_points(radius, spec.dimension).tolist()
    moduli = hole_moduli(spec, len(offsets))
    balls = []
    for v in [(0,) * spec.dimension, *translates]:
        c = [int(a) + period * int(b) for a, b in zip(center, v)]
        balls.append([tuple(a + b for a, b in zip(c, x)) for x in offsets])
    for ball in balls:
        for point in ball:
            if not excluded_by_sieve(point, moduli):
                logger.debug(f"Hole sieve check failed at {point}")
                return False
    for ball in balls:
        for point in ball:
            if is_member(spec, point):
                logger.warning(f"Member {point} found inside a hole")
                return False
    return True
