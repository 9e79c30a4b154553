"""Patch extraction, closed and empirical frequencies, patch census."""

import logging
import math
from collections import Counter
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from weak_model_sets.arith.euler import euler_product, power_factor_spec
from weak_model_sets.arith.models import EulerProductResult
from weak_model_sets.arith.primes import integer_root
from weak_model_sets.exceptions import (
    InclusionExclusionCapError,
    WindowCapError,
)
from weak_model_sets.patches.models import FrequencyResult, Patch
from weak_model_sets.pointsets.sets import (
    ball_points,
    ball_volume,
    is_admissible,
    map_slabs,
    member_mask,
    residue_count,
    window_mask,
)
from weak_model_sets.pointsets.specs import (
    BFree,
    KFree,
    LatticeWindow,
    PointSet,
    ball_norm_bound,
)

logger = logging.getLogger(__name__)

Spec = Union[KFree, BFree]

# Patch codes are bit sets in an int64.
MAX_CODE_BITS = 62


def window_points(radius: float, dimension: int) -> List[Tuple[int, ...]]:
    """Lattice points of B_radius(0), lexicographic."""
    return [tuple(x) for x in ball_points(radius, dimension).tolist()]


def extract_patch(
    point_set: PointSet, t: Sequence[int], radius: float
) -> Patch:
    """
    The patch (point_set - t) within B_radius(0).
    Parameters
    ----------
    point_set : PointSet
      Must cover B_radius(t).
    t : Sequence[int]
    radius : float

    Returns
    -------
    Patch

    """
    t = tuple(int(c) for c in t)
    if not point_set.window.contains_ball(t, radius):
        raise ValueError(
            f"Window too small: B_{radius}({t}) is not inside the window "
            f"of the point set"
        )
    points = [
        x
        for x in window_points(radius, point_set.spec.dimension)
        if tuple(a + b for a, b in zip(t, x)) in point_set
    ]
    return Patch(
        radius=radius, dimension=point_set.spec.dimension, points=points
    )


def explicit_limit(spec: Spec, points: np.ndarray) -> int:
    """Moduli above the returned bound reduce the points injectively and
    leave at least one class of m Z^n unmet. A finite B is always covered
    in full."""
    floor = max(spec.moduli) if isinstance(spec, BFree) else 1
    if len(points) == 0:
        return floor
    diameter = int((points.max(axis=0) - points.min(axis=0)).max())
    return max(diameter, integer_root(len(points), spec.dimension), floor)


@lru_cache(maxsize=4096)
def tail_product(
    spec: Spec, count: int, limit: int, rel_err: float
) -> EulerProductResult:
    """
    Product of (1 - count / m^n) over the moduli m > limit.
    Parameters
    ----------
    spec : Spec
    count : int
      Size of an injectively reduced set.
    limit : int
    rel_err : float

    Returns
    -------
    EulerProductResult

    """
    if isinstance(spec, BFree) or count == 0:
        return EulerProductResult(
            value=1.0, certified_bound=0.0, cutoff=limit, method="exact"
        )
    threshold = integer_root(limit, spec.power) + 1
    return euler_product(
        power_factor_spec(count, spec.sieve_exponent, threshold), rel_err
    )


def measure_of_points(
    spec: Spec, points: np.ndarray, rel_err: float = 1e-10
) -> FrequencyResult:
    """
    Measure of the hull configurations containing the given points,
    prod_m (1 - |points mod m| / m^n).
    Parameters
    ----------
    spec : Spec
    points : np.ndarray
      Distinct points, shape (N, n).
    rel_err : float

    Returns
    -------
    FrequencyResult

    """
    limit = explicit_limit(spec, points)
    value = 1.0
    for m in spec.excluded_moduli(limit):
        value *= 1 - residue_count(points, m) / m**spec.dimension
    tail = tail_product(spec, len(points), limit, rel_err)
    value *= tail.value
    return FrequencyResult(
        value=value, term_count=1, tail_error=abs(value) * tail.certified_bound
    )


def measure_B(
    spec: Spec, patch: Patch, rel_err: float = 1e-10
) -> FrequencyResult:
    """Measure of the set of configurations containing the patch; zero
    exactly when the patch is not admissible."""
    return measure_of_points(spec, patch.as_array(), rel_err)


def _popcount(values: np.ndarray, bits: int) -> np.ndarray:
    """Number of set bits among the lowest bits."""
    total = np.zeros(values.shape, dtype=np.int64)
    for i in range(bits):
        total += (values >> i) & 1
    return total


def frequency_closed(
    spec: Spec,
    patch: Patch,
    rel_err: float = 1e-10,
    cap: int = 20,
) -> FrequencyResult:
    """
    Frequency of a patch by inclusion-exclusion over the free points F of
    its window: sum_F (-1)^|F| measure(P u F).
    Parameters
    ----------
    spec : Spec
    patch : Patch
    rel_err : float
    cap : int
      Largest number of free window points.

    Returns
    -------
    FrequencyResult
      term_count is 2^|F|; tail_error sums the certified term errors.

    """
    if patch.dimension != spec.dimension:
        raise ValueError("Patch and point set differ in dimension")
    window = window_points(patch.radius, spec.dimension)
    occupied = set(patch.points)
    free = [w for w in window if w not in occupied]
    if len(free) > cap:
        raise InclusionExclusionCapError(len(free), cap)
    term_count = 1 << len(free)
    if not is_admissible(spec, patch.points)[0]:
        return FrequencyResult(value=0.0, term_count=term_count, tail_error=0)

    window_array = np.asarray(window, dtype=np.int64)
    limit = explicit_limit(spec, window_array)
    subsets = np.arange(term_count, dtype=np.int64)
    sizes = _popcount(subsets, len(free))
    factors = np.ones(term_count)
    for m in spec.excluded_moduli(limit):
        patch_classes = {tuple(c % m for c in x) for x in patch.points}
        free_classes: Dict[Tuple[int, ...], int] = {}
        for i, w in enumerate(free):
            residue = tuple(c % m for c in w)
            if residue not in patch_classes:
                free_classes[residue] = free_classes.get(residue, 0) | (1 << i)
        classes = np.full(term_count, len(patch_classes), dtype=np.int64)
        for bits in free_classes.values():
            classes += (subsets & bits) != 0
        factors *= 1 - classes / m**spec.dimension

    tails = [
        tail_product(spec, len(patch) + extra, limit, rel_err)
        for extra in range(len(free) + 1)
    ]
    tail_values = np.array([t.value for t in tails])[sizes]
    tail_bounds = np.array([t.certified_bound for t in tails])[sizes]
    signs = np.where(sizes % 2 == 0, 1.0, -1.0)
    terms = signs * factors * tail_values
    return FrequencyResult(
        value=math.fsum(terms),
        term_count=term_count,
        tail_error=math.fsum(np.abs(terms) * tail_bounds),
    )


def patch_code_counts(
    spec: Spec,
    radius: float,
    window_radius: float,
    center: Optional[Sequence[int]] = None,
    cap: int = 10**8,
    workers: int = 1,
) -> Dict[int, int]:
    """
    Count the patches of every t in B_R(center), each patch coded as the
    bit set of its points in window_points order.
    Parameters
    ----------
    spec : Spec
    radius : float
      Patch radius.
    window_radius : float
      R.
    center : Optional[Sequence[int]]
      Centre of the ball of translations, the origin by default.
    cap : int
    workers : int

    Returns
    -------
    Dict[int, int]
      Code to number of occurrences, ascending codes.

    """
    offsets = ball_points(radius, spec.dimension)
    if len(offsets) > MAX_CODE_BITS:
        raise ValueError(
            f"Patches of radius {radius} have {len(offsets)} window points; "
            f"at most {MAX_CODE_BITS} are supported"
        )
    reach = math.isqrt(ball_norm_bound(radius))
    center = None if center is None else tuple(int(c) for c in center)
    window = LatticeWindow.ball(window_radius, spec.dimension, center)
    lower, upper = window.bounding_box()
    required = math.prod(
        hi - lo + 1 + 2 * reach for lo, hi in zip(lower, upper)
    )
    if required > cap:
        raise WindowCapError(required=required, cap=cap)

    def kernel(slab: List[np.ndarray]) -> Counter:
        """Patch codes of one slab."""
        axes = [np.ravel(axis) for axis in slab]
        extended = np.meshgrid(
            *(np.arange(a[0] - reach, a[-1] + reach + 1) for a in axes),
            indexing="ij",
            sparse=True,
        )
        members = member_mask(spec, extended)
        codes = np.zeros(tuple(len(a) for a in axes), dtype=np.int64)
        for j, w in enumerate(offsets.tolist()):
            view = tuple(
                slice(reach + c, reach + c + len(a)) for c, a in zip(w, axes)
            )
            codes |= members[view].astype(np.int64) << j
        values, counts = np.unique(
            codes[window_mask(window, slab)], return_counts=True
        )
        return Counter(dict(zip(values.tolist(), counts.tolist())))

    total: Counter = Counter()
    for part in map_slabs(kernel, lower, upper, workers):
        total.update(part)
    return dict(sorted(total.items()))


def patch_code(patch: Patch) -> int:
    """Bit set of the patch points in window_points order."""
    offsets = window_points(patch.radius, patch.dimension)
    index = {x: j for j, x in enumerate(offsets)}
    return sum(1 << index[x] for x in patch.points)


def frequency_empirical(
    spec: Spec,
    patch: Patch,
    window_radius: float,
    center: Optional[Sequence[int]] = None,
    cap: int = 10**8,
    workers: int = 1,
) -> float:
    """
    Share of the t in B_R(center) whose patch equals the given one,
    normalised by the volume of B_R.
    Parameters
    ----------
    spec : Spec
    patch : Patch
    window_radius : float
      R >= 10 * patch radius.
    center : Optional[Sequence[int]]
    cap : int
    workers : int

    Returns
    -------
    float

    """
    if window_radius < 10 * patch.radius:
        raise ValueError(
            f"Empirical frequencies need R >= 10 * rho = "
            f"{10 * patch.radius}, got {window_radius}"
        )
    if not is_admissible(spec, patch.points)[0]:
        return 0.0
    counts = patch_code_counts(
        spec, patch.radius, window_radius, center, cap=cap, workers=workers
    )
    occurrences = counts.get(patch_code(patch), 0)
    return occurrences / ball_volume(window_radius, spec.dimension)


def patch_census(
    spec: Spec,
    radius: float,
    window_radius: float,
    cap: int = 10**8,
    workers: int = 1,
) -> Tuple[Dict[Patch, int], int]:
    """
    Every patch occurring at the t in B_R(0) with its count.
    Parameters
    ----------
    spec : Spec
    radius : float
    window_radius : float
    cap : int
    workers : int

    Returns
    -------
    Tuple[Dict[Patch, int], int]
      The census, ordered by patch code, and the number of distinct
      patches observed.

    """
    offsets = window_points(radius, spec.dimension)
    counts = patch_code_counts(
        spec, radius, window_radius, cap=cap, workers=workers
    )
    census = {}
    for code, count in counts.items():
        points = [x for j, x in enumerate(offsets) if code >> j & 1]
        patch = Patch(radius=radius, dimension=spec.dimension, points=points)
        census[patch] = count
    logger.info(f"Observed {len(census)} distinct patches of radius {radius}")
    return census, len(census)


def census_frame(
    census: Dict[Patch, int],
    window_radius: float,
    dimension: int,
    closed: Optional[Dict[Patch, FrequencyResult]] = None,
) -> pd.DataFrame:
    """Census as a table with columns patch, size, count, frequency and,
    when given, the closed form frequency with its tail error."""
    volume = ball_volume(window_radius, dimension)
    frame = pd.DataFrame(
        {
            "patch": [patch.key() for patch in census],
            "size": [len(patch) for patch in census],
            "count": list(census.values()),
            "frequency": [count / volume for count in census.values()],
        }
    )
    if closed is not None:
        frame["closed_form"] = [closed[patch].value for patch in census]
        frame["tail_error"] = [closed[patch].tail_error for patch in census]
    return frame
