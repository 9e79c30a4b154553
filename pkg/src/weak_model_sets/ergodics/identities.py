"""Residue class identities behind the ergodicity of the hull measure,
and the Cesaro averages whose limit expresses it."""

import logging
import math
from collections import Counter
from itertools import product
from typing import Iterable, Sequence, Tuple, Union

import numpy as np

from weak_model_sets.arith.primes import factorize
from weak_model_sets.ergodics.models import QPartition, Residue
from weak_model_sets.exceptions import WindowCapError
from weak_model_sets.patches.frequency import (
    explicit_limit,
    measure_B,
    tail_product,
)
from weak_model_sets.patches.models import Patch
from weak_model_sets.pointsets.sets import (
    check_window_cap,
    is_admissible,
    window_mask,
)
from weak_model_sets.pointsets.specs import (
    VISIBLE,
    BFree,
    KFree,
    LatticeWindow,
)

logger = logging.getLogger(__name__)

Spec = Union[KFree, BFree]

ENUMERATION_CAP = 10**6


def reduce_points(
    points: Iterable[Sequence[int]], modulus: int
) -> Tuple[Residue, ...]:
    """Distinct residues of the points, sorted."""
    return tuple(sorted({tuple(int(c) % modulus for c in x) for x in points}))


def q_counts(
    p_points: Iterable[Sequence[int]],
    q_points: Iterable[Sequence[int]],
    modulus: int,
    dimension: int = 2,
    cap: int = ENUMERATION_CAP,
) -> QPartition:
    """
    Classify every residue r of (Z^n)_m by S = {s in P_m : r + s in Q_m}.
    Parameters
    ----------
    p_points, q_points : Iterable[Sequence[int]]
      The finite sets P and Q.
    modulus : int
      m >= 2.
    dimension : int
    cap : int
      Largest m^n enumerated.

    Returns
    -------
    QPartition

    """
    if modulus < 2:
        raise ValueError(f"Modulus must be at least 2, got {modulus}")
    size = modulus**dimension
    if size > cap:
        raise WindowCapError(required=size, cap=cap)
    p_residues = reduce_points(p_points, modulus)
    q_residues = reduce_points(q_points, modulus)
    if not p_residues:
        return QPartition(
            modulus, dimension, p_residues, q_residues, {frozenset(): size}
        )
    shape = (modulus,) * dimension
    residues = np.indices(shape).reshape(dimension, -1).T
    q_table = np.zeros(shape, dtype=bool)
    if q_residues:
        q_table[tuple(np.array(q_residues).T)] = True
    hits = np.stack(
        [
            q_table[tuple(((residues + np.array(s)) % modulus).T)]
            for s in p_residues
        ],
        axis=1,
    )
    rows, counts = np.unique(hits, axis=0, return_counts=True)
    partition = {
        frozenset(s for s, bit in zip(p_residues, row) if bit): int(count)
        for row, count in zip(rows.tolist(), counts.tolist())
    }
    return QPartition(modulus, dimension, p_residues, q_residues, partition)


def verify_partition_total(p_points, q_points, modulus, dimension=2) -> bool:
    """The counts q_S add up to m^n."""
    partition = q_counts(p_points, q_points, modulus, dimension)
    return partition.total() == modulus**dimension


def verify_linear_identity(p_points, q_points, modulus, dimension=2) -> bool:
    """
    Check sum_S |S| q_S = |P_m| |Q_m| exactly.
    Parameters
    ----------
    p_points, q_points : Iterable[Sequence[int]]
    modulus : int
    dimension : int

    Returns
    -------
    bool

    """
    partition = q_counts(p_points, q_points, modulus, dimension)
    expected = len(partition.p_residues) * len(partition.q_residues)
    return partition.weighted_total() == expected


def product_identity_sides(
    p_points: Sequence[Sequence[int]],
    q_points: Sequence[Sequence[int]],
    d: int,
    dimension: int = 2,
) -> Tuple[int, int]:
    """
    Both sides of the product identity over the primes of a square-free d.
    Parameters
    ----------
    p_points, q_points : Sequence[Sequence[int]]
    d : int
      Square-free, d >= 1.
    dimension : int

    Returns
    -------
    Tuple[int, int]
      The multi-sum over (nu_p) of prod_p (nu_p + |Q_p|) sum_{|S| =
      |P_p| - nu_p} q_S, and prod_p (p^n |P_p| + p^n |Q_p| - |P_p||Q_p|).

    """
    factors = factorize(d)
    if any(exponent > 1 for _, exponent in factors):
        raise ValueError(f"{d} is not square-free")
    partitions = [
        q_counts(p_points, q_points, p, dimension) for p, _ in factors
    ]
    ranges = [range(len(part.p_residues) + 1) for part in partitions]
    left = 0
    for nus in product(*ranges):
        left += math.prod(
            (nu + len(part.q_residues))
            * part.count_by_size(len(part.p_residues) - nu)
            for nu, part in zip(nus, partitions)
        )
    right = math.prod(
        part.modulus**dimension * len(part.p_residues)
        + part.modulus**dimension * len(part.q_residues)
        - len(part.p_residues) * len(part.q_residues)
        for part in partitions
    )
    return left, right


def verify_product_identity(p_points, q_points, d, dimension=2) -> bool:
    """Check the product identity exactly in integers."""
    left, right = product_identity_sides(p_points, q_points, d, dimension)
    return left == right


def _class_view(
    residue: Sequence[int], modulus: int, lower: Sequence[int]
) -> Tuple[slice, ...]:
    """Positions of a box, starting at lower, congruent to residue."""
    return tuple(
        slice((r - lo) % modulus, None, modulus)
        for r, lo in zip(residue, lower)
    )


def cesaro_mean(
    p_patch: Patch,
    q_patch: Patch,
    window_radius: float,
    spec: Spec = VISIBLE,
    rel_err: float = 1e-10,
    cap: int = 10**8,
) -> float:
    """
    Average of measure((x + P) u Q) over the lattice points x of B_R(0).

    The sum is divided by the number of lattice points in B_R(0), not by
    the volume of B_R. The two normalisations differ by O(1/R) and share
    the limit.
    Parameters
    ----------
    p_patch, q_patch : Patch
    window_radius : float
    spec : Spec
    rel_err : float
    cap : int

    Returns
    -------
    float
      Sum over the lattice points of B_R(0) divided by their count.

    """
    n = spec.dimension
    window = LatticeWindow.ball(window_radius, n)
    check_window_cap(window, cap)
    lower, upper = window.bounding_box()
    shape = tuple(hi - lo + 1 for lo, hi in zip(lower, upper))
    p_array = p_patch.as_array()
    q_array = q_patch.as_array()
    reach = max(abs(c) for c in upper)
    largest = [
        int(np.abs(a).max()) if len(a) else 0 for a in (p_array, q_array)
    ]
    limit = max(
        reach + sum(largest),
        explicit_limit(spec, p_array),
        explicit_limit(spec, q_array),
        explicit_limit(
            spec, np.zeros((len(p_array) + len(q_array), n), dtype=np.int64)
        ),
    )
    values = np.ones(shape)
    scale = 1.0
    for m in spec.excluded_moduli(limit):
        index = m**n
        p_res = reduce_points(p_array.tolist(), m)
        q_res = reduce_points(q_array.tolist(), m)
        overlaps = Counter(
            tuple((b - a) % m for a, b in zip(s, q))
            for s in p_res
            for q in q_res
        )
        base = 1 - (len(p_res) + len(q_res)) / index
        if base > 0:
            scale *= base
            for residue, overlap in overlaps.items():
                corrected = 1 - (len(p_res) + len(q_res) - overlap) / index
                values[_class_view(residue, m, lower)] *= corrected / base
        else:
            factor = np.full(shape, base)
            for residue, overlap in overlaps.items():
                corrected = 1 - (len(p_res) + len(q_res) - overlap) / index
                factor[_class_view(residue, m, lower)] = corrected
            values *= factor
    values *= scale

    full = len(p_array) + len(q_array)
    full_tail = tail_product(spec, full, limit, rel_err).value
    values *= full_tail
    coincidences = Counter(
        tuple(int(b - a) for a, b in zip(s, q))
        for s in p_array.tolist()
        for q in q_array.tolist()
    )
    for x, overlap in coincidences.items():
        position = tuple(c - lo for c, lo in zip(x, lower))
        if all(0 <= c < size for c, size in zip(position, shape)):
            tail = tail_product(spec, full - overlap, limit, rel_err).value
            values[position] *= tail / full_tail if full_tail else 0.0

    axes = np.meshgrid(
        *(np.arange(lo, hi + 1) for lo, hi in zip(lower, upper)),
        indexing="ij",
        sparse=True,
    )
    inside = window_mask(window, axes)
    return math.fsum(values[inside]) / int(inside.sum())


def cesaro_residual(
    p_patch: Patch,
    q_patch: Patch,
    window_radius: float,
    spec: Spec = VISIBLE,
    rel_err: float = 1e-10,
    cap: int = 10**8,
) -> float:
    """
    Distance of the Cesaro average from measure_B(P) * measure_B(Q).
    Parameters
    ----------
    p_patch, q_patch : Patch
      Admissible patches.
    window_radius : float
    spec : Spec
    rel_err : float
    cap : int

    Returns
    -------
    float

    """
    for patch in (p_patch, q_patch):
        if not is_admissible(spec, patch.points)[0]:
            raise ValueError(f"Patch {patch.key()} is not admissible")
    product_value = (
        measure_B(spec, p_patch, rel_err).value
        * measure_B(spec, q_patch, rel_err).value
    )
    mean = cesaro_mean(p_patch, q_patch, window_radius, spec, rel_err, cap)
    logger.debug(f"Cesaro mean at R={window_radius}: {mean}")
    return abs(mean - product_value)
