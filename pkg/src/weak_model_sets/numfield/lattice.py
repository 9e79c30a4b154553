"""Minkowski embedding of Z[sqrt 2] and the embedded k-free integers."""

import logging
import math
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np

from weak_model_sets.arith.euler import euler_product
from weak_model_sets.arith.models import EulerProductResult
from weak_model_sets.exceptions import WindowCapError
from weak_model_sets.numfield.ideals import kfree_mask_nf
from weak_model_sets.numfield.models import (
    SQRT2,
    EmbeddedPoint,
    NfPointSet,
    QuadInt,
)
from weak_model_sets.numfield.zeta import dedekind_factor_spec
from weak_model_sets.pointsets.sets import map_slabs
from weak_model_sets.pointsets.specs import ball_norm_bound

logger = logging.getLogger(__name__)


def minkowski_embed(alpha: QuadInt) -> EmbeddedPoint:
    """j(alpha) = (alpha, alpha')."""
    return EmbeddedPoint(*alpha.embedded())


def lattice_basis() -> Tuple[EmbeddedPoint, EmbeddedPoint]:
    """Images (1, 1) and (sqrt 2, -sqrt 2) of the integral basis."""
    return minkowski_embed(QuadInt(1, 0)), minkowski_embed(QuadInt(0, 1))


def lattice_determinant() -> float:
    """Area of a fundamental cell of the embedded ring, 2 sqrt 2."""
    first, second = lattice_basis()
    basis = np.array([first.coordinates, second.coordinates])
    return abs(float(np.linalg.det(basis)))


def generate_nf(
    k: int, radius: float, cap: int = 10**8, workers: int = 1
) -> NfPointSet:
    """
    Embedded k-free integers inside the disk of the given radius.
    Parameters
    ----------
    k : int
      At least 2.
    radius : float
    cap : int
      Largest number of (a, b) pairs to visit.
    workers : int

    Returns
    -------
    NfPointSet

    """
    bound = ball_norm_bound(radius)
    # |j(a + b sqrt 2)|^2 = 2 a^2 + 4 b^2
    a_max = math.isqrt(bound // 2)
    b_max = math.isqrt(bound // 4)
    required = (2 * a_max + 1) * (2 * b_max + 1)
    if required > cap:
        raise WindowCapError(required=required, cap=cap)

    def kernel(slab: List[np.ndarray]) -> np.ndarray:
        """Members of one slab."""
        a, b = np.broadcast_arrays(*slab)
        keep = (2 * a * a + 4 * b * b <= bound) & kfree_mask_nf(a, b, k)
        return np.stack([a[keep], b[keep]], axis=1)

    parts = map_slabs(kernel, (-a_max, -b_max), (a_max, b_max), workers)
    pairs = np.concatenate(parts) if parts else np.empty((0, 2))
    pairs = pairs.astype(np.int64).reshape(-1, 2)
    logger.debug(f"Generated {len(pairs)} {k}-free integers of Z[sqrt 2]")
    return NfPointSet(k, radius, pairs[:, 0].copy(), pairs[:, 1].copy())


@lru_cache(maxsize=64)
def nf_density(k: int, rel_err: float = 1e-10) -> EulerProductResult:
    """Density of the embedded k-free integers, (1/(2 sqrt 2)) /
    zeta_K(k)."""
    product = euler_product(dedekind_factor_spec(k), rel_err)
    return EulerProductResult(
        value=product.value / (2 * SQRT2),
        certified_bound=product.certified_bound,
        cutoff=product.cutoff,
        method=product.method,
    )


def nf_entropy(
    k: int, rel_err: float = 1e-10, base: Optional[float] = None
) -> float:
    """Patch counting entropy log(2) times the density."""
    log_two = math.log(2) if base is None else math.log(2, base)
    return log_two * nf_density(k, rel_err).value
