"""Diffraction intensities, support enumeration and Fourier sum oracle."""

import logging
import math
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, List, Union

import numpy as np

from weak_model_sets.arith.primes import factorize, is_k_free_integer
from weak_model_sets.diffraction.models import (
    DiffractionAtom,
    RationalPoint,
    SpectralWindow,
)
from weak_model_sets.pointsets.sets import (
    ball_volume,
    check_window_cap,
    density,
    map_slabs,
    member_mask,
    window_mask,
)
from weak_model_sets.pointsets.specs import BFree, KFree, LatticeWindow

logger = logging.getLogger(__name__)

Spec = Union[KFree, BFree]

MIN_ORACLE_RADIUS = 50


@lru_cache(maxsize=64)
def _density(spec: Spec, rel_err: float) -> float:
    """Cached density value."""
    return density(spec, rel_err).value


def relative_intensity(spec: Spec, denominator: int) -> float:
    """
    I(l) / I(0) for a point l with the given denominator.
    Parameters
    ----------
    spec : Spec
    denominator : int

    Returns
    -------
    float
      0 outside the support.

    """
    if isinstance(spec, KFree):
        if not is_k_free_integer(denominator, spec.power + 1):
            return 0.0
        index = [p**spec.sieve_exponent for p, _ in factorize(denominator)]
    else:
        if math.prod(spec.moduli) % denominator:
            return 0.0
        index = [
            b**spec.dimension
            for b in spec.moduli
            if math.gcd(denominator, b) != 1
        ]
    return math.prod(1.0 / (m - 1) for m in index) ** 2


def intensity(
    spec: Spec, point: RationalPoint, rel_err: float = 1e-10
) -> float:
    """
    Intensity of the Bragg peak at a rational point.
    Parameters
    ----------
    spec : Spec
    point : RationalPoint
    rel_err : float
      Precision of the density factor.

    Returns
    -------
    float
      (dens * prod 1/(m^n - 1))^2 over the moduli meeting the
      denominator, and 0 off the support.

    """
    if point.dimension != spec.dimension:
        raise ValueError(
            f"Point {point} does not have dimension {spec.dimension}"
        )
    return _density(spec, rel_err) ** 2 * relative_intensity(
        spec, point.denominator
    )


def _kfree_denominators(spec: KFree, threshold: float) -> Iterator[int]:
    """(k+1)-free denominators whose relative intensity reaches threshold."""
    budget = 1.0 / threshold
    exponent = spec.sieve_exponent

    def extend(radical_primes: List[int], weight: float, start: int):
        """Depth first over radicals with increasing primes."""
        yield radical_primes
        p = start
        while True:
            factor = float(p**exponent - 1) ** 2
            if weight * factor > budget:
                return
            if all(p % q for q in range(2, math.isqrt(p) + 1)):
                yield from extend(radical_primes + [p], weight * factor, p + 1)
            p += 1

    for primes in extend([], 1.0, 2):
        for exponents in product(range(1, spec.power + 1), repeat=len(primes)):
            yield math.prod(p**e for p, e in zip(primes, exponents))


def _bfree_denominators(spec: BFree, threshold: float) -> Iterator[int]:
    """Divisors of products of B whose relative intensity reaches
    threshold."""
    budget = 1.0 / threshold
    moduli = spec.moduli
    for size in range(len(moduli) + 1):
        for chosen in combinations(moduli, size):
            weight = math.prod(
                float(b**spec.dimension - 1) ** 2 for b in chosen
            )
            if weight > budget:
                continue
            divisor_sets = [
                [e for e in range(2, b + 1) if b % e == 0] for b in chosen
            ]
            for parts in product(*divisor_sets):
                yield math.prod(parts)


def admissible_denominators(spec: Spec, threshold: float) -> List[int]:
    """
    Denominators d with I(l)/I(0) >= threshold, ascending.
    Parameters
    ----------
    spec : Spec
    threshold : float
      In (0, 1].

    Returns
    -------
    List[int]

    """
    if not 0 < threshold <= 1:
        raise ValueError(
            f"Relative threshold must lie in (0, 1], got {threshold}; a "
            f"threshold of 0 asks for an unbounded enumeration"
        )
    if isinstance(spec, KFree):
        candidates = _kfree_denominators(spec, threshold)
    else:
        candidates = _bfree_denominators(spec, threshold)
    return sorted(
        d
        for d in set(candidates)
        if relative_intensity(spec, d) >= threshold
    )


def _atoms_with_denominator(
    spec: Spec,
    window: SpectralWindow,
    denominator: int,
    rel_err: float,
) -> List[DiffractionAtom]:
    """Atoms of one exact denominator inside the window."""
    ranges = window.numerator_ranges(denominator)
    if any(len(r) == 0 for r in ranges):
        return []
    grid = np.meshgrid(
        *(np.arange(r.start, r.stop, dtype=np.int64) for r in ranges),
        indexing="ij",
    )
    g = np.full(grid[0].shape, denominator, dtype=np.int64)
    for axis in grid:
        g = np.gcd(g, axis)
    reduced = g.ravel() == 1
    numerators = np.stack([axis.ravel() for axis in grid], axis=1)[reduced]
    value = intensity(
        spec, RationalPoint(numerator=(0,) * spec.dimension), rel_err
    ) * relative_intensity(spec, denominator)
    return [
        DiffractionAtom(
            position=RationalPoint(
                numerator=tuple(row), denominator=denominator
            ),
            intensity=value,
        )
        for row in numerators.tolist()
    ]


def support_enumerate(
    spec: Spec,
    window: SpectralWindow,
    threshold: float,
    rel_err: float = 1e-10,
) -> List[DiffractionAtom]:
    """
    All Bragg peaks in a window with I(l)/I(0) >= threshold.
    Parameters
    ----------
    spec : Spec
    window : SpectralWindow
    threshold : float
      Relative threshold in (0, 1].
    rel_err : float

    Returns
    -------
    List[DiffractionAtom]
      Ordered by denominator, then lexicographic numerator.

    """
    if window.dimension != spec.dimension:
        raise ValueError("Spectral window and point set differ in dimension")
    atoms = []
    for d in admissible_denominators(spec, threshold):
        atoms.extend(_atoms_with_denominator(spec, window, d, rel_err))
    logger.debug(f"Enumerated {len(atoms)} atoms above {threshold:g}")
    return atoms


def support_oracle(
    spec: Spec,
    window: SpectralWindow,
    threshold: float,
    max_denominator: int,
    rel_err: float = 1e-10,
) -> List[DiffractionAtom]:
    """
    Exhaustive scan of every rational point with denominator up to
    max_denominator, kept when its intensity passes the threshold.
    Parameters
    ----------
    spec : Spec
    window : SpectralWindow
    threshold : float
    max_denominator : int
    rel_err : float

    Returns
    -------
    List[DiffractionAtom]
      Same order as support_enumerate.

    """
    origin = RationalPoint(numerator=(0,) * spec.dimension)
    peak = intensity(spec, origin, rel_err)
    atoms = []
    for d in range(1, max_denominator + 1):
        for numerator in product(*window.numerator_ranges(d)):
            point = RationalPoint(numerator=numerator, denominator=d)
            if point.denominator != d:
                continue
            value = intensity(spec, point, rel_err)
            if value > 0 and value / peak >= threshold:
                atoms.append(DiffractionAtom(position=point, intensity=value))
    return atoms


def fourier_sum_oracle(
    spec: Spec,
    point: RationalPoint,
    radius: float,
    cap: int = 10**8,
    workers: int = 1,
) -> float:
    """
    |(1/vol B_R) sum_{x in set, |x| <= R} exp(-2 pi i l.x)|^2.
    Parameters
    ----------
    spec : Spec
    point : RationalPoint
      The frequency l.
    radius : float
      R >= 50.
    cap : int
    workers : int

    Returns
    -------
    float

    """
    if radius < MIN_ORACLE_RADIUS:
        raise ValueError(
            f"Fourier sums need R >= {MIN_ORACLE_RADIUS}, got {radius}"
        )
    window = LatticeWindow.ball(radius, spec.dimension)
    check_window_cap(window, cap)
    d = point.denominator
    numerator = [a % d for a in point.numerator]

    def kernel(slab: List[np.ndarray]) -> np.ndarray:
        """Members of one slab counted by phase class."""
        keep = member_mask(spec, slab) & window_mask(window, slab)
        phase = sum(a * axis for a, axis in zip(numerator, slab)) % d
        phase = np.broadcast_to(phase, keep.shape)
        return np.bincount(phase[keep], minlength=d)

    lower, upper = window.bounding_box()
    counts = np.zeros(d, dtype=np.int64)
    for part in map_slabs(kernel, lower, upper, workers):
        counts += part
    angles = -2 * math.pi * np.arange(d) / d
    real = math.fsum(counts * np.cos(angles))
    imaginary = math.fsum(counts * np.sin(angles))
    volume = ball_volume(radius, spec.dimension)
    return (real * real + imaginary * imaginary) / (volume * volume)
