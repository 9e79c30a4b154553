"""Bragg peaks of the embedded k-free integers of Q(sqrt 2)."""

import logging
import math
from fractions import Fraction
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from weak_model_sets.numfield.ideals import (
    denominator_ideal,
    factor_quadint,
    normalize,
    prime_ideals_up_to,
)
from weak_model_sets.numfield.lattice import nf_density
from weak_model_sets.numfield.models import (
    SQRT2,
    DenominatorIdeal,
    KElement,
    NfAtom,
    PrimeIdealZr2,
    QuadInt,
)

logger = logging.getLogger(__name__)


def relative_intensity_nf(denominator: DenominatorIdeal, k: int) -> float:
    """I(l) / I(0): zero unless the denominator is (k+1)-free, else the
    square of the product of 1 / (N(p)^k - 1) over its prime ideals."""
    if not denominator.is_power_free(k + 1):
        return 0.0
    return math.prod(
        1.0 / (ideal.norm**k - 1) ** 2 for ideal, _ in denominator.factors
    )


def intensity_nf(element: KElement, k: int, rel_err: float = 1e-10) -> float:
    """
    Diffraction intensity of the embedded k-free integers at j(element).
    Parameters
    ----------
    element : KElement
      Exact preimage of the peak position.
    k : int
      At least 2.
    rel_err : float

    Returns
    -------
    float

    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    denominator = denominator_ideal(element)
    density = nf_density(k, rel_err).value
    return density**2 * relative_intensity_nf(denominator, k)


def _ideal_products(
    ideals: Sequence[PrimeIdealZr2], k: int, budget: float
) -> Iterator[List[Tuple[PrimeIdealZr2, int]]]:
    """Factorisations with exponents up to k whose product of
    N(p)^k - 1 stays within budget."""
    if not ideals:
        yield []
        return
    first, rest = ideals[0], ideals[1:]
    yield from _ideal_products(rest, k, budget)
    weight = first.norm**k - 1
    if weight > budget:
        return
    for exponent in range(1, k + 1):
        for tail in _ideal_products(rest, k, budget / weight):
            yield [(first, exponent)] + tail


def nf_denominators(k: int, threshold: float) -> List[DenominatorIdeal]:
    """
    Every (k+1)-free ideal whose peaks reach threshold times I(0).
    Parameters
    ----------
    k : int
    threshold : float
      In (0, 1].

    Returns
    -------
    List[DenominatorIdeal]
      Ordered by norm.

    """
    if not 0 < threshold <= 1:
        raise ValueError(f"Threshold must lie in (0, 1], got {threshold}")
    budget = 1 / math.sqrt(threshold)
    norm_bound = math.floor((budget + 1) ** (1 / k) + 1e-9)
    ideals = prime_ideals_up_to(norm_bound) if norm_bound >= 2 else []
    ideals = [ideal for ideal in ideals if ideal.norm**k - 1 <= budget]
    denominators = []
    for factors in _ideal_products(ideals, k, budget):
        generator = QuadInt(1, 0)
        for ideal, exponent in factors:
            generator = generator * ideal.generator**exponent
        generator = normalize(generator)
        denominators.append(
            DenominatorIdeal(generator, tuple(factor_quadint(generator)))
        )
    return sorted(denominators, key=lambda d: (d.norm, d.generator.b))


def _candidates(
    generator: QuadInt, lower: Sequence[float], upper: Sequence[float]
) -> Iterator[KElement]:
    """Elements (sqrt 2 / 4) x / generator, x in Z[sqrt 2], whose
    embedding lies in the box."""
    g, g_conjugate = generator.embedded()
    reach = max(abs(c) for c in list(lower) + list(upper))
    # x = 2 sqrt 2 * element * generator
    x_bound = 2 * SQRT2 * reach * abs(g)
    x_conjugate_bound = 2 * SQRT2 * reach * abs(g_conjugate)
    a_max = math.ceil((x_bound + x_conjugate_bound) / 2) + 1
    b_max = math.ceil((x_bound + x_conjugate_bound) / (2 * SQRT2)) + 1
    a, b = np.meshgrid(
        np.arange(-a_max, a_max + 1),
        np.arange(-b_max, b_max + 1),
        indexing="ij",
    )
    a, b = a.ravel(), b.ravel()
    first = SQRT2 / 4 * (a + b * SQRT2) / g
    second = -SQRT2 / 4 * (a - b * SQRT2) / g_conjugate
    slack = 1e-9
    keep = (
        (first >= lower[0] - slack)
        & (first <= upper[0] + slack)
        & (second >= lower[1] - slack)
        & (second <= upper[1] + slack)
    )
    conjugate = generator.conjugate()
    n = generator.norm()
    for x in zip(a[keep].tolist(), b[keep].tolist()):
        # sqrt 2 (c + d sqrt 2) / (4 n) with c + d sqrt 2 = x * g'
        y = QuadInt(*x) * conjugate
        element = KElement(Fraction(2 * y.b, 4 * n), Fraction(y.a, 4 * n))
        u, v = element.embedded()
        if lower[0] <= u <= upper[0] and lower[1] <= v <= upper[1]:
            yield element


def nf_support_enumerate(
    k: int,
    lower: Sequence[float],
    upper: Sequence[float],
    threshold: float = 1e-6,
    rel_err: float = 1e-10,
) -> List[NfAtom]:
    """
    Bragg peaks inside a box of the embedding plane with intensity at
    least threshold times I(0).
    Parameters
    ----------
    k : int
    lower, upper : Sequence[float]
      Closed box bounds.
    threshold : float
    rel_err : float

    Returns
    -------
    List[NfAtom]
      Sorted by position.

    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    peak = nf_density(k, rel_err).value ** 2
    atoms = []
    for denominator in nf_denominators(k, threshold):
        relative = relative_intensity_nf(denominator, k)
        if relative < threshold:
            continue
        target = denominator.exponents()
        for element in _candidates(denominator.generator, lower, upper):
            if denominator_ideal(element).exponents() == target:
                atoms.append(NfAtom(element, denominator, peak * relative))
    logger.debug(f"{len(atoms)} peaks above relative intensity {threshold}")
    return sorted(atoms, key=lambda atom: atom.plane_coordinates)
