"""Autocorrelation coefficients: closed form and counting oracle."""

import logging
import math
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from weak_model_sets.arith.euler import euler_product, inverse_zeta, xi_spec
from weak_model_sets.arith.primes import factorize, gcd_vector
from weak_model_sets.correlation.models import AutocorrSample
from weak_model_sets.pointsets.specs import BFree, KFree, LatticeWindow
from weak_model_sets.pointsets.sets import (
    ball_volume,
    check_window_cap,
    map_slabs,
    member_mask,
    window_mask,
)

logger = logging.getLogger(__name__)

Spec = Union[KFree, BFree]

CLOSED_FORM_REL_ERR = 1e-10
RECOMMENDED_MIN_RADIUS = 10


def eta_closed(x: Sequence[int]) -> float:
    """
    Autocorrelation coefficient of the visible points of Z^2.
    Parameters
    ----------
    x : Sequence[int]
      Shift in Z^2.

    Returns
    -------
    float
      xi * prod_{p | gcd(x)} (1 + 1/(p^2 - 2)), and 1/zeta(2) at x = 0.

    """
    if len(x) != 2:
        raise ValueError(
            "The closed form is known for the visible points of Z^2 only"
        )
    g = gcd_vector(x)
    if g == 0:
        return inverse_zeta(2, CLOSED_FORM_REL_ERR).value
    xi = euler_product(xi_spec(), CLOSED_FORM_REL_ERR).value
    return xi * math.prod(1 + 1 / (p * p - 2) for p, _ in factorize(g))


def eta_empirical(
    spec: Spec,
    x: Sequence[int],
    radius: float,
    cap: int = 10**8,
    workers: int = 1,
) -> AutocorrSample:
    """
    Count y in B_R(0) with y and y + x both in the point set.
    Parameters
    ----------
    spec : Spec
    x : Sequence[int]
      Shift.
    radius : float
      R > 0; values below 10 are allowed but noisy.
    cap : int
    workers : int

    Returns
    -------
    AutocorrSample
      Pair count divided by the volume of B_R.

    """
    if len(x) != spec.dimension:
        raise ValueError(
            f"Shift {tuple(x)} does not have dimension {spec.dimension}"
        )
    if radius <= 0:
        raise ValueError(f"Radius must be positive, got {radius}")
    if radius < RECOMMENDED_MIN_RADIUS:
        logger.warning(
            f"Radius {radius} is below {RECOMMENDED_MIN_RADIUS}; the "
            f"estimate is dominated by boundary effects"
        )
    window = LatticeWindow.ball(radius, spec.dimension)
    check_window_cap(window, cap)
    shift = [int(c) for c in x]

    def kernel(slab: List[np.ndarray]) -> int:
        """Pairs in one slab."""
        moved = [axis + c for axis, c in zip(slab, shift)]
        keep = (
            window_mask(window, slab)
            & member_mask(spec, slab)
            & member_mask(spec, moved)
        )
        return int(np.count_nonzero(keep))

    lower, upper = window.bounding_box()
    count = sum(map_slabs(kernel, lower, upper, workers))
    return AutocorrSample(
        shift=tuple(shift),
        value=count / ball_volume(radius, spec.dimension),
        radius_used=radius,
        pair_count=count,
    )


def autocorr_table(
    spec: Spec,
    shifts: Sequence[Sequence[int]],
    radius: float,
    cap: int = 10**8,
    workers: int = 1,
) -> List[AutocorrSample]:
    """eta_empirical for each shift, in the given order."""
    return [
        eta_empirical(spec, x, radius, cap=cap, workers=workers)
        for x in shifts
    ]


def autocorr_frame(
    samples: Sequence[AutocorrSample], closed_form: bool = False
) -> pd.DataFrame:
    """
    Tabulate samples with columns shift_0.., eta, R.
    Parameters
    ----------
    samples : Sequence[AutocorrSample]
    closed_form : bool
      Add an eta_closed column.

    Returns
    -------
    pd.DataFrame

    """
    dimension = len(samples[0].shift) if samples else 2
    columns = [f"shift_{i}" for i in range(dimension)] + ["eta", "R"]
    rows = [
        [*sample.shift, sample.value, sample.radius_used]
        for sample in samples
    ]
    frame = pd.DataFrame(rows, columns=columns)
    if closed_form:
        frame["eta_closed"] = [eta_closed(s.shift) for s in samples]
    return frame


def positive_definiteness_witness(
    spec: Spec,
    shifts: Sequence[Sequence[int]],
    coefficients: Sequence[complex],
    radius: float,
    cap: int = 10**8,
) -> float:
    """
    The form sum_{s,t} c_s conj(c_t) eta(s - t) with empirical eta.
    Parameters
    ----------
    spec : Spec
    shifts : Sequence[Sequence[int]]
    coefficients : Sequence[complex]
      One coefficient per shift.
    radius : float
    cap : int

    Returns
    -------
    float
      Real part of the form; nonnegative up to finite radius effects.

    """
    if len(shifts) != len(coefficients):
        raise ValueError("Need one coefficient per shift")
    cache: Dict[Tuple[int, ...], float] = {}
    total = 0j
    for s, c_s in zip(shifts, coefficients):
        for t, c_t in zip(shifts, coefficients):
            difference = tuple(int(a) - int(b) for a, b in zip(s, t))
            if difference not in cache:
                cache[difference] = eta_empirical(
                    spec, difference, radius, cap=cap
                ).value
            total += c_s * np.conj(c_t) * cache[difference]
    return float(np.real(total))
