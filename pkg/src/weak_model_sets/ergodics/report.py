"""Seeded verification report over the residue identities, the Cesaro
ladder and the torus round trip."""

import logging
import math
from typing import List, Sequence, Union

import numpy as np
import pandas as pd

from weak_model_sets.ergodics.identities import (
    cesaro_residual,
    product_identity_sides,
    q_counts,
)
from weak_model_sets.ergodics.models import ReportRow
from weak_model_sets.ergodics.torus import (
    config_theta,
    random_configuration,
    torus_phi,
    translate_configuration,
    truncation_moduli,
)
from weak_model_sets.exceptions import WindowCapError
from weak_model_sets.patches.models import Patch
from weak_model_sets.pointsets.specs import BFree, KFree, LatticeWindow

logger = logging.getLogger(__name__)

Spec = Union[KFree, BFree]

SQUARE_FREE_PRODUCTS = (2, 3, 5, 6, 10, 15, 30)


def _random_points(
    rng: np.random.Generator, dimension: int, span: int, most: int = 4
) -> List[tuple]:
    """Up to most distinct points in [0, span)^n."""
    size = int(rng.integers(0, most + 1))
    points = rng.integers(0, span, size=(size, dimension))
    return sorted({tuple(int(c) for c in x) for x in points})


def identity_rows(
    rng: np.random.Generator,
    trials: int,
    moduli: Sequence[int],
    dimension: int = 2,
) -> List[ReportRow]:
    """
    Exact checks of the partition total and the two residue identities on
    random pairs of finite sets.
    Parameters
    ----------
    rng : np.random.Generator
    trials : int
    moduli : Sequence[int]
    dimension : int

    Returns
    -------
    List[ReportRow]
      One row per identity, residual counting the failed trials.

    """
    failures = {"partition_total": 0, "linear": 0, "product": 0}
    for _ in range(trials):
        m = int(rng.choice(moduli))
        p_points = _random_points(rng, dimension, m)
        q_points = _random_points(rng, dimension, m)
        partition = q_counts(p_points, q_points, m, dimension)
        if partition.total() != m**dimension:
            failures["partition_total"] += 1
        expected = len(partition.p_residues) * len(partition.q_residues)
        if partition.weighted_total() != expected:
            failures["linear"] += 1
        d = int(rng.choice(SQUARE_FREE_PRODUCTS))
        left, right = product_identity_sides(
            p_points, q_points, d, dimension
        )
        if left != right:
            logger.debug(
                f"Product identity failed for d={d}: {left} != {right}"
            )
            failures["product"] += 1
    parameters = f"trials={trials};moduli={','.join(map(str, moduli))}"
    return [
        ReportRow(
            identity=name,
            parameters=parameters,
            passed=count == 0,
            residual=float(count),
        )
        for name, count in failures.items()
    ]


def cesaro_rows(
    spec: Spec,
    radii: Sequence[float],
    bound: float,
    rel_err: float,
    cap: int,
) -> List[ReportRow]:
    """
    Residuals of the Cesaro averages for P = Q = {0} over growing radii.
    Parameters
    ----------
    spec : Spec
    radii : Sequence[float]
      Increasing radii.
    bound : float
      Largest residual accepted at the last radius.
    rel_err : float
    cap : int

    Returns
    -------
    List[ReportRow]

    """
    origin = Patch(
        radius=0, dimension=spec.dimension, points=[(0,) * spec.dimension]
    )
    residuals = []
    rows = []
    for radius in radii:
        residual = cesaro_residual(origin, origin, radius, spec, rel_err, cap)
        logger.info(f"Cesaro residual at R={radius}: {residual:.3e}")
        residuals.append(residual)
        rows.append(
            ReportRow(
                identity="cesaro",
                parameters=f"R={radius}",
                passed=True,
                residual=residual,
            )
        )
    decreasing = all(b < a for a, b in zip(residuals, residuals[1:]))
    final = residuals[-1] if residuals else 0.0
    rows.append(
        ReportRow(
            identity="cesaro_limit",
            parameters=f"bound={bound}",
            passed=decreasing and final <= bound,
            residual=final,
        )
    )
    return rows


def torus_window(
    moduli: Sequence[int], dimension: int, cap: int
) -> LatticeWindow:
    """Box whose side is the product of the moduli."""
    side = math.prod(moduli)
    if side**dimension > cap:
        raise WindowCapError(required=side**dimension, cap=cap)
    return LatticeWindow.box((0,) * dimension, (side - 1,) * dimension)


def torus_rows(
    spec: Spec,
    rng: np.random.Generator,
    prime_bound: int,
    trials: int,
    translations: int,
    cap: int,
) -> List[ReportRow]:
    """
    Round trip of random configurations through the window and back, and
    equivariance under random translations.
    Parameters
    ----------
    spec : Spec
    rng : np.random.Generator
    prime_bound : int
    trials : int
    translations : int
    cap : int

    Returns
    -------
    List[ReportRow]

    """
    n = spec.dimension
    moduli = truncation_moduli(spec, prime_bound)
    window = torus_window(moduli, n, cap)
    lower, upper = window.bounding_box()
    round_trip = 0
    for _ in range(trials):
        y = random_configuration(moduli, n, rng)
        if config_theta(torus_phi(y, window), window, moduli) != y:
            round_trip += 1
    equivariance = 0
    side = upper[0] + 1
    for _ in range(translations):
        y = random_configuration(moduli, n, rng)
        t = tuple(int(c) for c in rng.integers(-side, side, size=n))
        moved = LatticeWindow.box(
            tuple(a + b for a, b in zip(lower, t)),
            tuple(a + b for a, b in zip(upper, t)),
        )
        points = torus_phi(y, window) + np.asarray(t)
        if config_theta(points, moved, moduli) != translate_configuration(
            y, t
        ):
            equivariance += 1
    parameters = f"moduli={','.join(map(str, moduli))}"
    return [
        ReportRow(
            identity="torus_round_trip",
            parameters=f"{parameters};trials={trials}",
            passed=round_trip == 0,
            residual=float(round_trip),
        ),
        ReportRow(
            identity="torus_equivariance",
            parameters=f"{parameters};translations={translations}",
            passed=equivariance == 0,
            residual=float(equivariance),
        ),
    ]


def verification_report(
    spec: Spec,
    seed: int,
    trials: int = 100,
    moduli: Sequence[int] = (2, 3, 4, 5),
    cesaro_radii: Sequence[float] = (100, 300, 1000),
    cesaro_bound: float = 0.01,
    torus_primes: int = 7,
    torus_trials: int = 200,
    translations: int = 20,
    rel_err: float = 1e-10,
    cap: int = 10**8,
) -> List[ReportRow]:
    """
    Run every check with one seeded generator.
    Parameters
    ----------
    spec : Spec
    seed : int
    trials : int
      Random (P, Q) pairs for the residue identities.
    moduli : Sequence[int]
    cesaro_radii : Sequence[float]
    cesaro_bound : float
    torus_primes : int
      Largest prime of the torus truncation.
    torus_trials : int
    translations : int
    rel_err : float
    cap : int

    Returns
    -------
    List[ReportRow]

    """
    rng = np.random.default_rng(seed)
    rows = identity_rows(rng, trials, moduli, spec.dimension)
    rows.extend(cesaro_rows(spec, cesaro_radii, cesaro_bound, rel_err, cap))
    rows.extend(
        torus_rows(spec, rng, torus_primes, torus_trials, translations, cap)
    )
    return rows


def report_frame(rows: Sequence[ReportRow]) -> pd.DataFrame:
    """Rows as a frame with columns identity, parameters, passed and
    residual."""
    return pd.DataFrame(
        [row.model_dump() for row in rows],
        columns=["identity", "parameters", "passed", "residual"],
    )
