"""The Dedekind zeta function of Q(sqrt 2) as a certified Euler
product."""

from functools import lru_cache
from typing import List

import numpy as np

from weak_model_sets.arith.euler import character_values, euler_product
from weak_model_sets.arith.models import (
    EulerFactorSpec,
    EulerProductResult,
    SeriesTerm,
)


def dedekind_factor_spec(s: float) -> EulerFactorSpec:
    """
    1/zeta_K(s) as a product over rational primes: 1 - 2^-s at 2,
    (1 - p^-s)^2 for split p and 1 - p^-2s for inert p.
    Parameters
    ----------
    s : float
      Greater than 1.

    Returns
    -------
    EulerFactorSpec

    """
    if s <= 1:
        raise ValueError(f"zeta_K(s) needs s > 1, got {s}")

    def factor(p: np.ndarray) -> np.ndarray:
        """Local factor of a rational prime."""
        chi = character_values(p, "kronecker8")
        split = (1 - p**-s) ** 2
        inert = 1 - p ** (-2 * s)
        ramified = 1 - p**-s
        return np.where(chi > 0, split, np.where(chi < 0, inert, ramified))

    def log_series(order: int) -> List[SeriesTerm]:
        """Terms of order j; (1 + chi) / 2 picks the split primes and
        (1 - chi) / 2 the inert ones."""
        return [
            SeriesTerm(-1 / order, order * s, "principal"),
            SeriesTerm(-1 / order, order * s, "kronecker8"),
            SeriesTerm(-1 / (2 * order), 2 * order * s, "principal"),
            SeriesTerm(1 / (2 * order), 2 * order * s, "kronecker8"),
        ]

    return EulerFactorSpec(
        name=f"1/zeta_Q(sqrt2)({s:g})",
        factor=factor,
        decay_constant=2,
        decay_exponent=s,
        log_series=log_series,
    )


def invert_product(result: EulerProductResult) -> EulerProductResult:
    """Reciprocal of a certified product; the bound e becomes e/(1-e)."""
    bound = result.certified_bound
    inverted = bound / (1 - bound) if bound < 1 else float("inf")
    return EulerProductResult(
        value=1 / result.value,
        certified_bound=inverted,
        cutoff=result.cutoff,
        method=result.method,
    )


@lru_cache(maxsize=256)
def dedekind_zeta(s: float, rel_err: float = 1e-10) -> EulerProductResult:
    """
    zeta_K(s) for K = Q(sqrt 2) with certified relative error.
    Parameters
    ----------
    s : float
      Greater than 1.
    rel_err : float

    Returns
    -------
    EulerProductResult

    """
    return invert_product(euler_product(dedekind_factor_spec(s), rel_err))
