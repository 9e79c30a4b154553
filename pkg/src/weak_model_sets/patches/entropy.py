"""Patch counting entropy."""

import math
from typing import Optional, Union

from weak_model_sets.pointsets.sets import density
from weak_model_sets.pointsets.specs import BFree, KFree


def entropy_formula(
    spec: Union[KFree, BFree],
    rel_err: float = 1e-10,
    base: Optional[float] = None,
) -> float:
    """
    Patch counting entropy log(2) * density.
    Parameters
    ----------
    spec : Union[KFree, BFree]
    rel_err : float
      Relative error of the density.
    base : Optional[float]
      Logarithm base; natural logarithm when None. Base 2 gives the
      density itself.

    Returns
    -------
    float

    """
    log_two = math.log(2) if base is None else math.log(2, base)
    return log_two * density(spec, rel_err).value
