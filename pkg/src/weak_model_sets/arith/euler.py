"""Certified evaluation of Euler products over the rational primes."""

import json
import logging
import math
import os
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np
from scipy.special import zeta, zetac

from weak_model_sets.arith.models import (
    Character,
    EulerFactorSpec,
    EulerProductResult,
    SeriesTerm,
)
from weak_model_sets.arith.primes import moebius, prime_array
from weak_model_sets.exceptions import EulerCutoffError, EulerDomainError

logger = logging.getLogger(__name__)

DEFAULT_MAX_CUTOFF = 10**8
ACCELERATED_CUTOFF = 1000
# Floating point allowance on the logarithm of an accelerated product.
ROUNDING_ALLOWANCE = 1e-14
_MAX_SERIES_ORDER = 200
_NEGLIGIBLE = 1e-18


def character_values(primes: np.ndarray, character: Character) -> np.ndarray:
    """Values of the principal or the real mod 8 character at primes."""
    if character == "principal":
        return np.ones(len(primes))
    residues = np.mod(primes, 8)
    values = np.zeros(len(primes))
    values[(residues == 1) | (residues == 7)] = 1.0
    values[(residues == 3) | (residues == 5)] = -1.0
    return values


def _log_l_function(s: float, character: Character, power: int) -> float:
    """log L(s, chi^power) for the supported characters."""
    if character == "principal":
        return math.log1p(zetac(s))
    if power % 2 == 0:
        # chi^2 is the principal character mod 8.
        return math.log1p(zetac(s)) + math.log1p(-(2.0**-s))
    hurwitz = (
        zeta(s, 1 / 8) - zeta(s, 3 / 8) - zeta(s, 5 / 8) + zeta(s, 7 / 8)
    )
    return math.log(8.0**-s * hurwitz)


def _integral_tail(exponent: float, beyond: int) -> float:
    """Upper bound of sum_{n > beyond} n^(-exponent)."""
    return beyond ** (1.0 - exponent) / (exponent - 1.0)


@lru_cache(maxsize=4096)
def prime_zeta_tail(t: float, beyond: int, character: Character) -> float:
    """
    Sum of chi(p) p^(-t) over the primes p > beyond.
    Parameters
    ----------
    t : float
      Exponent, greater than 1.
    beyond : int
      Primes up to this bound are excluded.
    character : Character
      'principal' or 'kronecker8'.

    Returns
    -------
    float

    """
    if t <= 1:
        raise ValueError(f"prime zeta needs t > 1, got {t}")
    if _integral_tail(t, beyond) < _NEGLIGIBLE:
        return 0.0
    total = 0.0
    m = 1
    while 2.0 ** (-m * t) > _NEGLIGIBLE:
        mu = moebius(m)
        if mu:
            total += mu / m * _log_l_function(m * t, character, m)
        m += 1
    primes = prime_array(beyond).astype(np.float64)
    explicit = float(
        np.sum(character_values(primes, character) * primes ** (-t))
    )
    return total - explicit


def _log_partial_product(spec: EulerFactorSpec, primes: np.ndarray) -> float:
    """Sum of log(factor(p)) over the given primes."""
    if len(primes) == 0:
        return 0.0
    values = np.asarray(spec.factor(primes.astype(np.float64)), dtype=float)
    bad = np.flatnonzero((values <= 0) | (values > 1))
    if len(bad):
        index = int(bad[0])
        raise EulerDomainError(spec.name, int(primes[index]), values[index])
    return float(np.sum(np.log(values)))


def certified_cutoff(spec: EulerFactorSpec, rel_err: float) -> int:
    """
    Smallest cutoff whose integral tail bound certifies rel_err.
    Parameters
    ----------
    spec : EulerFactorSpec
    rel_err : float

    Returns
    -------
    int

    """
    c, s = spec.decay_constant, spec.decay_exponent
    if c == 0:
        return max(spec.threshold, 2)
    target = math.log1p(rel_err)
    cutoff = math.ceil((2 * c / ((s - 1) * target)) ** (1 / (s - 1)))
    # |log(1 - x)| <= 2x needs x <= 1/2.
    cutoff = max(cutoff, math.ceil((2 * c) ** (1 / s)), spec.threshold, 2)
    while cutoff > 2 and _tail_log_bound(spec, cutoff - 1) <= target:
        cutoff -= 1
    return cutoff


def _tail_log_bound(spec: EulerFactorSpec, cutoff: int) -> float:
    """Bound of |log| of the factors beyond cutoff."""
    return (
        2
        * spec.decay_constant
        * _integral_tail(spec.decay_exponent, cutoff)
    )


def _accelerated_product(
    spec: EulerFactorSpec, rel_err: float
) -> EulerProductResult:
    """Explicit product up to a modest cutoff, tail through prime zeta."""
    if rel_err <= 2 * ROUNDING_ALLOWANCE:
        raise EulerCutoffError(spec.name, rel_err, None)
    cutoff = max(ACCELERATED_CUTOFF, spec.threshold)
    log_value = _log_partial_product(spec, prime_array(cutoff))
    target = math.log1p(rel_err) / 2
    previous = math.inf
    remainder = 0.0
    for order in range(1, _MAX_SERIES_ORDER + 1):
        terms = spec.log_series(order)
        remainder = sum(
            abs(term.coefficient) * _integral_tail(term.exponent, cutoff)
            for term in terms
        )
        log_value += sum(
            term.coefficient
            * prime_zeta_tail(term.exponent, cutoff, term.character)
            for term in terms
            if term.coefficient
        )
        if remainder <= target and remainder <= previous / 2:
            break
        previous = remainder
    else:
        raise EulerCutoffError(spec.name, rel_err, None)
    logger.debug(
        f"{spec.name}: {order} series orders beyond p={cutoff}, "
        f"remainder {remainder:.3e}"
    )
    return EulerProductResult(
        value=math.exp(log_value),
        certified_bound=math.expm1(remainder + ROUNDING_ALLOWANCE),
        cutoff=cutoff,
        method="accelerated",
    )


def euler_product(
    spec: EulerFactorSpec,
    rel_err: float,
    max_cutoff: int = DEFAULT_MAX_CUTOFF,
    accelerate: bool = True,
) -> EulerProductResult:
    """
    Evaluate the product of factor(p) over all primes.
    Parameters
    ----------
    spec : EulerFactorSpec
      Factor and decay bound.
    rel_err : float
      Relative error to certify, positive.
    max_cutoff : int
      Largest prime cutoff the literal truncation may sieve to.
    accelerate : bool
      Use the logarithmic series of the factor when it is available.

    Returns
    -------
    EulerProductResult

    """
    if rel_err <= 0:
        raise ValueError(f"rel_err must be positive, got {rel_err}")
    if spec.decay_constant == 0:
        cutoff = max(spec.threshold, 2)
        value = math.exp(_log_partial_product(spec, prime_array(cutoff)))
        return EulerProductResult(
            value=value, certified_bound=0.0, cutoff=cutoff, method="exact"
        )
    if accelerate and spec.log_series is not None:
        return _accelerated_product(spec, rel_err)
    cutoff = certified_cutoff(spec, rel_err)
    if cutoff > max_cutoff:
        raise EulerCutoffError(spec.name, rel_err, cutoff)
    log_value = _log_partial_product(spec, prime_array(cutoff))
    logger.debug(f"{spec.name}: truncated at p <= {cutoff}")
    return EulerProductResult(
        value=math.exp(log_value),
        certified_bound=math.expm1(_tail_log_bound(spec, cutoff)),
        cutoff=cutoff,
        method="truncated",
    )


def power_factor_spec(
    count: float, exponent: float, threshold: int = 2
) -> EulerFactorSpec:
    """
    Product of (1 - count p^(-exponent)) over the primes p >= threshold.
    Parameters
    ----------
    count : float
      Numerator c, nonnegative.
    exponent : float
      Exponent s > 1.
    threshold : int
      Primes below it contribute the factor 1.

    Returns
    -------
    EulerFactorSpec

    """

    def factor(p: np.ndarray) -> np.ndarray:
        """Local factor."""
        return np.where(p >= threshold, 1.0 - count * p**-exponent, 1.0)

    def log_series(order: int) -> List[SeriesTerm]:
        """Terms of -sum_j (c p^-s)^j / j."""
        return [SeriesTerm(-(count**order) / order, order * exponent)]

    return EulerFactorSpec(
        name=f"prod(1-{count:g}p^-{exponent:g}, p>={threshold})",
        factor=factor,
        decay_constant=count,
        decay_exponent=exponent,
        threshold=threshold,
        log_series=log_series,
    )


def inverse_zeta_spec(s: float) -> EulerFactorSpec:
    """1/zeta(s) as the product of (1 - p^-s)."""
    return power_factor_spec(1, s)


def xi_spec() -> EulerFactorSpec:
    """The autocorrelation constant, product of (1 - 2 p^-2)."""
    return power_factor_spec(2, 2)


@lru_cache(maxsize=256)
def inverse_zeta(s: float, rel_err: float) -> EulerProductResult:
    """1/zeta(s) with certified error."""
    return euler_product(inverse_zeta_spec(s), rel_err)


class EulerConstantCache:
    """JSON file cache of named Euler constants. The directory defaults to
    the WMS_CACHE_DIR environment variable; without either no file is
    used."""

    FILE_NAME = "euler_constants.json"

    def __init__(self, directory: Optional[Union[Path, str]] = None):
        """
        Class constructor
        Parameters
        ----------
        directory : Optional[Union[Path, str]]
          Cache directory.
        """
        if directory is None:
            directory = os.getenv("WMS_CACHE_DIR")
        self.directory = None if directory is None else Path(directory)

    @property
    def path(self) -> Optional[Path]:
        """Location of the cache file."""
        if self.directory is None:
            return None
        return self.directory / self.FILE_NAME

    def _read(self) -> Dict[str, dict]:
        """Cached entries, empty on a missing or unreadable file."""
        if self.path is None or not self.path.is_file():
            return {}
        try:
            with open(self.path, "r") as f:
                return json.load(f)
        except (json.JSONDecodeError, IOError) as e:
            logging.warning(f"Ignoring Euler cache {self.path}: {e}")
            return {}

    @staticmethod
    def key(spec: EulerFactorSpec, rel_err: float) -> str:
        """Cache key of a product at a precision."""
        return f"{spec.name}@{rel_err:.3e}"

    def get_or_compute(
        self, spec: EulerFactorSpec, rel_err: float
    ) -> EulerProductResult:
        """
        Look up a product, computing and storing it on a miss.
        Parameters
        ----------
        spec : EulerFactorSpec
        rel_err : float

        Returns
        -------
        EulerProductResult

        """
        entries = self._read()
        key = self.key(spec, rel_err)
        if key in entries:
            logger.debug(f"Euler cache hit for {key}")
            return EulerProductResult.model_validate(entries[key])
        result = euler_product(spec, rel_err)
        if self.path is not None:
            entries[key] = result.model_dump()
            self.directory.mkdir(parents=True, exist_ok=True)
            with open(self.path, "w") as f:
                json.dump(entries, f, indent=2, sort_keys=True)
        return result
