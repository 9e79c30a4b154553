"""Finite truncations of the compact torus model of the hull: the map
from configurations to residue cosets and back."""

import logging
from typing import List, Sequence, Union

import numpy as np

from weak_model_sets.arith.primes import primes_up_to
from weak_model_sets.ergodics.models import ResidueConfiguration
from weak_model_sets.exceptions import NotInA1Error
from weak_model_sets.pointsets.specs import BFree, KFree, LatticeWindow

logger = logging.getLogger(__name__)

Spec = Union[KFree, BFree]


def truncation_moduli(spec: Spec, prime_bound: int = 7) -> List[int]:
    """
    Moduli of a finite truncation of the torus.
    Parameters
    ----------
    spec : Spec
    prime_bound : int
      k-free sets use p^k for the primes p <= prime_bound.

    Returns
    -------
    List[int]

    """
    if isinstance(spec, BFree):
        return list(spec.moduli)
    return [int(p) ** spec.power for p in primes_up_to(prime_bound)]


def _window_coordinates(window: LatticeWindow) -> np.ndarray:
    """All lattice points of a box window as an (N, n) array."""
    if window.is_ball:
        raise ValueError("Torus configurations are read off box windows")
    lower, upper = window.bounding_box()
    grids = np.meshgrid(
        *(np.arange(lo, hi + 1) for lo, hi in zip(lower, upper)),
        indexing="ij",
    )
    return np.stack([g.ravel() for g in grids], axis=1)


def torus_phi(
    configuration: ResidueConfiguration, window: LatticeWindow
) -> np.ndarray:
    """
    Points of the window avoiding every coset of the configuration.
    Parameters
    ----------
    configuration : ResidueConfiguration
    window : LatticeWindow
      A box window.

    Returns
    -------
    np.ndarray
      Lexicographic (N, n) array.

    """
    points = _window_coordinates(window)
    keep = np.ones(len(points), dtype=bool)
    for m, coset in zip(configuration.moduli, configuration.cosets):
        keep &= ~np.all(points % m == np.asarray(coset), axis=1)
    return points[keep]


def config_theta(
    points: np.ndarray, window: LatticeWindow, moduli: Sequence[int]
) -> ResidueConfiguration:
    """
    Recover the configuration whose image is the given point set.
    Parameters
    ----------
    points : np.ndarray
      Points of a configuration inside a box window.
    window : LatticeWindow
      The box the points were read from; it must contain a full residue
      system for every modulus.
    moduli : Sequence[int]

    Returns
    -------
    ResidueConfiguration

    Raises
    ------
    NotInA1Error
      When some modulus misses other than exactly one coset.

    """
    lower, upper = window.bounding_box()
    points = np.asarray(points, dtype=np.int64).reshape(-1, len(lower))
    cosets = []
    for m in moduli:
        if any(hi - lo + 1 < m for lo, hi in zip(lower, upper)):
            raise ValueError(
                f"Window {lower}..{upper} holds no full residue system mod {m}"
            )
        seen = np.zeros((m,) * len(lower), dtype=bool)
        if len(points):
            seen[tuple((points % m).T)] = True
        missing = [tuple(int(c) for c in r) for r in np.argwhere(~seen)]
        if len(missing) != 1:
            raise NotInA1Error(m, len(missing))
        cosets.append(missing[0])
    return ResidueConfiguration(moduli=tuple(moduli), cosets=tuple(cosets))


def translate_configuration(
    configuration: ResidueConfiguration, t: Sequence[int]
) -> ResidueConfiguration:
    """The configuration of the translated point set, cosets moved by t."""
    return ResidueConfiguration(
        moduli=configuration.moduli,
        cosets=tuple(
            tuple(c + int(s) for c, s in zip(coset, t))
            for coset in configuration.cosets
        ),
    )


def random_configuration(
    moduli: Sequence[int], dimension: int, rng: np.random.Generator
) -> ResidueConfiguration:
    """Uniform coset for each modulus."""
    return ResidueConfiguration(
        moduli=tuple(moduli),
        cosets=tuple(
            tuple(int(c) for c in rng.integers(0, m, size=dimension))
            for m in moduli
        ),
    )
