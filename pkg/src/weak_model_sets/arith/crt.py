"""Chinese remainder theorem for lattice residue classes."""

from itertools import combinations
from math import gcd
from typing import Sequence, Tuple

from weak_model_sets.arith.models import ResidueVector
from weak_model_sets.exceptions import NonCoprimeModuliError


def crt_solve(
    congruences: Sequence[ResidueVector],
) -> Tuple[Tuple[int, ...], int]:
    """
    Solve t = target_i (mod m_i Z^n) for pairwise coprime moduli.
    Parameters
    ----------
    congruences : Sequence[ResidueVector]
      Targets with their moduli; all of one dimension.

    Returns
    -------
    Tuple[Tuple[int, ...], int]
      The solution with coordinates in [0, M) and M, the product of the
      moduli.

    """
    if not congruences:
        raise ValueError("crt_solve needs at least one congruence")
    dimensions = {c.dimension for c in congruences}
    if len(dimensions) != 1:
        raise ValueError(f"Congruences mix dimensions {sorted(dimensions)}")
    for first, second in combinations(congruences, 2):
        if gcd(first.modulus, second.modulus) != 1:
            raise NonCoprimeModuliError(first.modulus, second.modulus)

    solution = [0] * dimensions.pop()
    modulus = 1
    for congruence in congruences:
        m = congruence.modulus
        inverse = pow(modulus, -1, m) if m > 1 else 0
        solution = [
            s + modulus * (((t - s) * inverse) % m)
            for s, t in zip(solution, congruence.coordinates)
        ]
        modulus *= m
    return tuple(s % modulus for s in solution), modulus
