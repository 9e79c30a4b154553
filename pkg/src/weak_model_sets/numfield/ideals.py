"""Prime ideals of Z[sqrt 2], valuations, k-free tests and denominator
ideals. Z[sqrt 2] is a principal ideal domain, so every ideal is handled
through a generator."""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from weak_model_sets.arith.primes import factorize, integer_root, primes_up_to
from weak_model_sets.exceptions import GeneratorSearchError
from weak_model_sets.numfield.models import (
    SQRT2,
    UNIT,
    DenominatorIdeal,
    KElement,
    PrimeIdealZr2,
    QuadInt,
)

logger = logging.getLogger(__name__)

ROOT_TWO = QuadInt(0, 1)
# |x / x'| of (1 + sqrt 2); balanced generators keep |g / g'| within it.
_UNIT_RATIO = 1 + SQRT2


def classify_prime(p: int) -> str:
    """Ramified for 2, split for p = +-1 mod 8, inert for p = +-3 mod 8."""
    if p == 2:
        return "ramified"
    if p % 8 in (1, 7):
        return "split"
    return "inert"


def balance(g: QuadInt) -> QuadInt:
    """Associate of g with |g| and |g'| as close as a unit allows."""
    if g.is_zero():
        return g
    x, x_conjugate = g.embedded()
    if x_conjugate == 0 or x == 0:
        return g
    steps = round(math.log(abs(x / x_conjugate)) / (2 * math.log(_UNIT_RATIO)))
    if steps > 0:
        return g * (QuadInt(-1, 1) ** steps)
    if steps < 0:
        return g * (UNIT**-steps)
    return g


def normalize(g: QuadInt) -> QuadInt:
    """Balanced associate with a > 0, or a = 0 and b > 0."""
    g = balance(g)
    if g.a < 0 or (g.a == 0 and g.b < 0):
        return -g
    return g


def split_generator(p: int) -> QuadInt:
    """
    A generator a + b sqrt 2 with |a^2 - 2 b^2| = p of a prime over a
    split p, found by bounded search.
    Parameters
    ----------
    p : int
      Prime with p = +-1 mod 8.

    Returns
    -------
    QuadInt

    """
    bound = math.isqrt(2 * p) + 1
    for b in range(1, bound + 1):
        for target in (p + 2 * b * b, 2 * b * b - p):
            if target <= 0:
                continue
            a = math.isqrt(target)
            if a * a == target:
                return QuadInt(a, b)
    raise GeneratorSearchError(
        f"No generator of norm +-{p} with |b| <= {bound}"
    )


@lru_cache(maxsize=None)
def prime_ideals_over(p: int) -> Tuple[PrimeIdealZr2, ...]:
    """The prime ideals dividing the rational prime p."""
    kind = classify_prime(p)
    if kind == "ramified":
        return (PrimeIdealZr2("ramified", 2, ROOT_TWO, 2),)
    if kind == "inert":
        return (PrimeIdealZr2("inert", p, QuadInt(p, 0), p * p),)
    g = split_generator(p)
    return (
        PrimeIdealZr2("split", p, g, p),
        PrimeIdealZr2("split", p, g.conjugate(), p),
    )


def prime_ideals_up_to(norm_bound: int) -> List[PrimeIdealZr2]:
    """
    Every prime ideal of norm at most norm_bound.
    Parameters
    ----------
    norm_bound : int

    Returns
    -------
    List[PrimeIdealZr2]
      Sorted by norm, then rational prime; conjugate pairs adjacent.

    """
    if norm_bound < 2:
        raise ValueError(f"Norm bound must be at least 2, got {norm_bound}")
    ideals = [
        ideal
        for p in primes_up_to(norm_bound)
        for ideal in prime_ideals_over(p)
        if ideal.norm <= norm_bound
    ]
    return sorted(ideals, key=lambda ideal: (ideal.norm, ideal.p))


def ideal_valuation(alpha: QuadInt, ideal: PrimeIdealZr2) -> int:
    """
    Exponent of a prime ideal in the factorisation of (alpha).
    Parameters
    ----------
    alpha : QuadInt
      Nonzero.
    ideal : PrimeIdealZr2

    Returns
    -------
    int

    """
    if alpha.is_zero():
        raise ValueError("The valuation of 0 is infinite")
    valuation = 0
    quotient = alpha.exact_div(ideal.generator)
    while quotient is not None:
        valuation += 1
        alpha = quotient
        quotient = alpha.exact_div(ideal.generator)
    return valuation


def factor_quadint(alpha: QuadInt) -> List[Tuple[PrimeIdealZr2, int]]:
    """Prime ideal factorisation of (alpha), from the rational primes
    dividing its norm."""
    if alpha.is_zero():
        raise ValueError("0 has no factorisation")
    factors = []
    for p, _ in factorize(abs(alpha.norm())):
        for ideal in prime_ideals_over(p):
            valuation = ideal_valuation(alpha, ideal)
            if valuation:
                factors.append((ideal, valuation))
    return factors


def is_kfree_nf(alpha: QuadInt, k: int) -> bool:
    """
    Whether no k-th power of a prime ideal contains alpha.
    Parameters
    ----------
    alpha : QuadInt
      Nonzero; units are k-free.
    k : int
      At least 2.

    Returns
    -------
    bool

    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    return all(e < k for _, e in factor_quadint(alpha))


def kfree_mask_nf(a: np.ndarray, b: np.ndarray, k: int) -> np.ndarray:
    """
    Vectorised k-free test of a + b sqrt 2; zero is never k-free.
    Parameters
    ----------
    a, b : np.ndarray
      Broadcastable integer arrays.
    k : int

    Returns
    -------
    np.ndarray

    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    norms = np.abs(a * a - 2 * b * b)
    mask = np.broadcast_to(norms != 0, norms.shape).copy()
    largest = int(norms.max()) if norms.size else 0
    bound = integer_root(largest, k)
    if bound < 2:
        return mask
    for ideal in prime_ideals_up_to(bound):
        power = normalize(ideal.generator**k)
        modulus = abs(power.norm())
        conjugate = power.conjugate()
        left = a * conjugate.a + 2 * b * conjugate.b
        right = a * conjugate.b + b * conjugate.a
        mask &= ~((left % modulus == 0) & (right % modulus == 0))
    return mask


def quad_gcd(x: QuadInt, y: QuadInt) -> QuadInt:
    """Greatest common divisor by Euclidean division, up to units."""
    while not y.is_zero():
        x, y = y, x - y * x.round_div(y)
    return x


def denominator_ideal(element: KElement) -> DenominatorIdeal:
    """
    The ideal of x with x * element in the dual module, which is
    (sqrt 2 / 4) Z[sqrt 2].
    Parameters
    ----------
    element : KElement

    Returns
    -------
    DenominatorIdeal
      The whole ring for element 0.

    """
    if element.is_zero():
        return DenominatorIdeal(QuadInt(1, 0), ())
    # 2 sqrt(2) (r + s sqrt 2) = 4 s + 2 r sqrt 2
    rational = 4 * element.s
    irrational = 2 * element.r
    scale = math.lcm(rational.denominator, irrational.denominator)
    beta = QuadInt(int(rational * scale), int(irrational * scale))
    common = quad_gcd(QuadInt(scale, 0), beta)
    generator = normalize(QuadInt(scale, 0).exact_div(common))
    if generator.is_unit():
        return DenominatorIdeal(QuadInt(1, 0), ())
    return DenominatorIdeal(generator, tuple(factor_quadint(generator)))


def dual_module_basis() -> Tuple[KElement, KElement]:
    """Basis 1/2 and sqrt(2)/4 of the trace dual of Z[sqrt 2]."""
    return KElement(Fraction(1, 2), Fraction(0)), KElement(
        Fraction(0), Fraction(1, 4)
    )
