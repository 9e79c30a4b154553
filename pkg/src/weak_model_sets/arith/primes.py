"""Prime sieves, factorisation and the Moebius function."""

import logging
import math
from functools import lru_cache, reduce
from typing import Iterator, List, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

_SEGMENT_SIZE = 1 << 20


def _simple_sieve(limit: int) -> np.ndarray:
    """Primes up to limit with a plain Eratosthenes sieve."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return np.flatnonzero(sieve).astype(np.int64)


@lru_cache(maxsize=32)
def prime_array(limit: int) -> np.ndarray:
    """
    Primes up to limit from a segmented sieve.
    Parameters
    ----------
    limit : int

    Returns
    -------
    np.ndarray
      Read-only ascending int64 array.

    """
    if limit < 2:
        primes = np.empty(0, dtype=np.int64)
        primes.flags.writeable = False
        return primes
    base = _simple_sieve(math.isqrt(limit))
    chunks = []
    for low in range(0, limit + 1, _SEGMENT_SIZE):
        high = min(low + _SEGMENT_SIZE, limit + 1)
        is_prime = np.ones(high - low, dtype=bool)
        if low == 0:
            is_prime[: min(2, high)] = False
        for p in base:
            p = int(p)
            if p * p >= high:
                break
            start = max(p * p, -(-low // p) * p)
            is_prime[start - low :: p] = False
        chunks.append(np.flatnonzero(is_prime) + low)
    primes = np.concatenate(chunks).astype(np.int64)
    logger.debug(f"Sieved {len(primes)} primes up to {limit}")
    primes.flags.writeable = False
    return primes


def primes_up_to(limit: int) -> List[int]:
    """
    Ordered list of the primes p <= limit.
    Parameters
    ----------
    limit : int

    Returns
    -------
    List[int]

    """
    if limit < 0:
        raise ValueError(f"limit must be nonnegative, got {limit}")
    return prime_array(limit).tolist()


def _small_primes(bound: int) -> np.ndarray:
    """Primes up to bound, sieved in power-of-two blocks for caching."""
    sieve_limit = 1 << max(bound, 2).bit_length()
    primes = prime_array(sieve_limit)
    return primes[: np.searchsorted(primes, bound, side="right")]


def iter_primes() -> Iterator[int]:
    """All primes in ascending order, from cached sieves of growing size."""
    bound = 1 << 10
    seen = 0
    while True:
        primes = _small_primes(bound)
        yield from primes[seen:].tolist()
        seen = len(primes)
        bound <<= 2


def first_primes(count: int) -> List[int]:
    """The first count primes."""
    bound = 16
    while True:
        primes = _small_primes(bound)
        if len(primes) >= count:
            return primes[:count].tolist()
        bound *= 2


def integer_root(value: int, degree: int) -> int:
    """Largest r >= 0 with r**degree <= value."""
    if value < 0 or degree < 1:
        raise ValueError("integer_root needs value >= 0 and degree >= 1")
    if value < 2 or degree == 1:
        return value
    root = int(round(value ** (1.0 / degree)))
    while root**degree > value:
        root -= 1
    while (root + 1) ** degree <= value:
        root += 1
    return root


def factorize(n: int) -> List[Tuple[int, int]]:
    """
    Prime factorisation by trial division.
    Parameters
    ----------
    n : int
      Positive integer.

    Returns
    -------
    List[Tuple[int, int]]
      Pairs (prime, exponent) in ascending order of the prime.

    """
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    factors = []
    remaining = n
    for p in _small_primes(math.isqrt(n)).tolist():
        if p * p > remaining:
            break
        if remaining % p == 0:
            exponent = 0
            while remaining % p == 0:
                remaining //= p
                exponent += 1
            factors.append((p, exponent))
    if remaining > 1:
        factors.append((remaining, 1))
    return factors


def moebius(n: int) -> int:
    """
    Moebius function.
    Parameters
    ----------
    n : int
      Positive integer; 0 is rejected.

    Returns
    -------
    int
      0 if n has a square factor, else (-1) to the number of primes.

    """
    if n < 1:
        raise ValueError(f"moebius is defined for n >= 1, got {n}")
    factors = factorize(n)
    if any(exponent > 1 for _, exponent in factors):
        return 0
    return -1 if len(factors) % 2 else 1


def gcd_vector(x: Sequence[int]) -> int:
    """gcd of the coordinates; 0 for the zero vector."""
    return reduce(math.gcd, (abs(int(c)) for c in x), 0)


def is_k_free_integer(n: int, k: int) -> bool:
    """
    True if no prime power p^k divides n >= 1.
    Parameters
    ----------
    n : int
    k : int

    Returns
    -------
    bool
      Found by trial division that stops at the first p^k dividing n, so
      numbers with a small k-th power factor are settled at once however
      large they are.

    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if n < 1:
        raise ValueError(f"is_k_free_integer needs n >= 1, got {n}")
    if k == 1:
        return n == 1
    remaining = n
    for p in iter_primes():
        if p**k > remaining:
            return True
        if remaining % p == 0:
            exponent = 0
            while remaining % p == 0:
                remaining //= p
                exponent += 1
            if exponent >= k:
                return False
    return True


def radical(n: int) -> int:
    """Product of the distinct primes dividing n."""
    return math.prod(p for p, _ in factorize(n))
