"""Exceptions raised by the lattice, spectral and number field modules."""

from typing import Optional


class WindowCapError(ValueError):
    """Raised when a window holds more lattice points than allowed."""

    def __init__(self, required: int, cap: int):
        """
        Class constructor
        Parameters
        ----------
        required : int
          Number of lattice points the computation would visit.
        cap : int
          Configured maximum.
        """
        self.required = required
        self.cap = cap
        super().__init__(
            f"Window holds {required} lattice points but the cap is {cap}. "
            f"Raise the cap to at least {required} or shrink the window."
        )


class NonCoprimeModuliError(ValueError):
    """Raised when a congruence system has two non-coprime moduli."""

    def __init__(self, first: int, second: int):
        """
        Class constructor
        Parameters
        ----------
        first : int
        second : int
          The offending pair of moduli.
        """
        self.pair = (first, second)
        super().__init__(
            f"Moduli {first} and {second} are not coprime "
            f"(gcd > 1); the congruences have no unique coset."
        )


class EulerProductError(ArithmeticError):
    """Base class for failures while evaluating an Euler product."""


class EulerDomainError(EulerProductError):
    """Raised when a local factor leaves the interval (0, 1]."""

    def __init__(self, name: str, prime: int, value: float):
        """
        Class constructor
        Parameters
        ----------
        name : str
          Name of the Euler product.
        prime : int
          First prime with an invalid factor.
        value : float
          The invalid factor.
        """
        self.prime = prime
        super().__init__(
            f"Euler factor of '{name}' at p={prime} is {value!r}, "
            f"outside (0, 1]."
        )


class EulerCutoffError(EulerProductError):
    """Raised when the requested precision needs an unreachable cutoff."""

    def __init__(self, name: str, rel_err: float, cutoff: Optional[int]):
        """
        Class constructor
        Parameters
        ----------
        name : str
          Name of the Euler product.
        rel_err : float
          Requested relative error.
        cutoff : Optional[int]
          The cutoff that would be required, if known.
        """
        self.cutoff = cutoff
        needed = "" if cutoff is None else f" (prime cutoff {cutoff})"
        super().__init__(
            f"Relative error {rel_err:g} for '{name}' cannot be certified "
            f"within the configured resources{needed}."
        )


class InclusionExclusionCapError(ValueError):
    """Raised when a frequency sum would need too many terms."""

    def __init__(self, free_points: int, cap: int):
        """
        Class constructor
        Parameters
        ----------
        free_points : int
          Number of window points outside the patch.
        cap : int
          Configured maximum.
        """
        self.free_points = free_points
        self.cap = cap
        super().__init__(
            f"The patch leaves {free_points} free window points, i.e. "
            f"2^{free_points} inclusion-exclusion terms, above the cap of "
            f"{cap}. Use the empirical frequency estimator instead."
        )


class NotInA1Error(ValueError):
    """Raised when a configuration does not miss exactly one coset."""

    def __init__(self, modulus: int, missing: int):
        """
        Class constructor
        Parameters
        ----------
        modulus : int
        missing : int
          Number of cosets of the modulus absent from the configuration.
        """
        self.modulus = modulus
        self.missing = missing
        super().__init__(
            f"not in A_1 at modulus {modulus}: {missing} cosets are missing"
        )


class GeneratorSearchError(RuntimeError):
    """Raised when no generator is found for a split prime."""
