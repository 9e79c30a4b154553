"""Module defining point set specifications, windows and point sets"""

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import (
    Annotated,
    Any,
    FrozenSet,
    List,
    Literal,
    Optional,
    Tuple,
    Union,
)

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from weak_model_sets.arith.primes import integer_root, primes_up_to

# Slack on squared radii so that radii given in decimal hit integer norms.
BALL_EPSILON = 1e-9


class KFree(BaseModel):
    """Lattice points of Z^n whose coordinate gcd has no k-th power
    factor. Visible points are n=2, k=1."""

    model_config = ConfigDict(frozen=True)

    variant: Literal["kfree"] = "kfree"
    dimension: int = Field(..., ge=1)
    power: int = Field(..., ge=1)

    @model_validator(mode="after")
    def check_nontrivial(self):
        """Exclude n = k = 1, where only +1 and -1 survive."""
        if self.dimension * self.power == 1:
            raise ValueError("KFree needs dimension * power > 1")
        return self

    @property
    def label(self) -> str:
        """Compact text form."""
        if self.dimension == 2 and self.power == 1:
            return "visible"
        return f"kfree:{self.dimension},{self.power}"

    @property
    def sieve_exponent(self) -> int:
        """Exponent n*k of the excluded index p^(nk)."""
        return self.dimension * self.power

    def excluded_moduli(self, limit: int) -> List[int]:
        """Moduli p^k not exceeding limit, ascending."""
        if limit < 2:
            return []
        return [
            p**self.power
            for p in primes_up_to(integer_root(limit, self.power))
        ]


class BFree(BaseModel):
    """Lattice points of Z^n whose coordinate gcd has no divisor in the
    finite, pairwise coprime set B."""

    model_config = ConfigDict(frozen=True)

    variant: Literal["bfree"] = "bfree"
    dimension: int = Field(..., ge=1)
    moduli: Tuple[int, ...]

    @model_validator(mode="after")
    def check_moduli(self):
        """Moduli are at least 2, ascending and pairwise coprime."""
        if any(b < 2 for b in self.moduli):
            raise ValueError("B-free moduli must be at least 2")
        if list(self.moduli) != sorted(set(self.moduli)):
            raise ValueError("B-free moduli must be strictly ascending")
        for first, second in combinations(self.moduli, 2):
            if math.gcd(first, second) != 1:
                raise ValueError(
                    f"B-free moduli {first} and {second} are not coprime"
                )
        return self

    @property
    def label(self) -> str:
        """Compact text form."""
        moduli = ",".join(str(b) for b in self.moduli)
        return f"bfree:{self.dimension}:{moduli}"

    @property
    def sieve_exponent(self) -> int:
        """Exponent n of the excluded index b^n."""
        return self.dimension

    def excluded_moduli(self, limit: int) -> List[int]:
        """Elements of B not exceeding limit, ascending."""
        return [b for b in self.moduli if b <= limit]


FreenessSpec = Annotated[Union[KFree, BFree], Field(discriminator="variant")]

VISIBLE = KFree(dimension=2, power=1)


def parse_spec(text: str) -> Union[KFree, BFree]:
    """
    Parse the compact text form of a point set.
    Parameters
    ----------
    text : str
      'visible', 'squarefree', 'kfree:n,k' or 'bfree:n:b1,b2,...'

    Returns
    -------
    Union[KFree, BFree]

    """
    text = text.strip().lower()
    if text == "visible":
        return VISIBLE
    if text == "squarefree":
        return KFree(dimension=1, power=2)
    kind, _, rest = text.partition(":")
    try:
        if kind == "kfree":
            dimension, power = (int(v) for v in rest.split(","))
            return KFree(dimension=dimension, power=power)
        if kind == "bfree":
            dimension, moduli = rest.split(":")
            return BFree(
                dimension=int(dimension),
                moduli=tuple(int(b) for b in moduli.split(",")),
            )
    except ValueError as e:
        raise ValueError(f"Malformed point set '{text}': {e}") from e
    raise ValueError(
        f"Unknown point set '{text}'; expected visible, kfree:n,k or "
        f"bfree:n:b1,b2,..."
    )


def ball_norm_bound(radius: float) -> int:
    """Largest squared norm inside the closed ball of the given radius."""
    return math.floor(radius * radius + BALL_EPSILON)


class LatticeWindow(BaseModel):
    """A ball centred at a lattice point or an integer box."""

    model_config = ConfigDict(frozen=True)

    dimension: int = Field(..., ge=1)
    radius: Optional[float] = Field(default=None, ge=0)
    center: Optional[Tuple[int, ...]] = None
    lower: Optional[Tuple[int, ...]] = None
    upper: Optional[Tuple[int, ...]] = None

    @model_validator(mode="after")
    def check_shape(self):
        """Exactly one of ball and box is given, in the right dimension."""
        is_ball = self.radius is not None
        is_box = self.lower is not None or self.upper is not None
        if is_ball == is_box:
            raise ValueError("A window is either a ball or a box")
        vectors = [self.center] if is_ball else [self.lower, self.upper]
        for vector in vectors:
            if vector is not None and len(vector) != self.dimension:
                raise ValueError(
                    f"Window vector {vector} does not have dimension "
                    f"{self.dimension}"
                )
        if is_box and (self.lower is None or self.upper is None):
            raise ValueError("A box window needs lower and upper bounds")
        return self

    @classmethod
    def ball(
        cls,
        radius: float,
        dimension: int,
        center: Optional[Tuple[int, ...]] = None,
    ) -> "LatticeWindow":
        """Closed ball B_radius(center)."""
        return cls(dimension=dimension, radius=radius, center=center)

    @classmethod
    def box(
        cls, lower: Tuple[int, ...], upper: Tuple[int, ...]
    ) -> "LatticeWindow":
        """Integer box with inclusive bounds."""
        return cls(
            dimension=len(lower), lower=tuple(lower), upper=tuple(upper)
        )

    @property
    def is_ball(self) -> bool:
        """True for ball windows."""
        return self.radius is not None

    @property
    def origin(self) -> Tuple[int, ...]:
        """Centre of a ball window."""
        return self.center or (0,) * self.dimension

    def bounding_box(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """Inclusive integer bounds containing the window."""
        if self.is_ball:
            reach = math.isqrt(ball_norm_bound(self.radius))
            return (
                tuple(c - reach for c in self.origin),
                tuple(c + reach for c in self.origin),
            )
        return self.lower, self.upper

    @property
    def is_empty(self) -> bool:
        """True when no lattice point can lie in the window."""
        lower, upper = self.bounding_box()
        return any(lo > hi for lo, hi in zip(lower, upper))

    def box_size(self) -> int:
        """Number of lattice points of the bounding box."""
        if self.is_empty:
            return 0
        lower, upper = self.bounding_box()
        return math.prod(hi - lo + 1 for lo, hi in zip(lower, upper))

    def contains_ball(self, center: Tuple[int, ...], radius: float) -> bool:
        """True if every lattice point of B_radius(center) is inside."""
        reach = math.isqrt(ball_norm_bound(radius))
        if self.is_ball:
            distance = math.dist(center, self.origin)
            return distance + reach <= self.radius + BALL_EPSILON
        return all(
            lo <= c - reach and c + reach <= hi
            for c, lo, hi in zip(center, self.lower, self.upper)
        )


@dataclass(frozen=True, eq=False)
class PointSet:
    """Members of a point set inside a window, in lexicographic order."""

    spec: Union[KFree, BFree]
    window: LatticeWindow
    points: np.ndarray

    def __len__(self) -> int:
        """Number of points."""
        return len(self.points)

    @cached_property
    def _lookup(self) -> FrozenSet[Tuple[int, ...]]:
        """Points as a hashable set."""
        return frozenset(self.as_tuples())

    def __contains__(self, x: Any) -> bool:
        """Membership among the generated points."""
        return tuple(int(c) for c in x) in self._lookup

    def as_tuples(self) -> List[Tuple[int, ...]]:
        """Points as tuples of Python ints."""
        return [tuple(row) for row in self.points.tolist()]
