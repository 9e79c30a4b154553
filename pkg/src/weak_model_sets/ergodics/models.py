"""Module defining residue configurations, q-partitions and JobSettings"""

from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, List, Literal, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from weak_model_sets.core_models import BaseJobSettings

Residue = Tuple[int, ...]


class ResidueConfiguration(BaseModel):
    """One coset of m Z^n for each modulus of a finite truncation."""

    model_config = ConfigDict(frozen=True)

    moduli: Tuple[int, ...]
    cosets: Tuple[Residue, ...]

    @model_validator(mode="before")
    @classmethod
    def reduce_cosets(cls, data: Any) -> Any:
        """Store canonical representatives in [0, m)."""
        if isinstance(data, dict) and "moduli" in data and "cosets" in data:
            data = dict(data)
            data["cosets"] = tuple(
                tuple(int(c) % int(m) for c in coset)
                for m, coset in zip(data["moduli"], data["cosets"])
            )
        return data

    @model_validator(mode="after")
    def check_cosets(self):
        """One coset per modulus, all of one dimension."""
        if len(self.moduli) != len(self.cosets):
            raise ValueError("Need exactly one coset per modulus")
        if any(m < 2 for m in self.moduli):
            raise ValueError("Moduli must be at least 2")
        if len({len(c) for c in self.cosets}) > 1:
            raise ValueError("Cosets differ in dimension")
        return self

    @property
    def dimension(self) -> int:
        """Rank of the lattice, 2 for an empty truncation."""
        return len(self.cosets[0]) if self.cosets else 2

    def coset(self, modulus: int) -> Residue:
        """Representative of the coset at a modulus."""
        return self.cosets[self.moduli.index(modulus)]


@dataclass(frozen=True)
class QPartition:
    """Classification of (Z^n)_m by the subset S of P_m for which a residue
    lies in Q_m - s."""

    modulus: int
    dimension: int
    p_residues: Tuple[Residue, ...]
    q_residues: Tuple[Residue, ...]
    counts: Dict[FrozenSet[Residue], int]

    def total(self) -> int:
        """Sum of the counts over all S."""
        return sum(self.counts.values())

    def weighted_total(self) -> int:
        """Sum of |S| times the count."""
        return sum(len(s) * q for s, q in self.counts.items())

    def count_by_size(self, size: int) -> int:
        """Sum of the counts over the S with |S| = size."""
        return sum(q for s, q in self.counts.items() if len(s) == size)


class ReportRow(BaseModel):
    """One line of a verification report."""

    identity: str
    parameters: str
    passed: bool
    residual: float = 0.0


class ErgoCheckJobSettings(BaseJobSettings):
    """Settings for the residue identity and ergodicity report."""

    job_settings_name: Literal["ErgoCheck"] = "ErgoCheck"
    trials: int = Field(default=100, ge=0)
    moduli: List[int] = [2, 3, 4, 5]
    cesaro_radii: List[float] = [100, 300, 1000]
    cesaro_bound: float = Field(default=0.01, gt=0)
    torus_prime_bound: int = Field(default=7, ge=2)
    torus_trials: int = Field(default=200, ge=0)
    translations: int = Field(default=20, ge=0)
