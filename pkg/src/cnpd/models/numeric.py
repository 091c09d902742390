"""Numeric verification models."""

from enum import Enum

import mpmath
from pydantic import BaseModel, ConfigDict, Field, model_validator


class GramMode(str, Enum):
    """Which kernel a Gram matrix samples."""

    KERNEL = "kernel"
    ONE_MINUS_INV = "one_minus_inv"


class GramMatrix(BaseModel):
    """Square complex matrix of kernel values."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    size: int = Field(..., ge=0, description="Number of sample points")
    entries: tuple[tuple[mpmath.mpc, ...], ...] = Field(
        ..., description="Complex entries by row"
    )

    @model_validator(mode="after")
    def check_square(self) -> "GramMatrix":
        if len(self.entries) != self.size or any(
            len(row) != self.size for row in self.entries
        ):
            raise ValueError("Gram matrix must be square of the stated size")
        return self

    @classmethod
    def from_rows(
        cls, rows: list[list[complex | int | float | mpmath.mpc]]
    ) -> "GramMatrix":
        """Build from nested lists, storing complex entries."""
        entries = tuple(tuple(mpmath.mpc(v) for v in row) for row in rows)
        return cls(size=len(entries), entries=entries)

    def entry(self, i: int, j: int) -> mpmath.mpc:
        return self.entries[i][j]

    def max_abs(self) -> mpmath.mpf:
        return max(
            (abs(v) for row in self.entries for v in row), default=mpmath.mpf(0)
        )

    def to_matrix(self) -> mpmath.matrix:
        return mpmath.matrix([list(row) for row in self.entries])


class PSDResult(BaseModel):
    """Outcome of the eigenvalue positivity test."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    is_psd: bool = Field(..., description="Smallest eigenvalue clears -tol")
    min_eigenvalue: mpmath.mpf | None = Field(
        None, description="Smallest eigenvalue; None for the empty matrix"
    )
