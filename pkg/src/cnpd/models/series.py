"""Truncated Dirichlet series models."""

from collections.abc import Iterable
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator

from cnpd.models.errors import CNPError, ErrorCode


class DirichletCoefficients(BaseModel):
    """Coefficients a_1..a_N of a Dirichlet series, stored sparsely.

    Absent indices are zero. Zero values passed in are dropped.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    limit: int = Field(..., ge=1, description="Truncation limit N")
    coeffs: dict[int, Fraction] = Field(
        default_factory=dict, description="Nonzero coefficients by index"
    )

    @field_validator("coeffs", mode="before")
    @classmethod
    def clean_coeffs(cls, value: object, info: ValidationInfo) -> dict[int, Fraction]:
        if not isinstance(value, dict):
            raise ValueError("coeffs must be a mapping")
        limit = info.data.get("limit")
        cleaned: dict[int, Fraction] = {}
        for index, coeff in value.items():
            n = int(index)
            if limit is not None and not 1 <= n <= limit:
                raise ValueError(f"index {n} outside [1, {limit}]")
            q = Fraction(coeff)
            if q != 0:
                cleaned[n] = q
        return dict(sorted(cleaned.items()))

    @classmethod
    def delta(cls, limit: int) -> "DirichletCoefficients":
        """The unit series: 1 at index 1."""
        return cls(limit=limit, coeffs={1: Fraction(1)})

    @classmethod
    def ones(cls, limit: int) -> "DirichletCoefficients":
        """Coefficients of the zeta function."""
        return cls(limit=limit, coeffs=dict.fromkeys(range(1, limit + 1), Fraction(1)))

    @classmethod
    def from_values(
        cls, values: Iterable[Fraction | int], limit: int | None = None
    ) -> "DirichletCoefficients":
        """Build from a dense list a_1, a_2, ... ."""
        dense = [Fraction(v) for v in values]
        return cls(
            limit=limit if limit is not None else max(len(dense), 1),
            coeffs={i + 1: v for i, v in enumerate(dense)},
        )

    def get(self, n: int) -> Fraction:
        return self.coeffs.get(n, Fraction(0))

    def support(self) -> list[int]:
        return list(self.coeffs)

    def as_list(self) -> list[Fraction]:
        """Dense values a_1..a_N."""
        return [self.get(n) for n in range(1, self.limit + 1)]

    def truncate(self, limit: int) -> "DirichletCoefficients":
        if limit > self.limit:
            raise CNPError(
                ErrorCode.TRUNCATION_ERROR,
                f"Cannot extend a series known up to {self.limit} to {limit}",
                {"limit": self.limit, "requested": limit},
            )
        return DirichletCoefficients(
            limit=limit, coeffs={n: c for n, c in self.coeffs.items() if n <= limit}
        )


class CNPVerdict(BaseModel):
    """Result of the sign test on inverse coefficients."""

    model_config = ConfigDict(frozen=True)

    is_cnp_up_to_n: bool = Field(..., description="All c_n <= 0 for 2 <= n <= N")
    witness: int | None = Field(None, description="Smallest index with c_n > 0")
    limit: int = Field(..., description="Truncation limit N")


class ZetaFactorVerdict(BaseModel):
    """Result of the divisor-sum test against the zeta kernel."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    holds_up_to_n: bool = Field(..., description="Inequality holds for 2 <= n <= N")
    witness: int | None = Field(None, description="Smallest failing n")
    witness_sum: Fraction | None = Field(None, description="Divisor sum at witness")
    limit: int = Field(..., description="Truncation limit N")


class NormValue(BaseModel):
    """Squared Hilbert-space norm, possibly infinite."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: Fraction | None = Field(None, description="Exact squared norm")
    infinite: bool = Field(False, description="Some a_n != 0 where w_n = 0")
