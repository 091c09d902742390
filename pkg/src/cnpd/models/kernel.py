"""Kernel specification models."""

from fractions import Fraction

import mpmath
from pydantic import BaseModel, ConfigDict, Field, model_validator

from cnpd.models.errors import CNPError, ErrorCode


def check_frequencies(n: tuple[int, ...] | list[int]) -> tuple[int, ...]:
    """Require distinct integer frequencies >= 2."""
    for j, nj in enumerate(n):
        if isinstance(nj, bool) or not isinstance(nj, int) or nj < 2:
            raise CNPError(
                ErrorCode.FREQUENCY_TOO_SMALL,
                f"Frequency n_{j + 1} = {nj!r} is not an integer >= 2",
                {"violated_clause": "frequency_range", "index": j + 1},
            )
    seen: dict[int, int] = {}
    for j, nj in enumerate(n):
        if nj in seen:
            raise CNPError(
                ErrorCode.DUPLICATE_FREQUENCY,
                f"Frequency {nj} appears at positions {seen[nj] + 1} and {j + 1}",
                {
                    "violated_clause": "distinct_frequencies",
                    "indices": [seen[nj] + 1, j + 1],
                },
            )
        seen[nj] = j
    return tuple(n)


class RawSpec(BaseModel):
    """Weight data b and frequency data n, before normalization."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    b: tuple[Fraction, ...] = Field(..., description="Positive weights")
    n: tuple[int, ...] = Field(..., description="Distinct frequencies >= 2")

    @model_validator(mode="after")
    def check_clauses(self) -> "RawSpec":
        if not self.b or len(self.b) != len(self.n):
            raise CNPError(
                ErrorCode.VALIDATION_ERROR,
                f"Need d >= 1 weights and frequencies of equal length, "
                f"got {len(self.b)} and {len(self.n)}",
                {"violated_clause": "dimension"},
            )
        check_frequencies(self.n)
        for j, bj in enumerate(self.b):
            if bj <= 0:
                raise CNPError(
                    ErrorCode.NONPOSITIVE_WEIGHT,
                    f"Weight b_{j + 1} = {bj} is not positive",
                    {"violated_clause": "positive_weights", "index": j + 1},
                )
        self._check_extra()
        return self

    def _check_extra(self) -> None:
        """Hook for subclasses with stronger invariants."""

    @property
    def d(self) -> int:
        return len(self.n)

    @property
    def weight_sum(self) -> Fraction:
        return sum(self.b, Fraction(0))


class KernelSpec(RawSpec):
    """A pair (b, n) with weights summing to exactly one."""

    def _check_extra(self) -> None:
        total = self.weight_sum
        if total != 1:
            raise CNPError(
                ErrorCode.WEIGHTS_SUM,
                f"Weights sum to {total}, not 1",
                {
                    "violated_clause": "weights_sum",
                    "sum": str(total),
                    "deficit": str(1 - total),
                },
            )


class HalfPlanePoint(BaseModel):
    """A point s = re + i*im of the complex plane."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    re: mpmath.mpf = Field(..., description="Real part")
    im: mpmath.mpf = Field(
        default_factory=lambda: mpmath.mpf(0), description="Imaginary part"
    )

    @model_validator(mode="after")
    def check_finite(self) -> "HalfPlanePoint":
        if not (mpmath.isfinite(self.re) and mpmath.isfinite(self.im)):
            raise CNPError(
                ErrorCode.DOMAIN_ERROR,
                "Half-plane points must be finite",
                {"re": str(self.re), "im": str(self.im)},
            )
        return self

    @classmethod
    def of(cls, value: "PointLike") -> "HalfPlanePoint":
        """Coerce a number into a point."""
        if isinstance(value, HalfPlanePoint):
            return value
        if isinstance(value, Fraction):
            return cls(re=mpmath.mpf(value.numerator) / value.denominator)
        z = mpmath.mpc(value)
        return cls(re=z.real, im=z.imag)

    @property
    def value(self) -> mpmath.mpc:
        return mpmath.mpc(self.re, self.im)


PointLike = HalfPlanePoint | complex | float | int | Fraction | mpmath.mpc | mpmath.mpf


class NormalizedWeights(BaseModel):
    """Weights b_j n_j^(-rho) after shifting to the normalizing half-plane."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    rho: mpmath.mpf = Field(..., description="Root of sum b_j n_j^(-rho) = 1")
    weights: tuple[mpmath.mpf, ...] = Field(..., description="Normalized weights")
    n: tuple[int, ...] = Field(..., description="Frequencies")
