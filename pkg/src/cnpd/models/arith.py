"""Exact arithmetic carriers."""

from math import prod

from pydantic import BaseModel, ConfigDict, Field, model_validator


class PrimeFactorization(BaseModel):
    """Prime factorization as increasing (prime, exponent) pairs."""

    model_config = ConfigDict(frozen=True)

    factors: tuple[tuple[int, int], ...] = Field(
        ..., description="(prime, exponent) pairs with strictly increasing primes"
    )

    @model_validator(mode="after")
    def check_order(self) -> "PrimeFactorization":
        previous = 1
        for prime, exponent in self.factors:
            if prime <= previous or exponent < 1:
                raise ValueError(
                    "factors must have strictly increasing primes and exponents >= 1"
                )
            previous = prime
        return self

    @property
    def value(self) -> int:
        """The factored integer."""
        return prod(p**e for p, e in self.factors)

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def exponent_of(self, prime: int) -> int:
        for p, e in self.factors:
            if p == prime:
                return e
        return 0


class IntMatrix(BaseModel):
    """Rectangular matrix of arbitrary-precision integers."""

    model_config = ConfigDict(frozen=True)

    rows: tuple[tuple[int, ...], ...] = Field(..., description="Matrix rows")
    cols: int = Field(..., ge=0, description="Column count")

    @model_validator(mode="after")
    def check_shape(self) -> "IntMatrix":
        for row in self.rows:
            if len(row) != self.cols:
                raise ValueError(
                    f"row of length {len(row)} in matrix with {self.cols} columns"
                )
        return self

    @classmethod
    def from_rows(
        cls,
        rows: list[list[int]] | tuple[tuple[int, ...], ...],
        cols: int | None = None,
    ) -> "IntMatrix":
        """Build a matrix; the column count defaults to the first row's length."""
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(rows=tuple(tuple(r) for r in rows), cols=cols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def select(self, indices: list[int] | tuple[int, ...]) -> "IntMatrix":
        """Submatrix made of the given rows, in the given order."""
        return IntMatrix(rows=tuple(self.rows[i] for i in indices), cols=self.cols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            rows=tuple(tuple(r[j] for r in self.rows) for j in range(self.cols)),
            cols=self.nrows,
        )
