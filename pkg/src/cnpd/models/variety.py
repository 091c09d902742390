"""Multiplier variety models."""

from collections.abc import Iterable
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field, model_validator

from cnpd.models.circuit import Circuit


class PolyRelation(BaseModel):
    """The relation A * prod_{J2} z^beta = B * prod_{J1} z^beta.

    Only the squares Asq = A^2 and Bsq = B^2 are stored.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    circuit: Circuit = Field(..., description="Circuit the relation comes from")
    asq: Fraction = Field(..., description="prod_{J1} b_i^beta_i")
    bsq: Fraction = Field(..., description="prod_{J2} b_i^beta_i")

    @model_validator(mode="after")
    def check_positive(self) -> "PolyRelation":
        if self.asq <= 0 or self.bsq <= 0:
            raise ValueError("relation coefficients must be positive")
        return self

    def swapped(self) -> "PolyRelation":
        """The same zero set written with J1 and J2 exchanged."""
        c = self.circuit
        flipped = Circuit.model_construct(J=c.J, beta=c.beta, J1=c.J2, J2=c.J1)
        return PolyRelation.model_construct(circuit=flipped, asq=self.bsq, bsq=self.asq)


class VarietyPresentation(BaseModel):
    """Defining relations of a multiplier variety inside the unit ball."""

    model_config = ConfigDict(frozen=True)

    d: int = Field(..., ge=1, description="Ambient dimension")
    relations: tuple[PolyRelation, ...] = Field(
        default_factory=tuple, description="One relation per circuit"
    )
    is_full_ball: bool = Field(
        ..., description="No relations, so the variety is the whole ball"
    )

    @model_validator(mode="after")
    def check_full_ball(self) -> "VarietyPresentation":
        if self.is_full_ball != (len(self.relations) == 0):
            raise ValueError("is_full_ball must match an empty relation list")
        return self


class GaussianRationalPoint(BaseModel):
    """A point of C^d with rational real and imaginary parts."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coords: tuple[tuple[Fraction, Fraction], ...] = Field(
        ..., description="(re, im) per coordinate"
    )

    @classmethod
    def of(
        cls, values: Iterable[tuple[Fraction | int, Fraction | int] | Fraction | int]
    ) -> "GaussianRationalPoint":
        coords = []
        for v in values:
            if isinstance(v, tuple):
                coords.append((Fraction(v[0]), Fraction(v[1])))
            else:
                coords.append((Fraction(v), Fraction(0)))
        return cls(coords=tuple(coords))

    @property
    def d(self) -> int:
        return len(self.coords)

    def norm_sq(self) -> Fraction:
        return sum((re * re + im * im for re, im in self.coords), Fraction(0))

