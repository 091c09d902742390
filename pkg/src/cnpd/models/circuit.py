"""Circuit models.

Indices are 0-based here; the wire format shifts them to 1-based.
"""

from math import gcd
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from cnpd.models.arith import IntMatrix


class ExponentMatrix(BaseModel):
    """Prime-exponent vectors of a frequency tuple."""

    model_config = ConfigDict(frozen=True)

    primes: tuple[int, ...] = Field(..., description="Sorted primes dividing some n_j")
    matrix: IntMatrix = Field(..., description="Row j is the exponent vector of n_j")


class Circuit(BaseModel):
    """A minimal rationally dependent index set with its canonical partition.

    The relation reads prod_{J1} n_i^beta_i = prod_{J2} n_i^beta_i and
    J1 always holds min(J).
    """

    model_config = ConfigDict(frozen=True)

    J: tuple[int, ...] = Field(..., description="Sorted index set")
    beta: dict[int, int] = Field(..., description="Positive exponent per index")
    J1: tuple[int, ...] = Field(..., description="Side containing min(J)")
    J2: tuple[int, ...] = Field(..., description="Opposite side")

    @model_validator(mode="after")
    def check_partition(self) -> "Circuit":
        if list(self.J) != sorted(set(self.J)):
            raise ValueError("J must be sorted without repeats")
        if not self.J1 or not self.J2:
            raise ValueError("both sides of the partition must be nonempty")
        if sorted(self.J1 + self.J2) != list(self.J):
            raise ValueError("J1 and J2 must partition J")
        if self.J[0] not in self.J1:
            raise ValueError("J1 must contain min(J)")
        if set(self.beta) != set(self.J) or any(v < 1 for v in self.beta.values()):
            raise ValueError("beta must assign a positive integer to every index of J")
        g = 0
        for v in self.beta.values():
            g = gcd(g, v)
        if g != 1:
            raise ValueError("beta must be primitive")
        return self

    @property
    def size(self) -> int:
        return len(self.J)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.J), self.J)

    def beta_tuple(self) -> tuple[int, ...]:
        """Exponents in the order of J."""
        return tuple(self.beta[i] for i in self.J)

    def relabel(self, mapping: dict[int, int]) -> "Circuit":
        """Image under an index relabeling, re-canonicalized."""
        indices = tuple(sorted(mapping[i] for i in self.J))
        side = {mapping[i] for i in self.J1}
        other = {mapping[i] for i in self.J2}
        if indices[0] not in side:
            side, other = other, side
        return Circuit(
            J=indices,
            beta={mapping[i]: v for i, v in self.beta.items()},
            J1=tuple(sorted(side)),
            J2=tuple(sorted(other)),
        )

    def to_wire(self) -> dict[str, Any]:
        return {
            "J": [i + 1 for i in self.J],
            "J1": [i + 1 for i in self.J1],
            "J2": [i + 1 for i in self.J2],
            "beta": list(self.beta_tuple()),
        }
