"""Classification verdicts and certificates."""

from enum import Enum
from fractions import Fraction
from math import prod
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from cnpd.models.circuit import Circuit
from cnpd.models.kernel import KernelSpec


class Verdict(str, Enum):
    """Outcome of an isomorphism decision."""

    ISOMETRICALLY_ISOMORPHIC = "IsometricallyIsomorphic"
    ISOMORPHIC = "Isomorphic"
    NOT_ISOMETRICALLY_ISOMORPHIC = "NotIsometricallyIsomorphic"
    NOT_ISOMORPHIC = "NotIsomorphic"
    UNDECIDED_BY_THEORY = "UndecidedByTheory"


class Theorem(str, Enum):
    """Result a verdict rests on."""

    PROP_NEVER_ISOM_ISO = "PropNeverIsomIso"
    THM_VAR_EQUAL_SET = "ThmVarEqualSet"
    THM_C = "ThmC"
    OUT_OF_SCOPE = "OutOfScope"


class WeightIdentity(BaseModel):
    """prod_{J1} c^beta prod_{J2} b^beta = prod_{J2} c^beta prod_{J1} b^beta."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    J: tuple[int, ...] = Field(..., description="Circuit the identity belongs to")
    lhs: Fraction = Field(..., description="prod_{J1} c^beta * prod_{J2} b^beta")
    rhs: Fraction = Field(..., description="prod_{J2} c^beta * prod_{J1} b^beta")


def side_product(
    weights: tuple[Fraction, ...], circuit: Circuit, side: tuple[int, ...]
) -> Fraction:
    """prod_{i in side} weights_i^beta_i."""
    return prod((weights[i] ** circuit.beta[i] for i in side), start=Fraction(1))


def weight_identity(a: KernelSpec, b: KernelSpec, circuit: Circuit) -> WeightIdentity:
    """Both sides of the weight identity, b-weights from a and c-weights from b."""
    return WeightIdentity(
        J=circuit.J,
        lhs=side_product(b.b, circuit, circuit.J1)
        * side_product(a.b, circuit, circuit.J2),
        rhs=side_product(b.b, circuit, circuit.J2)
        * side_product(a.b, circuit, circuit.J1),
    )


class PatternCertificate(BaseModel):
    """Evidence that two specs share circuits, exponents and weight identities."""

    model_config = ConfigDict(frozen=True)

    matched_circuits: tuple[Circuit, ...] = Field(
        ..., description="Circuits common to both frequency tuples"
    )
    weight_identities: tuple[WeightIdentity, ...] = Field(
        ..., description="One verified identity per circuit"
    )

    def verify(self, a: KernelSpec, b: KernelSpec) -> bool:
        """Re-check every recorded identity with rational arithmetic."""
        if a.d != b.d:
            return False
        seen = [c.J for c in self.matched_circuits]
        if len(set(seen)) != len(seen) or len(seen) != len(self.weight_identities):
            return False
        for circuit, identity in zip(
            self.matched_circuits, self.weight_identities, strict=True
        ):
            if identity.J != circuit.J or max(circuit.J) >= a.d:
                return False
            for spec in (a, b):
                freqs = tuple(Fraction(nj) for nj in spec.n)
                if side_product(freqs, circuit, circuit.J1) != side_product(
                    freqs, circuit, circuit.J2
                ):
                    return False
            fresh = weight_identity(a, b, circuit)
            if fresh != identity or fresh.lhs != fresh.rhs:
                return False
        return True

    def to_wire(self) -> dict[str, Any]:
        return {
            "matched_circuits": [c.to_wire() for c in self.matched_circuits],
            "weight_identities": [
                {
                    "J": [i + 1 for i in w.J],
                    "lhs": str(w.lhs),
                    "rhs": str(w.rhs),
                }
                for w in self.weight_identities
            ],
        }


class SimilarityResult(BaseModel):
    """Outcome of the similar-pattern test."""

    model_config = ConfigDict(frozen=True)

    similar: bool = Field(..., description="The specs admit a similar pattern")
    certificate: PatternCertificate | None = Field(
        None, description="Present when similar"
    )
    reason: str | None = Field(None, description="Why the test failed")


class GeneratingForm(BaseModel):
    """n_dep = prod n_gen^alpha with log-independent generators."""

    model_config = ConfigDict(frozen=True)

    generator_indices: tuple[int, ...] = Field(..., description="The d-1 generators")
    dependent_index: int = Field(..., description="The remaining index")
    exponents: tuple[int, ...] = Field(
        ..., description="Positive exponent per generator, in generator order"
    )

    def to_wire(self) -> dict[str, Any]:
        return {
            "generator_indices": [i + 1 for i in self.generator_indices],
            "dependent_index": self.dependent_index + 1,
            "exponents": list(self.exponents),
        }


class ClassificationReport(BaseModel):
    """Verdict of an isomorphism decision with its certificate."""

    model_config = ConfigDict(frozen=True)

    verdict: Verdict = Field(..., description="Decision")
    theorem: Theorem = Field(..., description="Result the decision rests on")
    permutation: tuple[int, ...] | None = Field(
        None, description="p with (b_p(j), n_p(j)) similar to the second spec"
    )
    certificate: PatternCertificate | None = Field(
        None, description="Similar-pattern certificate"
    )
    not_isomorphic_to_free_algebra: bool = Field(
        False,
        description="Algebra is not the free one in d-1 variables",
    )
    reason: str = Field("", description="Short explanation")

    @property
    def isometrically_isomorphic(self) -> bool | None:
        if self.verdict is Verdict.ISOMETRICALLY_ISOMORPHIC:
            return True
        if self.verdict in (
            Verdict.NOT_ISOMORPHIC,
            Verdict.NOT_ISOMETRICALLY_ISOMORPHIC,
        ):
            return False
        return None

    @property
    def isomorphic(self) -> bool | None:
        if self.verdict in (Verdict.ISOMETRICALLY_ISOMORPHIC, Verdict.ISOMORPHIC):
            return True
        if self.verdict is Verdict.NOT_ISOMORPHIC:
            return False
        return None

    def to_wire(self) -> dict[str, Any]:
        certificate: dict[str, Any] | None = None
        if self.certificate is not None or self.permutation is not None:
            certificate = {
                "permutation": (
                    [i + 1 for i in self.permutation]
                    if self.permutation is not None
                    else None
                ),
                "pattern": (
                    self.certificate.to_wire() if self.certificate is not None else None
                ),
            }
        return {
            "verdict": self.verdict.value,
            "theorem": self.theorem.value,
            "certificate": certificate,
            "not_isomorphic_to_free_algebra": self.not_isomorphic_to_free_algebra,
            "reason": self.reason,
        }
