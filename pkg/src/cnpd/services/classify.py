"""Isomorphism decisions between kernel specs."""

from itertools import permutations

import structlog

from cnpd.models.circuit import Circuit
from cnpd.models.errors import CNPError, ErrorCode
from cnpd.models.kernel import KernelSpec
from cnpd.models.report import (
    ClassificationReport,
    GeneratingForm,
    PatternCertificate,
    SimilarityResult,
    Theorem,
    Verdict,
    weight_identity,
)
from cnpd.services.circuits import enumerate_circuits

logger = structlog.get_logger(__name__)


def permute_spec(spec: KernelSpec, p: tuple[int, ...] | list[int]) -> KernelSpec:
    """The spec (b_p(0), ..., b_p(d-1)), (n_p(0), ..., n_p(d-1)).

    Args:
        spec: Kernel spec.
        p: 0-based permutation of range(d).

    Returns:
        The reordered spec.

    Raises:
        CNPError: VALIDATION_ERROR with clause "permutation" if p does not
            permute range(d).
    """
    if sorted(p) != list(range(spec.d)):
        raise CNPError(
            ErrorCode.VALIDATION_ERROR,
            f"{list(p)} is not a permutation of {spec.d} indices",
            {"violated_clause": "permutation", "d": spec.d},
        )
    return KernelSpec(
        b=tuple(spec.b[i] for i in p),
        n=tuple(spec.n[i] for i in p),
    )


def _require_same_dimension(a: KernelSpec, b: KernelSpec) -> None:
    if a.d != b.d:
        raise CNPError(
            ErrorCode.DIMENSION_MISMATCH,
            f"Specs have different dimensions {a.d} and {b.d}",
            {"d_a": a.d, "d_b": b.d},
        )


def similar_pattern(a: KernelSpec, b: KernelSpec) -> SimilarityResult:
    """Same circuits, same exponents and partitions, and the weight identity.

    Weight identity per circuit J with partition (J1, J2), b-weights from
    ``a`` and c-weights from ``b``:
    prod_{J1} c^beta * prod_{J2} b^beta = prod_{J2} c^beta * prod_{J1} b^beta.

    Args:
        a: First spec.
        b: Second spec, same dimension.

    Returns:
        similar with a certificate, or the first reason it fails.

    Raises:
        CNPError: DIMENSION_MISMATCH if the dimensions differ.
    """
    _require_same_dimension(a, b)
    circuits_a = {c.J: c for c in enumerate_circuits(a.n)}
    circuits_b = {c.J: c for c in enumerate_circuits(b.n)}
    if set(circuits_a) != set(circuits_b):
        return SimilarityResult(similar=False, reason="circuit families differ")

    matched: list[Circuit] = []
    identities = []
    for J in sorted(circuits_a, key=lambda key: (len(key), key)):
        ca, cb = circuits_a[J], circuits_b[J]
        if ca.beta != cb.beta:
            return SimilarityResult(
                similar=False, reason=f"exponents differ on J = {_wire(J)}"
            )
        if ca.J1 != cb.J1:
            return SimilarityResult(
                similar=False, reason=f"partitions differ on J = {_wire(J)}"
            )
        identity = weight_identity(a, b, ca)
        if identity.lhs != identity.rhs:
            return SimilarityResult(
                similar=False,
                reason=(
                    f"weight identity fails on J = {_wire(J)}: "
                    f"{identity.lhs} != {identity.rhs}"
                ),
            )
        matched.append(ca)
        identities.append(identity)

    certificate = PatternCertificate(
        matched_circuits=tuple(matched), weight_identities=tuple(identities)
    )
    return SimilarityResult(similar=True, certificate=certificate)


def _wire(J: tuple[int, ...]) -> list[int]:
    return [i + 1 for i in J]


def varieties_equal(a: KernelSpec, b: KernelSpec) -> bool:
    """Equality of the multiplier varieties, decided by the similar pattern."""
    return similar_pattern(a, b).similar


def isometric_identity(a: KernelSpec, b: KernelSpec) -> ClassificationReport:
    """Decide isometric isomorphism induced by the identity on the ball.

    Args:
        a: First spec.
        b: Second spec.

    Returns:
        ISOMETRICALLY_ISOMORPHIC with a certificate when the identity gives a
        similar pattern, NOT_ISOMETRICALLY_ISOMORPHIC for different
        dimensions, and UNDECIDED_BY_THEORY otherwise.
    """
    if a.d != b.d:
        return ClassificationReport(
            verdict=Verdict.NOT_ISOMETRICALLY_ISOMORPHIC,
            theorem=Theorem.PROP_NEVER_ISOM_ISO,
            reason=f"dimensions {a.d} and {b.d} differ",
        )
    result = similar_pattern(a, b)
    if result.similar:
        return ClassificationReport(
            verdict=Verdict.ISOMETRICALLY_ISOMORPHIC,
            theorem=Theorem.THM_VAR_EQUAL_SET,
            permutation=tuple(range(a.d)),
            certificate=result.certificate,
            reason="similar pattern under the identity permutation",
        )
    return ClassificationReport(
        verdict=Verdict.UNDECIDED_BY_THEORY,
        theorem=Theorem.OUT_OF_SCOPE,
        reason=f"no similar pattern ({result.reason})",
    )


def generating_class_check(spec: KernelSpec) -> GeneratingForm | None:
    """Detect n_dep = prod n_gen^alpha with every alpha >= 1.

    The spec is in the class iff its only circuit is the whole index set and
    one side of that circuit is a single index with exponent 1.

    Args:
        spec: Kernel spec with d >= 3.

    Returns:
        The generators, the dependent index and the exponents, or None.

    Raises:
        CNPError: VALIDATION_ERROR with clause "dimension" if d < 3.
    """
    if spec.d < 3:
        raise CNPError(
            ErrorCode.VALIDATION_ERROR,
            f"Generating class needs d >= 3, got d = {spec.d}",
            {"violated_clause": "dimension", "d": spec.d},
        )
    circuits = enumerate_circuits(spec.n)
    if len(circuits) != 1 or circuits[0].size != spec.d:
        return None
    circuit = circuits[0]
    for lone, rest in ((circuit.J1, circuit.J2), (circuit.J2, circuit.J1)):
        if len(lone) == 1 and circuit.beta[lone[0]] == 1:
            generators = tuple(sorted(rest))
            return GeneratingForm(
                generator_indices=generators,
                dependent_index=lone[0],
                exponents=tuple(circuit.beta[i] for i in generators),
            )
    return None


def _in_generating_class(spec: KernelSpec) -> GeneratingForm | None:
    return generating_class_check(spec) if spec.d >= 3 else None


def generating_class_isomorphic(
    a: KernelSpec, b: KernelSpec
) -> ClassificationReport:
    """Decide isomorphism for specs whose dependent frequency is generated.

    Both specs are reordered so the dependent index comes last. Inside this
    class isomorphic and isometrically isomorphic coincide, so a failed
    search means not isomorphic.

    Args:
        a: First spec.
        b: Second spec.

    Returns:
        The report, with the lexicographically least certifying permutation
        when one exists.
    """
    if a.d != b.d:
        return ClassificationReport(
            verdict=Verdict.NOT_ISOMETRICALLY_ISOMORPHIC,
            theorem=Theorem.PROP_NEVER_ISOM_ISO,
            reason=f"dimensions {a.d} and {b.d} differ",
        )
    form_a = _in_generating_class(a)
    form_b = _in_generating_class(b)
    if form_a is None or form_b is None:
        return ClassificationReport(
            verdict=Verdict.UNDECIDED_BY_THEORY,
            theorem=Theorem.OUT_OF_SCOPE,
            reason="a spec lies outside the generating class",
        )

    d = a.d
    order_a = form_a.generator_indices + (form_a.dependent_index,)
    order_b = form_b.generator_indices + (form_b.dependent_index,)
    inverse_b = {j: pos for pos, j in enumerate(order_b)}
    reordered_a = permute_spec(a, order_a)
    reordered_b = permute_spec(b, order_b)

    certifying: list[tuple[int, ...]] = []
    for sigma in permutations(range(d - 1)):
        if tuple(form_a.exponents[i] for i in sigma) != form_b.exponents:
            continue
        full = sigma + (d - 1,)
        if similar_pattern(permute_spec(reordered_a, full), reordered_b).similar:
            certifying.append(
                tuple(order_a[full[inverse_b[j]]] for j in range(d))
            )

    if not certifying:
        logger.debug("classify.generating_search", d=d, certified=0)
        return ClassificationReport(
            verdict=Verdict.NOT_ISOMORPHIC,
            theorem=Theorem.THM_C,
            not_isomorphic_to_free_algebra=True,
            reason="no permutation satisfies the weight identity",
        )

    best = min(certifying)
    result = similar_pattern(permute_spec(a, best), b)
    logger.debug(
        "classify.generating_search",
        d=d,
        certified=len(certifying),
        permutation=[i + 1 for i in best],
    )
    return ClassificationReport(
        verdict=Verdict.ISOMETRICALLY_ISOMORPHIC,
        theorem=Theorem.THM_C,
        permutation=best,
        certificate=result.certificate,
        not_isomorphic_to_free_algebra=True,
        reason="similar pattern after permuting the first spec",
    )


def classify(a: KernelSpec, b: KernelSpec) -> ClassificationReport:
    """Best verdict the available results support.

    The identity permutation is tried first; specs that both lie in the
    generating class then get the permutation search.

    Args:
        a: First spec.
        b: Second spec.

    Returns:
        The classification report.
    """
    report = isometric_identity(a, b)
    if a.d == b.d:
        in_class = _in_generating_class(a) is not None
        if report.verdict is Verdict.ISOMETRICALLY_ISOMORPHIC:
            report = report.model_copy(
                update={"not_isomorphic_to_free_algebra": in_class}
            )
        elif in_class and _in_generating_class(b) is not None:
            report = generating_class_isomorphic(a, b)
    logger.info(
        "classify.verdict",
        verdict=report.verdict.value,
        theorem=report.theorem.value,
    )
    return report
