"""Rational dependence among log-frequencies: circuits and their relations.

Indices are 0-based.
"""

from collections.abc import Sequence
from fractions import Fraction
from itertools import combinations
from math import lcm, prod

import structlog

from cnpd.config import get_config
from cnpd.models.arith import IntMatrix
from cnpd.models.circuit import Circuit, ExponentMatrix
from cnpd.models.errors import CNPError, ErrorCode
from cnpd.models.kernel import check_frequencies
from cnpd.services.exactmath import (
    exponent_vector,
    factorize,
    integer_kernel_basis,
    rational_rank,
)

logger = structlog.get_logger(__name__)


def exponent_matrix(n: Sequence[int]) -> ExponentMatrix:
    """Row j holds the exponents of n_j over every prime dividing the tuple.

    Args:
        n: Distinct frequencies >= 2.

    Returns:
        The sorted primes and the d x (number of primes) exponent matrix.

    Raises:
        CNPError: The frequency clause errors of check_frequencies.
    """
    freqs = check_frequencies(list(n))
    primes = sorted({p for nj in freqs for p in factorize(nj).primes})
    rows = [exponent_vector(nj, primes) for nj in freqs]
    return ExponentMatrix(
        primes=tuple(primes), matrix=IntMatrix.from_rows(rows, cols=len(primes))
    )


def log_independent(n: Sequence[int]) -> bool:
    """Whether {ln n_j} is linearly independent over Q."""
    m = exponent_matrix(n).matrix
    return rational_rank(m) == m.nrows


def _check_indices(indices: Sequence[int], d: int) -> tuple[int, ...]:
    ordered = tuple(sorted(indices))
    if len(set(ordered)) != len(ordered) or any(i < 0 or i >= d for i in ordered):
        raise CNPError(
            ErrorCode.VALIDATION_ERROR,
            f"Indices {list(indices)} are not distinct positions of a {d}-tuple",
            {"violated_clause": "indices", "indices": [i + 1 for i in indices]},
        )
    return ordered


def _decompose(
    freqs: tuple[int, ...], m: IntMatrix, indices: tuple[int, ...]
) -> Circuit:
    kernel = integer_kernel_basis(m.select(indices))
    if not kernel:
        raise CNPError(
            ErrorCode.NOT_A_CIRCUIT,
            f"Index set {[i + 1 for i in indices]} is independent",
            {"J": [i + 1 for i in indices], "reason": "independent"},
        )
    if len(kernel) > 1 or any(x == 0 for x in kernel[0]):
        raise CNPError(
            ErrorCode.NOT_A_CIRCUIT,
            f"Index set {[i + 1 for i in indices]} has a dependent proper subset",
            {"J": [i + 1 for i in indices], "reason": "not_minimal"},
        )
    relation = kernel[0]
    # first entry is positive, so J1 is the side of min(J)
    side_one = tuple(i for i, x in zip(indices, relation, strict=True) if x > 0)
    side_two = tuple(i for i, x in zip(indices, relation, strict=True) if x < 0)
    beta = {i: abs(x) for i, x in zip(indices, relation, strict=True)}

    left = prod(freqs[i] ** beta[i] for i in side_one)
    right = prod(freqs[i] ** beta[i] for i in side_two)
    if left != right:
        raise CNPError(
            ErrorCode.INTERNAL_ERROR,
            "Circuit relation failed the product check",
            {"J": [i + 1 for i in indices]},
        )
    return Circuit(J=indices, beta=beta, J1=side_one, J2=side_two)


def circuit_decompose(n: Sequence[int], indices: Sequence[int]) -> Circuit:
    """Partition and exponents of the unique relation on a circuit.

    Args:
        n: Distinct frequencies >= 2.
        indices: 0-based index set J.

    Returns:
        The circuit with J1 holding min(J) and primitive positive beta.

    Raises:
        CNPError: VALIDATION_ERROR for repeated or out-of-range indices,
            NOT_A_CIRCUIT if J is independent or has a dependent proper subset.
    """
    freqs = check_frequencies(list(n))
    ordered = _check_indices(indices, len(freqs))
    return _decompose(freqs, exponent_matrix(freqs).matrix, ordered)


def _prime_components(m: IntMatrix, elements: list[int]) -> list[list[int]]:
    """Group elements that are linked through shared primes."""
    parent = {e: e for e in elements}

    def find(e: int) -> int:
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for col in range(m.cols):
        holders = [e for e in elements if m.rows[e][col] != 0]
        for e in holders[1:]:
            parent[find(e)] = find(holders[0])

    groups: dict[int, list[int]] = {}
    for e in elements:
        groups.setdefault(find(e), []).append(e)
    return sorted(groups.values())


def enumerate_circuits(
    n: Sequence[int], max_dimension: int | None = None
) -> list[Circuit]:
    """All minimal dependent index sets, sorted by (|J|, J).

    Elements whose removal lowers the rank are dropped first, and subsets are
    only searched inside groups of frequencies that share a prime.

    Args:
        n: Distinct frequencies >= 2.
        max_dimension: Largest d accepted; defaults to circuits.max_dimension.

    Returns:
        Every circuit with its partition and exponents.

    Raises:
        CNPError: DIMENSION_TOO_LARGE if d exceeds the bound.
    """
    freqs = check_frequencies(list(n))
    d = len(freqs)
    bound = (
        max_dimension
        if max_dimension is not None
        else get_config().circuits.max_dimension
    )
    if d > bound:
        raise CNPError(
            ErrorCode.DIMENSION_TOO_LARGE,
            f"Circuit enumeration is limited to d <= {bound}, got d = {d}",
            {"d": d, "max_dimension": bound},
        )

    m = exponent_matrix(freqs).matrix
    total_rank = rational_rank(m)
    if total_rank == d:
        logger.debug("circuits.enumerated", d=d, count=0)
        return []

    # an element whose removal drops the rank lies in no circuit
    everything = list(range(d))
    candidates = [
        i
        for i in everything
        if rational_rank(m.select([j for j in everything if j != i])) == total_rank
    ]

    found: list[tuple[int, ...]] = []
    for component in _prime_components(m, candidates):
        component_rank = rational_rank(m.select(component))
        if component_rank == len(component):
            continue
        local: list[frozenset[int]] = []
        for size in range(2, component_rank + 2):
            for subset in combinations(component, size):
                members = frozenset(subset)
                if any(c <= members for c in local):
                    continue
                if rational_rank(m.select(subset)) < size:
                    local.append(members)
                    found.append(tuple(sorted(subset)))

    circuits = sorted(
        (_decompose(freqs, m, indices) for indices in found),
        key=Circuit.sort_key,
    )
    logger.debug(
        "circuits.enumerated",
        d=d,
        rank=total_rank,
        count=len(circuits),
    )
    return circuits


def fundamental_relation(
    n: Sequence[int], basis: Sequence[int], k: int
) -> dict[int, Fraction]:
    """Rationals r_i with n_k = prod_{i in basis} n_i^r_i; only nonzero r_i are kept.

    Args:
        n: Distinct frequencies >= 2.
        basis: 0-based log-independent indices.
        k: 0-based index to express.

    Returns:
        The nonzero exponents by basis index; {k: 1} when k is in the basis.

    Raises:
        CNPError: DOMAIN_ERROR if the basis is dependent, NO_RELATION if
            ln n_k is outside its span.
    """
    freqs = check_frequencies(list(n))
    d = len(freqs)
    ordered = _check_indices(basis, d)
    _check_indices([k], d)
    m = exponent_matrix(freqs).matrix
    if rational_rank(m.select(ordered)) != len(ordered):
        raise CNPError(
            ErrorCode.DOMAIN_ERROR,
            f"Basis {[i + 1 for i in ordered]} is not log-independent",
            {"basis": [i + 1 for i in ordered]},
        )
    if k in ordered:
        return {k: Fraction(1)}

    kernel = integer_kernel_basis(m.select(list(ordered) + [k]))
    if not kernel:
        raise CNPError(
            ErrorCode.NO_RELATION,
            f"ln n_{k + 1} is not in the span of the basis",
            {"k": k + 1, "basis": [i + 1 for i in ordered]},
        )
    v = kernel[0]
    last = v[-1]
    relation = {
        i: Fraction(-x, last) for i, x in zip(ordered, v[:-1], strict=True) if x != 0
    }

    scale = lcm(*(r.denominator for r in relation.values()))
    lhs = freqs[k] ** scale
    rhs = 1
    for i, r in relation.items():
        e = int(r * scale)
        if e > 0:
            rhs *= freqs[i] ** e
        else:
            lhs *= freqs[i] ** -e
    if lhs != rhs:
        raise CNPError(
            ErrorCode.INTERNAL_ERROR,
            "Fundamental relation failed the product check",
            {"k": k + 1},
        )
    return relation


def chain_case(n: Sequence[int]) -> bool:
    """Whether {ln n_1, ln n_i} is dependent for every i."""
    freqs = check_frequencies(list(n))
    m = exponent_matrix(freqs).matrix
    return all(rational_rank(m.select([0, i])) == 1 for i in range(1, len(freqs)))
