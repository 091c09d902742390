"""Kernel specifications: validation, normalization, expansion and evaluation."""

from collections.abc import Mapping
from fractions import Fraction
from typing import Any

import mpmath
import structlog

from cnpd.config import get_config, working_precision
from cnpd.models.errors import CNPError, ErrorCode
from cnpd.models.kernel import (
    HalfPlanePoint,
    KernelSpec,
    NormalizedWeights,
    PointLike,
    RawSpec,
)
from cnpd.models.series import DirichletCoefficients
from cnpd.services.dirichlet import invert
from cnpd.services.exactmath import parse_rational, to_mpf

logger = structlog.get_logger(__name__)


def load_spec(document: Mapping[str, Any]) -> RawSpec:
    """Read a spec document {"b": ["1/3", ...], "n": [2, ...]}.

    Args:
        document: Parsed JSON object.

    Returns:
        The raw spec; the weights need not sum to 1 yet.

    Raises:
        CNPError: VALIDATION_ERROR with clause "format" for a malformed
            document, plus the RawSpec clause errors.
    """
    if not isinstance(document, Mapping) or "b" not in document or "n" not in document:
        raise CNPError(
            ErrorCode.VALIDATION_ERROR,
            'Spec must be an object with "b" and "n" lists',
            {"violated_clause": "format"},
        )
    raw_b, raw_n = document["b"], document["n"]
    if not isinstance(raw_b, list) or not isinstance(raw_n, list):
        raise CNPError(
            ErrorCode.VALIDATION_ERROR,
            '"b" and "n" must be lists',
            {"violated_clause": "format"},
        )
    n: list[int] = []
    for value in raw_n:
        q = parse_rational(value)
        if q.denominator != 1:
            raise CNPError(
                ErrorCode.VALIDATION_ERROR,
                f"Frequency {value!r} is not an integer",
                {"violated_clause": "format", "value": str(value)},
            )
        n.append(int(q))
    return RawSpec(b=tuple(parse_rational(v) for v in raw_b), n=tuple(n))


def spec_to_wire(spec: RawSpec) -> dict[str, Any]:
    return {"b": [str(bj) for bj in spec.b], "n": list(spec.n)}


def validate(raw: RawSpec) -> KernelSpec:
    """Promote a raw spec to a kernel spec, requiring sum b_j = 1 exactly.

    Args:
        raw: Weights and frequencies.

    Returns:
        The validated kernel spec.

    Raises:
        CNPError: WEIGHTS_SUM with the exact deficit when sum b_j != 1.
    """
    spec = KernelSpec(b=raw.b, n=raw.n)
    logger.debug("kernelspec.validated", d=spec.d, n=list(spec.n))
    return spec


def _check_tol(tol: float | mpmath.mpf) -> None:
    if not tol > 0:
        raise CNPError(
            ErrorCode.VALIDATION_ERROR,
            f"Tolerance must be positive, got {tol}",
            {"violated_clause": "tolerance", "tol": str(tol)},
        )


def _weight_sum_at(raw: RawSpec, sigma: mpmath.mpf) -> mpmath.mpf:
    return mpmath.fsum(
        to_mpf(bj) * mpmath.power(nj, -sigma)
        for bj, nj in zip(raw.b, raw.n, strict=True)
    )


def solve_rho(
    raw: RawSpec, tol: float | None = None, precision_bits: int | None = None
) -> mpmath.mpf:
    """The unique real rho with sum b_j n_j^(-rho) = 1, by bisection.

    Args:
        raw: Positive weights; any sum.
        tol: Bound on both the residual and the bracket width; defaults to
            tolerances.rho.
        precision_bits: Working precision override.

    Returns:
        rho, exactly 0 when the weights already sum to 1.

    Raises:
        CNPError: VALIDATION_ERROR for a non-positive tolerance.
    """
    bits = working_precision(precision_bits)
    with mpmath.workprec(bits):
        eps = mpmath.mpf(tol if tol is not None else get_config().tolerances.rho)
        _check_tol(eps)
        if raw.weight_sum == 1:
            return mpmath.mpf(0)

        lo, hi = mpmath.mpf(-1), mpmath.mpf(1)
        while _weight_sum_at(raw, lo) <= 1:
            lo *= 2
        while _weight_sum_at(raw, hi) >= 1:
            hi *= 2

        mid = (lo + hi) / 2
        converged = False
        for _ in range(8 * bits):
            mid = (lo + hi) / 2
            value = _weight_sum_at(raw, mid)
            if abs(value - 1) < eps and hi - lo < eps:
                converged = True
                break
            if value > 1:
                lo = mid
            else:
                hi = mid
        if not converged:
            logger.warning(
                "kernelspec.rho_not_converged",
                precision_bits=bits,
                tol=str(eps),
                bracket=mpmath.nstr(hi - lo, 5),
            )
        logger.debug("kernelspec.rho_solved", rho=mpmath.nstr(mid, 20), d=raw.d)
        return mid


def normalize(
    raw: RawSpec, tol: float | None = None, precision_bits: int | None = None
) -> NormalizedWeights:
    """Weights b_j n_j^(-rho) that sum to 1 within tol.

    Args:
        raw: Positive weights; any sum.
        tol: Tolerance passed to solve_rho.
        precision_bits: Working precision override.

    Returns:
        rho with the rescaled weights and the unchanged frequencies.
    """
    bits = working_precision(precision_bits)
    rho = solve_rho(raw, tol, bits)
    with mpmath.workprec(bits):
        weights = tuple(
            to_mpf(bj) * mpmath.power(nj, -rho)
            for bj, nj in zip(raw.b, raw.n, strict=True)
        )
    return NormalizedWeights(rho=rho, weights=weights, n=raw.n)


def weight_expansion(spec: KernelSpec, limit: int) -> DirichletCoefficients:
    """Kernel weights: the inverse of 1 - sum b_j n_j^-s, truncated at limit.

    Args:
        spec: Kernel spec.
        limit: Truncation N.

    Returns:
        The nonnegative weights w_1 = 1, w_2, ..., w_N.
    """
    denominator = {1: Fraction(1)}
    for bj, nj in zip(spec.b, spec.n, strict=True):
        if nj <= limit:
            denominator[nj] = -bj
    return invert(DirichletCoefficients(limit=limit, coeffs=denominator), limit)


def _half_plane(point: PointLike, name: str) -> mpmath.mpc:
    value = HalfPlanePoint.of(point).value
    if not value.real > 0:
        raise CNPError(
            ErrorCode.HALF_PLANE_VIOLATION,
            f"{name} must lie in the right half-plane, got Re({name}) = "
            f"{mpmath.nstr(value.real, 10)}",
            {name: mpmath.nstr(value, 15)},
        )
    return value


def f_eval(
    spec: KernelSpec, s: PointLike, precision_bits: int | None = None
) -> list[mpmath.mpc]:
    """Feature map: component j is sqrt(b_j) * n_j^(-s).

    Args:
        spec: Kernel spec.
        s: Point in the right half-plane.
        precision_bits: Working precision override.

    Returns:
        The d coordinates of f(s), a point of the open unit ball.

    Raises:
        CNPError: HALF_PLANE_VIOLATION if Re(s) <= 0.
    """
    with mpmath.workprec(working_precision(precision_bits)):
        value = _half_plane(s, "s")
        return [
            mpmath.sqrt(to_mpf(bj)) * mpmath.power(nj, -value)
            for bj, nj in zip(spec.b, spec.n, strict=True)
        ]


def _inner_sum(spec: KernelSpec, s: mpmath.mpc, u: mpmath.mpc) -> mpmath.mpc:
    exponent = s + mpmath.conj(u)
    return mpmath.fsum(
        to_mpf(bj) * mpmath.power(nj, -exponent)
        for bj, nj in zip(spec.b, spec.n, strict=True)
    )


def kernel_eval(
    spec: KernelSpec,
    s: PointLike,
    u: PointLike | None = None,
    precision_bits: int | None = None,
) -> mpmath.mpc:
    """K(s, u) = 1 / (1 - sum b_j n_j^(-s - conj(u))); u defaults to s.

    Args:
        spec: Kernel spec.
        s: First point.
        u: Second point; defaults to s.
        precision_bits: Working precision override.

    Returns:
        The kernel value.

    Raises:
        CNPError: HALF_PLANE_VIOLATION if either point has a non-positive
            real part.
    """
    with mpmath.workprec(working_precision(precision_bits)):
        sv = _half_plane(s, "s")
        uv = _half_plane(u if u is not None else s, "u")
        return 1 / (1 - _inner_sum(spec, sv, uv))


def one_minus_inverse(
    spec: KernelSpec, s: PointLike, u: PointLike, precision_bits: int | None = None
) -> mpmath.mpc:
    """sum b_j n_j^(-s - conj(u)), which equals 1 - 1/K(s, u)."""
    with mpmath.workprec(working_precision(precision_bits)):
        return _inner_sum(spec, _half_plane(s, "s"), _half_plane(u, "u"))


def kernel_series(
    spec: KernelSpec,
    s: PointLike,
    u: PointLike,
    terms: int,
    precision_bits: int | None = None,
) -> mpmath.mpc:
    """Partial sum of the geometric series of K(s, u) over its first terms powers."""
    with mpmath.workprec(working_precision(precision_bits)):
        x = _inner_sum(spec, _half_plane(s, "s"), _half_plane(u, "u"))
        total = mpmath.mpc(0)
        power = mpmath.mpc(1)
        for _ in range(terms):
            total += power
            power *= x
        return total


def spec_from_weights(w: DirichletCoefficients, limit: int) -> RawSpec:
    """Recover (b, n) from kernel weights whose inverse is 1 - sum b_j n_j^-s.

    Args:
        w: Kernel weights with w_1 = 1.
        limit: Truncation N; frequencies above N are not seen.

    Returns:
        b_j = -c_n over the support of the inverse c past index 1.

    Raises:
        CNPError: VALIDATION_ERROR with clause "normalized" if w_1 != 1,
            "cnp" if some c_n > 0 and "dimension" if no frequency remains.
    """
    if w.get(1) != 1:
        raise CNPError(
            ErrorCode.VALIDATION_ERROR,
            f"Kernel weights must have w_1 = 1, got {w.get(1)}",
            {"violated_clause": "normalized", "w_1": str(w.get(1))},
        )
    c = invert(w, limit)
    b: list[Fraction] = []
    n: list[int] = []
    for index, cn in c.coeffs.items():
        if index == 1:
            continue
        if cn > 0:
            raise CNPError(
                ErrorCode.VALIDATION_ERROR,
                f"Inverse coefficient c_{index} = {cn} is positive, so not CNP",
                {"violated_clause": "cnp", "witness": index, "value": str(cn)},
            )
        b.append(-cn)
        n.append(index)
    if not n:
        raise CNPError(
            ErrorCode.VALIDATION_ERROR,
            "Weights describe the constant kernel; no frequencies up to the limit",
            {"violated_clause": "dimension", "limit": limit},
        )
    logger.debug("kernelspec.from_weights", d=len(n), limit=limit)
    return RawSpec(b=tuple(b), n=tuple(n))
