"""Numeric checks backing the exact results: Gram matrices and positivity."""

from collections.abc import Sequence

import mpmath
import structlog

from cnpd.config import get_config, working_precision
from cnpd.models.errors import CNPError, ErrorCode
from cnpd.models.kernel import HalfPlanePoint, KernelSpec, PointLike
from cnpd.models.numeric import GramMatrix, GramMode, PSDResult
from cnpd.models.series import DirichletCoefficients
from cnpd.services.exactmath import to_mpf
from cnpd.services.kernelspec import kernel_eval, one_minus_inverse, weight_expansion

logger = structlog.get_logger(__name__)


def gram_matrix(
    spec: KernelSpec,
    points: Sequence[PointLike],
    mode: GramMode = GramMode.KERNEL,
    precision_bits: int | None = None,
) -> GramMatrix:
    """Matrix of K(s_i, s_j), or of 1 - 1/K(s_i, s_j) in one_minus_inv mode.

    Args:
        spec: Kernel spec.
        points: Distinct sample points in the right half-plane.
        mode: Which kernel to sample.
        precision_bits: Working precision override.

    Returns:
        Gram matrix over the points.

    Raises:
        CNPError: DUPLICATE_POINTS if two points coincide, HALF_PLANE_VIOLATION
            if a point has Re(s) <= 0.
    """
    bits = working_precision(precision_bits)
    with mpmath.workprec(bits):
        values = [HalfPlanePoint.of(p).value for p in points]
        for i, vi in enumerate(values):
            for j in range(i):
                if values[j] == vi:
                    raise CNPError(
                        ErrorCode.DUPLICATE_POINTS,
                        f"Sample points {j + 1} and {i + 1} coincide",
                        {"indices": [j + 1, i + 1]},
                    )
        entry = kernel_eval if mode is GramMode.KERNEL else one_minus_inverse
        rows = [[entry(spec, si, sj, bits) for sj in values] for si in values]
        gram = GramMatrix.from_rows(rows)
    logger.debug("numeric.gram_built", size=gram.size, mode=mode.value)
    return gram


def hermitian_defect(m: GramMatrix, precision_bits: int | None = None) -> mpmath.mpf:
    """max |m_ij - conj(m_ji)|, computed at the working precision.

    Args:
        m: Square matrix.
        precision_bits: Working precision override.

    Returns:
        The largest defect; 0 for the empty matrix.
    """
    with mpmath.workprec(working_precision(precision_bits)):
        return max(
            (
                abs(m.entry(i, j) - mpmath.conj(m.entry(j, i)))
                for i in range(m.size)
                for j in range(i, m.size)
            ),
            default=mpmath.mpf(0),
        )


def psd_check(
    m: GramMatrix, tol: float | None = None, precision_bits: int | None = None
) -> PSDResult:
    """Compare the smallest eigenvalue of a Hermitian matrix with -tol * max|m_ij|.

    Args:
        m: Matrix to test.
        tol: Relative tolerance; defaults to tolerances.psd.
        precision_bits: Working precision override.

    Returns:
        The verdict and the smallest eigenvalue (None for the empty matrix).

    Raises:
        CNPError: NON_HERMITIAN if the matrix is not Hermitian within
            tolerances.hermitian.
    """
    config = get_config()
    bits = working_precision(precision_bits)
    with mpmath.workprec(bits):
        if m.size == 0:
            return PSDResult(is_psd=True, min_eigenvalue=None)
        scale = m.max_abs()
        defect = hermitian_defect(m, bits)
        if defect > config.tolerances.hermitian * max(mpmath.mpf(1), scale):
            raise CNPError(
                ErrorCode.NON_HERMITIAN,
                "Matrix is not Hermitian",
                {"defect": mpmath.nstr(defect, 10)},
            )
        if m.size == 1:
            smallest = mpmath.re(m.entry(0, 0))
        else:
            eigenvalues = mpmath.eighe(m.to_matrix(), eigvals_only=True)
            smallest = min(mpmath.re(eigenvalues[i]) for i in range(m.size))
        threshold = mpmath.mpf(tol if tol is not None else config.tolerances.psd)
        is_psd = bool(smallest >= -threshold * scale)
    logger.debug(
        "numeric.psd_checked",
        size=m.size,
        min_eigenvalue=mpmath.nstr(smallest, 10),
        is_psd=is_psd,
    )
    return PSDResult(is_psd=is_psd, min_eigenvalue=smallest)


def reproducing_check(
    spec: KernelSpec,
    f: DirichletCoefficients,
    u: PointLike,
    limit: int,
    precision_bits: int | None = None,
) -> mpmath.mpf:
    """Residual of <f, K(., u)> = f(u) with the weights truncated at limit.

    K(., u) has coefficients w_n n^(-conj(u)), and the inner product divides
    the coefficient products by w_n.

    Args:
        spec: Kernel spec.
        f: Series supported where the kernel weights are nonzero.
        u: Point in the right half-plane.
        limit: Truncation limit for the kernel weights.
        precision_bits: Working precision override.

    Returns:
        |<f, K(., u)> - f(u)|.

    Raises:
        CNPError: TRUNCATION_ERROR if f reaches past limit, DOMAIN_ERROR if f
            uses an index with w_n = 0, HALF_PLANE_VIOLATION for Re(u) <= 0.
    """
    support = f.support()
    if support and support[-1] > limit:
        raise CNPError(
            ErrorCode.TRUNCATION_ERROR,
            f"Series has coefficients up to {support[-1]}, beyond limit {limit}",
            {"limit": limit, "support_max": support[-1]},
        )
    weights = weight_expansion(spec, limit)
    missing = [k for k in support if weights.get(k) == 0]
    if missing:
        raise CNPError(
            ErrorCode.DOMAIN_ERROR,
            f"Series uses indices {missing} outside the kernel's weight support",
            {"indices": missing},
        )
    with mpmath.workprec(working_precision(precision_bits)):
        point = HalfPlanePoint.of(u).value
        if not point.real > 0:
            raise CNPError(
                ErrorCode.HALF_PLANE_VIOLATION,
                "u must lie in the right half-plane",
                {"u": mpmath.nstr(point, 15)},
            )
        inner = mpmath.mpc(0)
        direct = mpmath.mpc(0)
        for k in support:
            a = to_mpf(f.get(k))
            w = to_mpf(weights.get(k))
            kernel_coeff = w * mpmath.power(k, -mpmath.conj(point))
            inner += a * mpmath.conj(kernel_coeff) / w
            direct += a * mpmath.power(k, -point)
        return abs(inner - direct)
