"""Multiplier varieties: presentation, membership and point inversion."""

from collections.abc import Sequence
from fractions import Fraction
from math import prod

import mpmath
import structlog
from sympy.polys.domains import QQ, QQ_I

from cnpd.config import get_config, working_precision
from cnpd.models.circuit import Circuit
from cnpd.models.errors import CNPError, ErrorCode
from cnpd.models.kernel import KernelSpec
from cnpd.models.variety import GaussianRationalPoint, PolyRelation, VarietyPresentation
from cnpd.services.circuits import enumerate_circuits
from cnpd.services.exactmath import to_mpf
from cnpd.services.kernelspec import f_eval

logger = structlog.get_logger(__name__)

ComplexLike = complex | float | int | Fraction | mpmath.mpc | mpmath.mpf


def _side_weight(spec: KernelSpec, circuit: Circuit, side: tuple[int, ...]) -> Fraction:
    return prod((spec.b[i] ** circuit.beta[i] for i in side), start=Fraction(1))


def build_variety(spec: KernelSpec) -> VarietyPresentation:
    """One relation per circuit of the frequency data.

    Args:
        spec: Kernel spec.

    Returns:
        The presentation; with no circuits it is the whole ball.
    """
    relations = tuple(
        PolyRelation(
            circuit=c,
            asq=_side_weight(spec, c, c.J1),
            bsq=_side_weight(spec, c, c.J2),
        )
        for c in enumerate_circuits(spec.n)
    )
    logger.debug(
        "variety.built",
        d=spec.d,
        relations=len(relations),
        full_ball=not relations,
    )
    return VarietyPresentation(
        d=spec.d, relations=relations, is_full_ball=not relations
    )


def _check_dimension(variety: VarietyPresentation, d: int) -> None:
    if d != variety.d:
        raise CNPError(
            ErrorCode.DIMENSION_MISMATCH,
            f"Point has {d} coordinates, the variety lives in dimension {variety.d}",
            {"point_dimension": d, "variety_dimension": variety.d},
        )


def _qq(q: Fraction) -> object:
    return QQ(q.numerator, q.denominator)


def _gaussian_monomial(
    coords: list[object], circuit: Circuit, side: tuple[int, ...]
) -> object:
    result = QQ_I(QQ(1), QQ(0))
    for i in side:
        for _ in range(circuit.beta[i]):
            result = result * coords[i]
    return result


def member_exact(variety: VarietyPresentation, z: GaussianRationalPoint) -> bool:
    """Exact membership of a Gaussian-rational point.

    For each relation with P1 = prod_{J1} z^beta and P2 = prod_{J2} z^beta,
    A*P2 = B*P1 holds iff Bsq*|P1|^2 = Asq*|P2|^2 and P1*conj(P2) is real
    and nonnegative.

    Args:
        variety: Presentation to test against.
        z: Point with Gaussian-rational coordinates.

    Returns:
        True iff ||z|| < 1 and every relation holds exactly.

    Raises:
        CNPError: DIMENSION_MISMATCH if z has the wrong dimension.
    """
    _check_dimension(variety, z.d)
    if z.norm_sq() >= 1:
        return False
    coords = [QQ_I(_qq(re), _qq(im)) for re, im in z.coords]
    zero = QQ(0)
    for relation in variety.relations:
        c = relation.circuit
        p1 = _gaussian_monomial(coords, c, c.J1)
        p2 = _gaussian_monomial(coords, c, c.J2)
        x1, y1 = p1.x, p1.y  # type: ignore[attr-defined]
        x2, y2 = p2.x, p2.y  # type: ignore[attr-defined]
        lhs = _qq(relation.bsq) * (x1 * x1 + y1 * y1)
        rhs = _qq(relation.asq) * (x2 * x2 + y2 * y2)
        if lhs != rhs:
            return False
        if y1 * x2 - x1 * y2 != zero or x1 * x2 + y1 * y2 < zero:
            return False
    return True


def evaluate_relations(
    variety: VarietyPresentation,
    z: Sequence[ComplexLike],
    precision_bits: int | None = None,
) -> list[mpmath.mpc]:
    """Values q_J(z) = A*prod_{J2} z^beta - B*prod_{J1} z^beta.

    Args:
        variety: Presentation whose relations are evaluated.
        z: Point with d coordinates.
        precision_bits: Working precision override.

    Returns:
        One value per relation, in circuit order.

    Raises:
        CNPError: DIMENSION_MISMATCH if z has the wrong dimension.
    """
    _check_dimension(variety, len(z))
    with mpmath.workprec(working_precision(precision_bits)):
        values = [mpmath.mpc(_as_number(x)) for x in z]
        out = []
        for relation in variety.relations:
            c = relation.circuit
            p1 = mpmath.fprod(values[i] ** c.beta[i] for i in c.J1)
            p2 = mpmath.fprod(values[i] ** c.beta[i] for i in c.J2)
            a = mpmath.sqrt(to_mpf(relation.asq))
            b = mpmath.sqrt(to_mpf(relation.bsq))
            out.append(a * p2 - b * p1)
        return out


def _as_number(x: ComplexLike) -> ComplexLike:
    if isinstance(x, Fraction):
        return to_mpf(x)
    return x


def member_numeric(
    variety: VarietyPresentation,
    z: Sequence[ComplexLike],
    tol: float | None = None,
    precision_bits: int | None = None,
) -> bool:
    """Membership up to |q_J(z)| < tol, with the ball condition ||z|| < 1.

    Args:
        variety: Presentation to test against.
        z: Point with d coordinates.
        tol: Absolute bound on each relation; defaults to tolerances.membership.
        precision_bits: Working precision override.

    Returns:
        Whether z is in the ball and every relation is below tol.

    Raises:
        CNPError: DIMENSION_MISMATCH for the wrong dimension, VALIDATION_ERROR
            for a non-positive tolerance.
    """
    _check_dimension(variety, len(z))
    bits = working_precision(precision_bits)
    with mpmath.workprec(bits):
        eps = mpmath.mpf(tol if tol is not None else get_config().tolerances.membership)
        if not eps > 0:
            raise CNPError(
                ErrorCode.VALIDATION_ERROR,
                f"Tolerance must be positive, got {tol}",
                {"violated_clause": "tolerance"},
            )
        values = [mpmath.mpc(_as_number(x)) for x in z]
        if mpmath.fsum(abs(v) ** 2 for v in values) >= 1:
            return False
        return all(abs(q) < eps for q in evaluate_relations(variety, values, bits))


def _branch_order(limit: int) -> list[int]:
    order = [0]
    for k in range(1, limit + 1):
        order.extend((k, -k))
    return order


def invert_point(
    spec: KernelSpec,
    z: Sequence[ComplexLike],
    tol: float | None = None,
    branch_search: int | None = None,
    precision_bits: int | None = None,
) -> mpmath.mpc | None:
    """Find s in the right half-plane with f(s) = z, or None.

    s is read off the first coordinate, s = -ln(z_1 / sqrt(b_1)) / ln n_1,
    starting from the principal logarithm and then scanning the branches
    s + 2*pi*i*k / ln n_1 for k = 1, -1, 2, -2, ..., +-branch_search. A
    preimage is therefore found only when
    |Im s - Im s_principal| <= branch_search * 2*pi / ln n_1.

    Args:
        spec: Kernel spec.
        z: Point with d complex coordinates.
        tol: Residual bound on |f(s) - z|; defaults to tolerances.invert_point.
        branch_search: Branches scanned on each side of the principal one;
            defaults to variety.branch_search.
        precision_bits: Working precision override.

    Returns:
        The first s whose residual passes, or None.

    Raises:
        CNPError: DIMENSION_MISMATCH if z does not have d coordinates,
            VALIDATION_ERROR for a negative branch_search, DOMAIN_ERROR for
            the zero point.
    """
    if len(z) != spec.d:
        raise CNPError(
            ErrorCode.DIMENSION_MISMATCH,
            f"Point has {len(z)} coordinates, the spec has d = {spec.d}",
            {"point_dimension": len(z), "d": spec.d},
        )
    config = get_config()
    bits = working_precision(precision_bits)
    branches = (
        branch_search if branch_search is not None else config.variety.branch_search
    )
    if branches < 0:
        raise CNPError(
            ErrorCode.VALIDATION_ERROR,
            f"branch_search must be non-negative, got {branches}",
            {"violated_clause": "branch_search", "branch_search": branches},
        )
    with mpmath.workprec(bits):
        eps = mpmath.mpf(tol if tol is not None else config.tolerances.invert_point)
        values = [mpmath.mpc(_as_number(x)) for x in z]
        if all(v == 0 for v in values):
            raise CNPError(
                ErrorCode.DOMAIN_ERROR,
                "The zero point is not the image of any s",
                {"point": "0"},
            )
        if values[0] == 0:
            logger.debug("variety.invert_point_none", reason="first_coordinate_zero")
            return None

        log_base = mpmath.log(spec.n[0])
        principal = -mpmath.log(values[0] / mpmath.sqrt(to_mpf(spec.b[0]))) / log_base
        if not principal.real > 0:
            logger.debug("variety.invert_point_none", reason="left_half_plane")
            return None
        period = 2 * mpmath.pi * mpmath.j / log_base
        for k in _branch_order(branches):
            s = principal + k * period
            image = f_eval(spec, s, bits)
            residual = mpmath.sqrt(
                mpmath.fsum(
                    abs(fi - zi) ** 2 for fi, zi in zip(image, values, strict=True)
                )
            )
            if residual < eps:
                logger.debug("variety.invert_point_found", branch=k)
                return s
        logger.debug("variety.invert_point_none", reason="residual", branches=branches)
        return None


def affine_spectrum(
    spec: KernelSpec, sample_count: int, precision_bits: int | None = None
) -> list[mpmath.mpf]:
    """Singular values, largest first, of the matrix with rows f(1), ..., f(K).

    Rows are scaled to unit maximum modulus and columns to unit norm first;
    neither changes the rank.

    Args:
        spec: Kernel spec.
        sample_count: Number K of sample points 1, ..., K; at least d.
        precision_bits: Working precision override.

    Returns:
        The d singular values.

    Raises:
        CNPError: VALIDATION_ERROR with clause "sample_count" if K < d.
    """
    if sample_count < spec.d:
        raise CNPError(
            ErrorCode.VALIDATION_ERROR,
            f"Need at least d = {spec.d} samples, got {sample_count}",
            {"violated_clause": "sample_count", "d": spec.d},
        )
    bits = working_precision(precision_bits)
    with mpmath.workprec(bits):
        rows = [
            [v.real for v in f_eval(spec, k, bits)]
            for k in range(1, sample_count + 1)
        ]
        rows = [[x / max(abs(y) for y in row) for x in row] for row in rows]
        norms = [
            mpmath.sqrt(mpmath.fsum(row[j] ** 2 for row in rows)) for j in range(spec.d)
        ]
        scaled = mpmath.matrix(
            [[x / norms[j] for j, x in enumerate(row)] for row in rows]
        )
        singular = mpmath.svd_r(scaled, compute_uv=False)
        return sorted((mpmath.mpf(singular[i]) for i in range(spec.d)), reverse=True)


def affine_rank(
    spec: KernelSpec,
    sample_count: int,
    tol: float | None = None,
    precision_bits: int | None = None,
) -> int:
    """Numerical rank of the sampled feature map; the full value is d.

    Args:
        spec: Kernel spec.
        sample_count: Number of sample points, at least d.
        tol: Cutoff relative to the largest singular value; defaults to
            tolerances.rank.
        precision_bits: Working precision override.

    Returns:
        The count of singular values above the cutoff.
    """
    spectrum = affine_spectrum(spec, sample_count, precision_bits)
    cutoff = mpmath.mpf(tol if tol is not None else get_config().tolerances.rank)
    largest = spectrum[0]
    rank = sum(1 for sv in spectrum if sv > cutoff * largest)
    logger.debug("variety.affine_rank", d=spec.d, samples=sample_count, rank=rank)
    return rank
