"""Truncated Dirichlet series arithmetic."""

from collections.abc import Sequence
from fractions import Fraction
from math import comb

import mpmath
import structlog

from cnpd.config import get_config, working_precision
from cnpd.models.errors import CNPError, ErrorCode
from cnpd.models.series import (
    CNPVerdict,
    DirichletCoefficients,
    NormValue,
    ZetaFactorVerdict,
)
from cnpd.services.exactmath import divisors, factorize

logger = structlog.get_logger(__name__)


def _check_limit(limit: int, *series: DirichletCoefficients) -> None:
    if limit < 1:
        raise CNPError(
            ErrorCode.TRUNCATION_ERROR,
            f"Truncation limit must be >= 1, got {limit}",
            {"requested": limit},
        )
    for s in series:
        if limit > s.limit:
            raise CNPError(
                ErrorCode.TRUNCATION_ERROR,
                f"Limit {limit} exceeds a series known only up to {s.limit}",
                {"requested": limit, "limit": s.limit},
            )


def multiply(
    a: DirichletCoefficients, b: DirichletCoefficients, limit: int
) -> DirichletCoefficients:
    """Dirichlet convolution truncated at limit.

    Args:
        a: Left factor.
        b: Right factor.
        limit: Truncation N; both factors must be known up to N.

    Returns:
        Coefficients of a * b up to N.

    Raises:
        CNPError: TRUNCATION_ERROR if N < 1 or a factor stops before N.
    """
    _check_limit(limit, a, b)
    out: dict[int, Fraction] = {}
    b_items = [(k, v) for k, v in b.coeffs.items() if k <= limit]
    for m, am in a.coeffs.items():
        if m > limit:
            break
        for k, bk in b_items:
            n = m * k
            if n > limit:
                break
            out[n] = out.get(n, Fraction(0)) + am * bk
    return DirichletCoefficients(limit=limit, coeffs=out)


def invert(a: DirichletCoefficients, limit: int) -> DirichletCoefficients:
    """Dirichlet inverse truncated at limit.

    c_1 = 1/a_1 and c_n = -(1/a_1) * sum_{m | n, m > 1} a_m c_{n/m}.

    Args:
        a: Series with a_1 != 0.
        limit: Truncation N.

    Returns:
        The inverse c up to N.

    Raises:
        CNPError: NOT_INVERTIBLE if a_1 = 0, TRUNCATION_ERROR if a stops
            before N.
    """
    _check_limit(limit, a)
    a1 = a.get(1)
    if a1 == 0:
        raise CNPError(
            ErrorCode.NOT_INVERTIBLE,
            "Series with a_1 = 0 has no Dirichlet inverse",
            {"a_1": "0"},
        )
    terms = [(m, am) for m, am in a.coeffs.items() if 1 < m <= limit]
    inv_a1 = 1 / a1
    c: dict[int, Fraction] = {1: inv_a1}
    for n in range(2, limit + 1):
        total = Fraction(0)
        for m, am in terms:
            if m > n:
                break
            if n % m == 0:
                cq = c.get(n // m)
                if cq:
                    total += am * cq
        if total:
            c[n] = -inv_a1 * total
    return DirichletCoefficients(limit=limit, coeffs=c)


def cnp_check(w: DirichletCoefficients, limit: int) -> CNPVerdict:
    """Whether the inverse coefficients c_n are <= 0 for 2 <= n <= limit.

    Args:
        w: Weight series, normally with w_1 = 1.
        limit: Truncation N.

    Returns:
        The verdict with the smallest n whose c_n is positive, if any.
    """
    c = invert(w, limit)
    witness = next((n for n in c.support() if n >= 2 and c.get(n) > 0), None)
    logger.debug("dirichlet.cnp_checked", limit=limit, witness=witness)
    return CNPVerdict(is_cnp_up_to_n=witness is None, witness=witness, limit=limit)


def ordered_factorization_count(m: int, n: int) -> int:
    """d_m(n): ordered factorizations of n into m factors.

    Args:
        m: Number of factors, >= 1.
        n: Integer to factor, >= 1.

    Returns:
        prod over p^e || n of binomial(e + m - 1, m - 1).

    Raises:
        CNPError: DOMAIN_ERROR if m < 1 or n < 1.
    """
    if m < 1 or n < 1:
        raise CNPError(
            ErrorCode.DOMAIN_ERROR,
            f"d_m(n) needs m >= 1 and n >= 1, got m={m}, n={n}",
            {"m": m, "n": n},
        )
    if n == 1:
        return 1
    result = 1
    for _, e in factorize(n).factors:
        result *= comb(e + m - 1, m - 1)
    return result


def _weight_of_frequency(b: Sequence[Fraction], frequency: int) -> Fraction:
    # b[0] belongs to frequency 2; frequencies past the list carry weight 0
    index = frequency - 2
    return Fraction(b[index]) if index < len(b) else Fraction(0)


def zeta_factor_condition(b: Sequence[Fraction], limit: int) -> ZetaFactorVerdict:
    """Check sum_{m >= 2, m | n} b_{m-1} >= 1 for 2 <= n <= limit.

    b lists the weights of the frequencies 2, 3, 4, ... in order.

    Args:
        b: Weights of the frequencies 2, 3, ...; missing ones count as 0.
        limit: Last n checked.

    Returns:
        The verdict, with the first failing n and its divisor sum.
    """
    for n in range(2, limit + 1):
        total = sum(
            (_weight_of_frequency(b, m) for m in divisors(n) if m >= 2), Fraction(0)
        )
        if total < 1:
            logger.debug("dirichlet.zeta_factor_failed", witness=n, total=str(total))
            return ZetaFactorVerdict(
                holds_up_to_n=False, witness=n, witness_sum=total, limit=limit
            )
    return ZetaFactorVerdict(holds_up_to_n=True, limit=max(limit, 1))


def zeta_quotient_coefficients(
    b: Sequence[Fraction], limit: int
) -> DirichletCoefficients:
    """Coefficients c_n, n >= 2, of the quotient kernel over the zeta kernel.

    (1 - sum b_{n-1} n^-s) * zeta(s) = 1 - sum_{n >= 2} c_n n^-s, so
    c_n = -1 + sum_{m >= 2, m | n} b_{m-1}.

    Args:
        b: Weights of the frequencies 2, 3, ... .
        limit: Truncation N.

    Returns:
        The c_n for 2 <= n <= N; index 1 is left out.
    """
    denominator = {1: Fraction(1)}
    for n in range(2, limit + 1):
        weight = _weight_of_frequency(b, n)
        if weight:
            denominator[n] = -weight
    product = multiply(
        DirichletCoefficients(limit=limit, coeffs=denominator),
        DirichletCoefficients.ones(limit),
        limit,
    )
    return DirichletCoefficients(
        limit=limit,
        coeffs={n: -product.get(n) for n in range(2, limit + 1)},
    )


def ordered_factorization_weights(m: int, limit: int) -> list[Fraction]:
    """Weights b_{n-1} = d_m(n) for n = 2..limit, frequency 2 first."""
    return [Fraction(ordered_factorization_count(m, n)) for n in range(2, limit + 1)]


def zeta_power_rho(
    m: int, tol: float | None = None, precision_bits: int | None = None
) -> mpmath.mpf:
    """The unique rho_m > 1 with zeta(rho_m)^m = 2.

    Args:
        m: Power of zeta, >= 1.
        tol: Bracket width; defaults to tolerances.rho.
        precision_bits: Working precision override.

    Returns:
        rho_m, by bisection.

    Raises:
        CNPError: DOMAIN_ERROR if m < 1.
    """
    if m < 1:
        raise CNPError(ErrorCode.DOMAIN_ERROR, f"m must be >= 1, got {m}", {"m": m})
    bits = working_precision(precision_bits)
    with mpmath.workprec(bits):
        eps = mpmath.mpf(tol if tol is not None else get_config().tolerances.rho)
        lo = mpmath.mpf(1) + mpmath.mpf(1) / (4 * m)
        hi = mpmath.mpf(4) + 2 * mpmath.log(m + 1, 2)

        def excess(x: mpmath.mpf) -> mpmath.mpf:
            return mpmath.zeta(x) ** m - 2

        while excess(lo) <= 0:
            lo = 1 + (lo - 1) / 2
        for _ in range(4 * bits):
            mid = (lo + hi) / 2
            value = excess(mid)
            if value > 0:
                lo = mid
            else:
                hi = mid
            if hi - lo < eps:
                break
        root = (lo + hi) / 2
    logger.debug("dirichlet.zeta_power_rho", m=m, rho=mpmath.nstr(root, 20))
    return root


def hk_norm(f: DirichletCoefficients, w: DirichletCoefficients) -> NormValue:
    """Squared norm sum a_n^2 / w_n of f in the weighted space.

    Args:
        f: Series to measure.
        w: Weights covering the support of f.

    Returns:
        The exact value, or infinite when f uses an index with w_n = 0.

    Raises:
        CNPError: TRUNCATION_ERROR if f reaches past w.limit.
    """
    if f.support() and max(f.support()) > w.limit:
        raise CNPError(
            ErrorCode.TRUNCATION_ERROR,
            f"f has terms beyond the weight limit {w.limit}",
            {"limit": w.limit, "max_index": max(f.support())},
        )
    total = Fraction(0)
    for n, an in f.coeffs.items():
        wn = w.get(n)
        if wn == 0:
            return NormValue(value=None, infinite=True)
        total += an * an / wn
    return NormValue(value=total, infinite=False)
