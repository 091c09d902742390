"""Exact arithmetic: factorization, rational rank and integer kernels."""

from collections.abc import Sequence
from fractions import Fraction
from math import gcd, isfinite, lcm

import mpmath
import structlog
import sympy
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from cnpd.models.arith import IntMatrix, PrimeFactorization
from cnpd.models.errors import CNPError, ErrorCode

logger = structlog.get_logger(__name__)


def _require_int(value: object, name: str, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise CNPError(
            ErrorCode.DOMAIN_ERROR,
            f"{name} must be an integer, got {value!r}",
            {name: repr(value)},
        )
    if value < minimum:
        raise CNPError(
            ErrorCode.DOMAIN_ERROR,
            f"{name} must be >= {minimum}, got {value}",
            {name: value, "minimum": minimum},
        )
    return value


def factorize(n: int) -> PrimeFactorization:
    """Factor n >= 2 into increasing prime powers.

    Args:
        n: Integer to factor.

    Returns:
        The (prime, exponent) pairs, primes increasing.

    Raises:
        CNPError: DOMAIN_ERROR if n is not an integer >= 2.
    """
    _require_int(n, "n", 2)
    factors = sympy.factorint(n)
    return PrimeFactorization(
        factors=tuple((int(p), int(e)) for p, e in sorted(factors.items()))
    )


def divisors(n: int) -> list[int]:
    """All positive divisors of n >= 1 in increasing order."""
    _require_int(n, "n", 1)
    return [int(k) for k in sympy.divisors(n)]


def mobius(n: int) -> int:
    """Moebius function of n >= 1.

    Args:
        n: Positive integer.

    Returns:
        0 if a square divides n, otherwise (-1) to the number of prime factors.

    Raises:
        CNPError: DOMAIN_ERROR if n is not a positive integer.
    """
    _require_int(n, "n", 1)
    if n == 1:
        return 1
    factors = factorize(n).factors
    if any(e > 1 for _, e in factors):
        return 0
    return -1 if len(factors) % 2 else 1


def exponent_vector(n: int, primes: Sequence[int]) -> list[int]:
    """Exponent of each listed prime in n."""
    _require_int(n, "n", 1)
    factors = dict(factorize(n).factors) if n > 1 else {}
    extra = set(factors) - set(primes)
    if extra:
        raise CNPError(
            ErrorCode.DOMAIN_ERROR,
            f"{n} has prime factors outside the given list: {sorted(extra)}",
            {"n": n, "missing_primes": sorted(extra)},
        )
    return [factors.get(p, 0) for p in primes]


def _to_fraction(q: object) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))  # type: ignore[attr-defined]


def _field_matrix(m: IntMatrix) -> DomainMatrix:
    rows = [[ZZ(x) for x in row] for row in m.rows]
    return DomainMatrix(rows, (m.nrows, m.cols), ZZ).convert_to(QQ)


def rational_rank(m: IntMatrix) -> int:
    """Rank of the row space over Q.

    Args:
        m: Integer matrix, possibly with no rows or columns.

    Returns:
        The rank; 0 for an empty matrix.
    """
    if m.nrows == 0 or m.cols == 0:
        return 0
    return int(_field_matrix(m).rank())


def primitive(v: Sequence[Fraction | int]) -> list[int]:
    """Scale a nonzero rational vector to coprime integers, first nonzero positive."""
    values = [Fraction(x) for x in v]
    if all(x == 0 for x in values):
        raise CNPError(
            ErrorCode.DOMAIN_ERROR,
            "Cannot make the zero vector primitive",
            {"length": len(values)},
        )
    denominator = lcm(*(x.denominator for x in values))
    scaled = [int(x * denominator) for x in values]
    g = 0
    for x in scaled:
        g = gcd(g, x)
    lead = next(x for x in scaled if x != 0)
    sign = 1 if lead > 0 else -1
    return [sign * x // g for x in scaled]


def integer_kernel_basis(m: IntMatrix) -> list[list[int]]:
    """Basis of {v : v^T * rows = 0} as primitive integer vectors.

    The basis is read off the reduced row echelon form of the transposed
    matrix, one vector per free column, so it only depends on the input.

    Args:
        m: Integer matrix whose rows are combined.

    Returns:
        One primitive integer vector per free column, of length m.nrows.
    """
    if m.nrows == 0:
        return []
    if m.cols == 0:
        return [[1 if i == j else 0 for i in range(m.nrows)] for j in range(m.nrows)]

    rref, pivots = _field_matrix(m.transpose()).rref()
    reduced = [[_to_fraction(x) for x in row] for row in rref.to_list()]
    pivot_list = list(pivots)
    free = [j for j in range(m.nrows) if j not in pivot_list]

    basis: list[list[int]] = []
    for f in free:
        v = [Fraction(0)] * m.nrows
        v[f] = Fraction(1)
        for row_index, p in enumerate(pivot_list):
            v[p] = -reduced[row_index][f]
        basis.append(primitive(v))

    logger.debug(
        "exactmath.kernel_basis",
        rows=m.nrows,
        cols=m.cols,
        dimension=len(basis),
    )
    return basis


def parse_rational(value: object) -> Fraction:
    """Read an exact rational from an int, a Fraction or a string.

    Strings may be "p/q", integers or decimals; decimals are taken exactly.

    Args:
        value: JSON scalar or Fraction.

    Returns:
        The exact rational.

    Raises:
        CNPError: VALIDATION_ERROR with clause "format" for booleans,
            non-finite floats, unreadable strings and other types.
    """
    if isinstance(value, bool):
        raise CNPError(
            ErrorCode.VALIDATION_ERROR,
            f"Expected a rational, got {value!r}",
            {"violated_clause": "format", "value": repr(value)},
        )
    if isinstance(value, Fraction | int):
        return Fraction(value)
    if isinstance(value, float):
        if not isfinite(value):
            raise CNPError(
                ErrorCode.VALIDATION_ERROR,
                f"Expected a finite rational, got {value!r}",
                {"violated_clause": "format", "value": repr(value)},
            )
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise CNPError(
                ErrorCode.VALIDATION_ERROR,
                f"Cannot read {value!r} as a rational",
                {"violated_clause": "format", "value": value},
            ) from e
    raise CNPError(
        ErrorCode.VALIDATION_ERROR,
        f"Expected a rational, got {type(value).__name__}",
        {"violated_clause": "format", "value": repr(value)},
    )


def to_mpf(q: Fraction | int) -> mpmath.mpf:
    """Nearest float to q at the current working precision."""
    q = Fraction(q)
    return mpmath.mpf(q.numerator) / q.denominator
