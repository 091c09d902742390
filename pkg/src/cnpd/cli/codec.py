"""JSON wire format: documents, rationals, complex points and series."""

import json
import re
from collections.abc import Mapping, Sequence
from fractions import Fraction
from pathlib import Path
from typing import Any

import mpmath

from cnpd.config import get_config, working_precision
from cnpd.models.errors import CNPError, ErrorCode
from cnpd.models.kernel import KernelSpec, RawSpec
from cnpd.models.series import DirichletCoefficients
from cnpd.services.exactmath import parse_rational, to_mpf
from cnpd.services.kernelspec import load_spec, validate

# a sign that starts the imaginary part: not leading and not an exponent sign
_SPLIT = re.compile(r"(?<=[^eE])[+-]")


def read_document(path: str | Path) -> Any:
    """Parse a JSON input file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise CNPError(
            ErrorCode.VALIDATION_ERROR,
            f"Cannot read input file {path}: {e.strerror}",
            {"violated_clause": "input", "path": str(path)},
        ) from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise CNPError(
            ErrorCode.VALIDATION_ERROR,
            f"Input file {path} is not valid JSON: {e.msg}",
            {"violated_clause": "format", "path": str(path), "line": e.lineno},
        ) from e


def read_raw_spec(path: str | Path) -> RawSpec:
    return load_spec(read_document(path))


def read_spec(path: str | Path) -> KernelSpec:
    return validate(read_raw_spec(path))


def load_series(document: Any) -> DirichletCoefficients:
    """Series from {"values": [a_1, a_2, ...]} or {"coeffs": {"n": a_n}}.

    An optional "limit" extends the series with zeros; values default to
    limit = len(values), coeffs to the largest index.
    """
    if not isinstance(document, Mapping) or not (
        ("values" in document) ^ ("coeffs" in document)
    ):
        raise CNPError(
            ErrorCode.VALIDATION_ERROR,
            'Series must be an object with exactly one of "values" or "coeffs"',
            {"violated_clause": "format"},
        )
    coeffs: dict[int, Fraction] = {}
    if "values" in document:
        values = document["values"]
        if not isinstance(values, list):
            raise _format_error('"values" must be a list')
        coeffs = {i + 1: parse_rational(v) for i, v in enumerate(values)}
        natural = len(values)
    else:
        raw = document["coeffs"]
        if not isinstance(raw, Mapping):
            raise _format_error('"coeffs" must be an object')
        for key, value in raw.items():
            try:
                index = int(key)
            except ValueError:
                raise _format_error(f"series index {key!r} is not an integer") from None
            if index < 1:
                raise _format_error(f"series index {index} must be >= 1")
            coeffs[index] = parse_rational(value)
        natural = max(coeffs, default=1)
    limit = document.get("limit", natural)
    if not isinstance(limit, int) or isinstance(limit, bool) or limit < natural:
        raise _format_error(f'"limit" must be an integer >= {natural}')
    return DirichletCoefficients(limit=max(limit, 1), coeffs=coeffs)


def _format_error(message: str) -> CNPError:
    return CNPError(ErrorCode.VALIDATION_ERROR, message, {"violated_clause": "format"})


def read_series(path: str | Path) -> DirichletCoefficients:
    return load_series(read_document(path))


def _parse_part(text: str) -> Fraction:
    if not text or text in "+-":
        return Fraction(1 if text != "-" else -1)
    return parse_rational(text)


def parse_complex(text: str) -> tuple[Fraction, Fraction]:
    """Exact (re, im) from "re", "re+imi", "imi" or "re-imi".

    Decimal parts are read exactly, so "0.1" is 1/10.
    """
    token = text.strip().replace(" ", "")
    if not token:
        raise _format_error("empty complex number")
    if not token.endswith(("i", "j")):
        return parse_rational(token), Fraction(0)
    body = token[:-1]
    splits = [m.start() for m in _SPLIT.finditer(body) if m.start() > 0]
    if not splits:
        return Fraction(0), _parse_part(body)
    cut = splits[-1]
    return parse_rational(body[:cut]), _parse_part(body[cut:])


def parse_point(text: str) -> list[tuple[Fraction, Fraction]]:
    """Comma-separated complex components."""
    return [parse_complex(part) for part in text.split(",")]


def point_to_mpc(point: Sequence[tuple[Fraction, Fraction]]) -> list[mpmath.mpc]:
    """Complex values rounded at the working precision."""
    with mpmath.workprec(working_precision()):
        return [mpmath.mpc(to_mpf(re), to_mpf(im)) for re, im in point]


def real_to_wire(x: mpmath.mpf, digits: int) -> str:
    return str(mpmath.nstr(x, digits))


def complex_to_wire(z: mpmath.mpc | mpmath.mpf, digits: int) -> dict[str, str]:
    if isinstance(z, mpmath.mpf):
        re_part, im_part = z, mpmath.mpf(0)
    else:
        re_part, im_part = z.real, z.imag
    return {"re": real_to_wire(re_part, digits), "im": real_to_wire(im_part, digits)}


def series_to_wire(series: DirichletCoefficients) -> dict[str, Any]:
    return {
        "limit": series.limit,
        "coeffs": {str(k): str(v) for k, v in series.coeffs.items()},
    }


def dumps(document: Any) -> str:
    """Canonical rendering: sorted keys, two-space indent."""
    return json.dumps(document, sort_keys=True, indent=2)


def output_digits() -> int:
    return get_config().precision.output_digits
