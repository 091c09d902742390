"""Gram matrix positivity command."""

import argparse
from typing import Any

from cnpd.cli.base import Command
from cnpd.cli.codec import (
    complex_to_wire,
    output_digits,
    parse_complex,
    point_to_mpc,
    read_document,
    read_spec,
    real_to_wire,
)
from cnpd.models.errors import CNPError, ErrorCode
from cnpd.models.numeric import GramMode
from cnpd.services.numeric import gram_matrix, hermitian_defect, psd_check


def _read_points(path: str) -> list[Any]:
    document = read_document(path)
    if isinstance(document, dict):
        document = document.get("points")
    if not isinstance(document, list):
        raise CNPError(
            ErrorCode.VALIDATION_ERROR,
            'Points file must be a list or an object with a "points" list',
            {"violated_clause": "format", "path": path},
        )
    return [point_to_mpc([parse_complex(str(p))])[0] for p in document]


class GramCommand(Command):
    name = "gram"
    help = "Gram matrix of the kernel over sample points and its PSD test"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("spec", help="Spec JSON file")
        parser.add_argument("--points", required=True, help="Points JSON file")
        parser.add_argument(
            "--mode",
            choices=[m.value for m in GramMode],
            default=GramMode.KERNEL.value,
            help="Kernel values or 1 - 1/K",
        )
        parser.add_argument("--tol", type=float, default=None, help="PSD tolerance")

    def execute(self, args: argparse.Namespace) -> dict[str, Any]:
        digits = output_digits()
        mode = GramMode(args.mode)
        matrix = gram_matrix(read_spec(args.spec), _read_points(args.points), mode)
        result = psd_check(matrix, args.tol)
        return {
            "size": matrix.size,
            "mode": mode.value,
            "is_psd": result.is_psd,
            "min_eigenvalue": (
                real_to_wire(result.min_eigenvalue, digits)
                if result.min_eigenvalue is not None
                else None
            ),
            "hermitian_defect": real_to_wire(hermitian_defect(matrix), digits),
            "matrix": [
                [complex_to_wire(v, digits) for v in row] for row in matrix.entries
            ],
        }
