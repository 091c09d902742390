"""Kernel spec commands: validate, rho, normalize, weights, eval, from-weights."""

import argparse
from typing import Any

import mpmath

from cnpd.cli.base import Command
from cnpd.cli.codec import (
    complex_to_wire,
    output_digits,
    parse_complex,
    point_to_mpc,
    read_raw_spec,
    read_series,
    read_spec,
    real_to_wire,
    series_to_wire,
)
from cnpd.config import working_precision
from cnpd.services.kernelspec import (
    f_eval,
    kernel_eval,
    normalize,
    solve_rho,
    spec_from_weights,
    spec_to_wire,
    weight_expansion,
)


def _tol_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, default=None, help="Tolerance")


def _limit_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--limit", type=int, required=True, help="Truncation limit N")


class ValidateCommand(Command):
    name = "validate"
    help = "Check a kernel spec against every clause"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("spec", help="Spec JSON file")

    def execute(self, args: argparse.Namespace) -> dict[str, Any]:
        spec = read_spec(args.spec)
        return {
            "valid": True,
            "d": spec.d,
            "weight_sum": str(spec.weight_sum),
            **spec_to_wire(spec),
        }


class RhoCommand(Command):
    name = "rho"
    help = "Solve sum b_j n_j^-rho = 1"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("spec", help="Spec JSON file, weights need not sum to 1")
        _tol_argument(parser)

    def execute(self, args: argparse.Namespace) -> dict[str, Any]:
        rho = solve_rho(read_raw_spec(args.spec), args.tol)
        return {"rho": real_to_wire(rho, output_digits())}


class NormalizeCommand(Command):
    name = "normalize"
    help = "Shift weights so they sum to 1"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("spec", help="Spec JSON file, weights need not sum to 1")
        _tol_argument(parser)

    def execute(self, args: argparse.Namespace) -> dict[str, Any]:
        digits = output_digits()
        result = normalize(read_raw_spec(args.spec), args.tol)
        with mpmath.workprec(working_precision()):
            total = mpmath.fsum(result.weights)
        return {
            "rho": real_to_wire(result.rho, digits),
            "weights": [real_to_wire(w, digits) for w in result.weights],
            "n": list(result.n),
            "weight_sum": real_to_wire(total, digits),
        }


class WeightsCommand(Command):
    name = "weights"
    help = "Kernel weights w_n up to N"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("spec", help="Spec JSON file")
        _limit_argument(parser)

    def execute(self, args: argparse.Namespace) -> dict[str, Any]:
        return series_to_wire(weight_expansion(read_spec(args.spec), args.limit))


class EvalCommand(Command):
    name = "eval"
    help = "Evaluate the kernel and the feature map"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("spec", help="Spec JSON file")
        parser.add_argument("--s", required=True, help='First point, e.g. "1+2i"')
        parser.add_argument("--u", default=None, help="Second point, defaults to s")

    def execute(self, args: argparse.Namespace) -> dict[str, Any]:
        digits = output_digits()
        spec = read_spec(args.spec)
        s = point_to_mpc([parse_complex(args.s)])[0]
        u = point_to_mpc([parse_complex(args.u)])[0] if args.u is not None else s
        return {
            "s": complex_to_wire(s, digits),
            "u": complex_to_wire(u, digits),
            "kernel": complex_to_wire(kernel_eval(spec, s, u), digits),
            "f_s": [complex_to_wire(z, digits) for z in f_eval(spec, s)],
        }


class FromWeightsCommand(Command):
    name = "from-weights"
    help = "Recover (b, n) from CNP kernel weights"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("weights", help="Series JSON file with w_1 = 1")
        _limit_argument(parser)

    def execute(self, args: argparse.Namespace) -> dict[str, Any]:
        raw = spec_from_weights(read_series(args.weights), args.limit)
        return {
            "d": raw.d,
            "weight_sum": str(raw.weight_sum),
            **spec_to_wire(raw),
        }
