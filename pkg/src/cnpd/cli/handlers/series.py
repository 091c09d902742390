"""Dirichlet series commands: cnp-check, dm, zeta-factor, zeta-quotient, norm."""

import argparse
from fractions import Fraction
from typing import Any

from cnpd.cli.base import Command
from cnpd.cli.codec import read_series, read_spec, series_to_wire
from cnpd.models.kernel import KernelSpec
from cnpd.services.dirichlet import (
    cnp_check,
    hk_norm,
    invert,
    ordered_factorization_count,
    zeta_factor_condition,
    zeta_quotient_coefficients,
)
from cnpd.services.exactmath import mobius


def _frequency_weights(spec: KernelSpec, limit: int) -> list[Fraction]:
    """Weights of the frequencies 2..limit, zero where the spec has none."""
    by_frequency = dict(zip(spec.n, spec.b, strict=True))
    return [by_frequency.get(f, Fraction(0)) for f in range(2, limit + 1)]


class CNPCheckCommand(Command):
    name = "cnp-check"
    help = "Test c_n <= 0 for the inverse of the weight series"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("weights", help="Series JSON file")
        parser.add_argument("--limit", type=int, required=True, help="Truncation N")

    def execute(self, args: argparse.Namespace) -> dict[str, Any]:
        w = read_series(args.weights)
        verdict = cnp_check(w, args.limit)
        return {
            "is_cnp_up_to_n": verdict.is_cnp_up_to_n,
            "witness": verdict.witness,
            "witness_mobius": (
                mobius(verdict.witness) if verdict.witness is not None else None
            ),
            "limit": verdict.limit,
            "inverse": series_to_wire(invert(w, args.limit)),
        }


class OrderedFactorizationCommand(Command):
    name = "dm"
    help = "Number of ordered factorizations d_m(n)"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--m", type=int, required=True, help="Number of factors")
        parser.add_argument("--n", type=int, required=True, help="Integer to factor")

    def execute(self, args: argparse.Namespace) -> dict[str, Any]:
        return {
            "m": args.m,
            "n": args.n,
            "value": ordered_factorization_count(args.m, args.n),
        }


class ZetaFactorCommand(Command):
    name = "zeta-factor"
    help = "Divisor-sum condition for a zeta factor of the kernel"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("spec", help="Spec JSON file")
        parser.add_argument("--limit", type=int, required=True, help="Truncation N")

    def execute(self, args: argparse.Namespace) -> dict[str, Any]:
        spec = read_spec(args.spec)
        weights = _frequency_weights(spec, args.limit)
        verdict = zeta_factor_condition(weights, args.limit)
        return {
            "holds_up_to_n": verdict.holds_up_to_n,
            "witness": verdict.witness,
            "witness_sum": (
                str(verdict.witness_sum) if verdict.witness_sum is not None else None
            ),
            "limit": verdict.limit,
        }


class ZetaQuotientCommand(Command):
    name = "zeta-quotient"
    help = "Coefficients of the kernel divided by the zeta kernel"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("spec", help="Spec JSON file")
        parser.add_argument("--limit", type=int, required=True, help="Truncation N")

    def execute(self, args: argparse.Namespace) -> dict[str, Any]:
        spec = read_spec(args.spec)
        c = zeta_quotient_coefficients(_frequency_weights(spec, args.limit), args.limit)
        return {
            **series_to_wire(c),
            "nonnegative": all(v >= 0 for v in c.coeffs.values()),
        }


class NormCommand(Command):
    name = "norm"
    help = "Squared norm of a series in the weighted space"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("series", help="Series JSON file")
        parser.add_argument("weights", help="Weight series JSON file")

    def execute(self, args: argparse.Namespace) -> dict[str, Any]:
        result = hk_norm(read_series(args.series), read_series(args.weights))
        return {
            "value": str(result.value) if result.value is not None else None,
            "infinite": result.infinite,
        }
