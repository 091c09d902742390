"""Circuit and variety commands."""

import argparse
from typing import Any

from cnpd.cli.base import Command
from cnpd.cli.codec import (
    complex_to_wire,
    output_digits,
    parse_point,
    point_to_mpc,
    read_raw_spec,
    read_spec,
    real_to_wire,
)
from cnpd.models.variety import GaussianRationalPoint
from cnpd.services.circuits import chain_case, enumerate_circuits, log_independent
from cnpd.services.variety import (
    affine_rank,
    affine_spectrum,
    build_variety,
    invert_point,
    member_exact,
    member_numeric,
)


class CircuitsCommand(Command):
    name = "circuits"
    help = "Minimal dependent index sets of the frequencies"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("spec", help="Spec JSON file")

    def execute(self, args: argparse.Namespace) -> dict[str, Any]:
        raw = read_raw_spec(args.spec)
        return {
            "d": raw.d,
            "circuits": [c.to_wire() for c in enumerate_circuits(raw.n)],
            "log_independent": log_independent(raw.n),
            "chain_case": chain_case(raw.n),
        }


class VarietyCommand(Command):
    name = "variety"
    help = "Defining relations of the multiplier variety"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("spec", help="Spec JSON file")

    def execute(self, args: argparse.Namespace) -> dict[str, Any]:
        variety = build_variety(read_spec(args.spec))
        return {
            "d": variety.d,
            "is_full_ball": variety.is_full_ball,
            "relations": [
                {
                    "circuit": r.circuit.to_wire(),
                    "asq": str(r.asq),
                    "bsq": str(r.bsq),
                }
                for r in variety.relations
            ],
        }


class MemberCommand(Command):
    name = "member"
    help = "Test whether a point lies on the variety"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("spec", help="Spec JSON file")
        parser.add_argument("--point", required=True, help='e.g. "1/2,1/2+1/4i,0"')
        parser.add_argument(
            "--exact", action="store_true", help="Exact Gaussian-rational test"
        )
        parser.add_argument("--tol", type=float, default=None, help="Numeric tolerance")

    def execute(self, args: argparse.Namespace) -> dict[str, Any]:
        variety = build_variety(read_spec(args.spec))
        point = parse_point(args.point)
        if args.exact:
            member = member_exact(variety, GaussianRationalPoint.of(point))
        else:
            member = member_numeric(variety, point_to_mpc(point), args.tol)
        return {"member": member, "mode": "exact" if args.exact else "numeric"}


class InvertPointCommand(Command):
    name = "invert-point"
    help = "Find s with f(s) equal to a point"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("spec", help="Spec JSON file")
        parser.add_argument("--point", required=True, help="Comma-separated point")
        parser.add_argument("--tol", type=float, default=None, help="Residual bound")
        parser.add_argument(
            "--branches",
            type=int,
            default=None,
            help="Logarithm branches scanned on each side of the principal one",
        )

    def execute(self, args: argparse.Namespace) -> dict[str, Any]:
        spec = read_spec(args.spec)
        s = invert_point(
            spec, point_to_mpc(parse_point(args.point)), args.tol, args.branches
        )
        return {
            "found": s is not None,
            "s": complex_to_wire(s, output_digits()) if s is not None else None,
        }


class AffineRankCommand(Command):
    name = "affine-rank"
    help = "Numerical rank of sampled feature-map values"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("spec", help="Spec JSON file")
        parser.add_argument("--samples", type=int, required=True, help="Sample count K")
        parser.add_argument("--tol", type=float, default=None, help="Relative cutoff")

    def execute(self, args: argparse.Namespace) -> dict[str, Any]:
        spec = read_spec(args.spec)
        digits = output_digits()
        return {
            "d": spec.d,
            "rank": affine_rank(spec, args.samples, args.tol),
            "singular_values": [
                real_to_wire(sv, digits) for sv in affine_spectrum(spec, args.samples)
            ],
        }
