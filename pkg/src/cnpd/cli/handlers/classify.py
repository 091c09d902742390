"""Isomorphism commands: similar, classify, generating."""

import argparse
from typing import Any

from cnpd.cli.base import Command
from cnpd.cli.codec import read_spec
from cnpd.services.classify import classify, generating_class_check, similar_pattern


def _pair(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("a", help="First spec JSON file")
    parser.add_argument("b", help="Second spec JSON file")


class SimilarCommand(Command):
    name = "similar"
    help = "Similar-pattern test, equivalently equality of varieties"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        _pair(parser)

    def execute(self, args: argparse.Namespace) -> dict[str, Any]:
        result = similar_pattern(read_spec(args.a), read_spec(args.b))
        return {
            "similar": result.similar,
            "certificate": (
                result.certificate.to_wire() if result.certificate is not None else None
            ),
            "reason": result.reason,
        }


class ClassifyCommand(Command):
    name = "classify"
    help = "Decide (isometric) isomorphism of the multiplier algebras"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        _pair(parser)

    def execute(self, args: argparse.Namespace) -> dict[str, Any]:
        report = classify(read_spec(args.a), read_spec(args.b))
        return {
            **report.to_wire(),
            "isomorphic": report.isomorphic,
            "isometrically_isomorphic": report.isometrically_isomorphic,
        }


class GeneratingCommand(Command):
    name = "generating"
    help = "Detect a frequency generated by all the others"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("spec", help="Spec JSON file with d >= 3")

    def execute(self, args: argparse.Namespace) -> dict[str, Any]:
        form = generating_class_check(read_spec(args.spec))
        return {
            "in_class": form is not None,
            "form": form.to_wire() if form is not None else None,
        }
