from argparse import ArgumentParser
from pathlib import Path
from typing import Any

from django_hfbound.exceptions import BadParameters
from django_hfbound.reports import (
    ReportBundle,
    build_code_verification,
    build_greedy_code,
)

from ._base import ReportCommand, UsageErrorParser, add_report_arguments


class Command(ReportCommand):
    help = "Build a greedy HF code or verify a code file."

    def add_arguments(self, parser: ArgumentParser) -> None:
        actions = parser.add_subparsers(
            dest="action", required=True, parser_class=UsageErrorParser
        )
        from_cli = getattr(parser, "called_from_command_line", None)

        greedy = actions.add_parser(
            "greedy", help="Greedy construction.", called_from_command_line=from_cli
        )
        greedy.add_argument("--q", type=int, required=True)
        greedy.add_argument("--n", type=int, required=True)
        greedy.add_argument("--d", type=int, required=True)
        greedy.add_argument(
            "--order",
            choices=["lexicographic", "seeded-shuffle"],
            default="lexicographic",
        )
        greedy.add_argument("--seed", type=int, default=0)
        greedy.add_argument(
            "--dna", action="store_true", help="Write q=4 words as ACGT."
        )
        add_report_arguments(greedy)

        verify = actions.add_parser(
            "verify", help="Check a code file.", called_from_command_line=from_cli
        )
        verify.add_argument("path")
        verify.add_argument("--d", type=int, default=None)
        verify.add_argument("--size", type=int, default=None)
        add_report_arguments(verify)

    def build(self, options: dict[str, Any]) -> ReportBundle:
        if options["action"] == "greedy":
            limits = self.limits(options)
            return build_greedy_code(
                options["q"],
                options["n"],
                options["d"],
                options["order"],
                seed=options["seed"],
                budget=limits["budget"],
                workers=limits["workers"],
                dna=options["dna"],
            )
        path = Path(options["path"])
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise BadParameters(f"cannot read code file {path}: {e}") from e
        return build_code_verification(
            text, d=options["d"], size=options["size"], source=str(path)
        )
