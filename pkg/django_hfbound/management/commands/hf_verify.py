from argparse import ArgumentParser
from typing import Any

from django_hfbound.reports import SUITES, ReportBundle, build_verify

from ._base import ReportCommand


class Command(ReportCommand):
    help = "Run the cross-module invariant suites."

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--suite", choices=[*SUITES, "all"], default="all")
        parser.add_argument("--seed", type=int, default=0)
        super().add_arguments(parser)

    def build(self, options: dict[str, Any]) -> ReportBundle:
        limits = self.limits(options)
        return build_verify(
            options["suite"],
            budget=limits["budget"],
            workers=limits["workers"],
            seed=options["seed"],
        )
