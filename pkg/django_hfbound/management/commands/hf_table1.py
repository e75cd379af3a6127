from argparse import ArgumentParser
from typing import Any

from django_hfbound.reports import ReportBundle, build_table1

from ._base import ReportCommand


class Command(ReportCommand):
    help = "Recompute the q=4 bound table and diff it against the published values."

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--n", type=int, default=8, dest="max_n")
        parser.add_argument("--d", type=int, default=5, dest="max_d")
        super().add_arguments(parser)

    def build(self, options: dict[str, Any]) -> ReportBundle:
        return build_table1(options["max_n"], options["max_d"], **self.limits(options))
