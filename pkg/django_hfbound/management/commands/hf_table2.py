from argparse import ArgumentParser
from typing import Any

from django_hfbound.reports import ReportBundle, build_table2

from ._base import ReportCommand


class Command(ReportCommand):
    help = "Sphere profiles of the period-3 and period-2 DNA words."

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--n", type=int, default=10, dest="max_n")
        super().add_arguments(parser)

    def build(self, options: dict[str, Any]) -> ReportBundle:
        return build_table2(options["max_n"])
