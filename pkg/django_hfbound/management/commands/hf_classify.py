from argparse import ArgumentParser
from typing import Any

from django_hfbound.reports import ReportBundle, build_classify

from ._base import ReportCommand


class Command(ReportCommand):
    help = "Group every HF DNA word of length n by its sphere profile."

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--n", type=int, required=True)
        super().add_arguments(parser)

    def build(self, options: dict[str, Any]) -> ReportBundle:
        return build_classify(options["n"], budget=self.limits(options)["budget"])
