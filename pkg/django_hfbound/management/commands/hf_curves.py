from argparse import ArgumentParser
from typing import Any

from django_hfbound.reports import ReportBundle, build_curves

from ._base import ReportCommand


class Command(ReportCommand):
    help = "Rate curves of the classic and HF bounds for n = d..n_max."

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--q", type=int, default=4)
        parser.add_argument("--d", type=int, default=3)
        parser.add_argument("--n", type=int, default=500, dest="n_max")
        super().add_arguments(parser)

    def build(self, options: dict[str, Any]) -> ReportBundle:
        return build_curves(
            options["q"], options["d"], options["n_max"], **self.limits(options)
        )
