from argparse import ArgumentParser
from typing import Any

from django_hfbound.reports import ReportBundle, build_profile

from ._base import ReportCommand


class Command(ReportCommand):
    help = "Sphere sizes |H_r(center)| for r = 0..n."

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument(
            "center", help="Digits, comma-separated symbols or ACGT when q=4."
        )
        parser.add_argument("--q", type=int, default=4)
        super().add_arguments(parser)

    def build(self, options: dict[str, Any]) -> ReportBundle:
        return build_profile(options["center"], options["q"])
