from argparse import ArgumentParser
from typing import Any

from django_hfbound.reports import ReportBundle, build_bound

from ._base import ReportCommand


class Command(ReportCommand):
    help = "Evaluate every parameter-only bound at one (q, n, d) point."

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--q", type=int, required=True)
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--d", type=int, required=True)
        parser.add_argument(
            "--radius",
            type=int,
            default=None,
            help="Also report the extremal and average sphere sums at this radius.",
        )
        super().add_arguments(parser)

    def build(self, options: dict[str, Any]) -> ReportBundle:
        return build_bound(
            options["q"],
            options["n"],
            options["d"],
            options["radius"],
            **self.limits(options),
        )
