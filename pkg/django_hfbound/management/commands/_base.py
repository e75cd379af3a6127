import logging
from argparse import ArgumentParser
from pathlib import Path
from typing import Any, NoReturn

from django.core.management.base import BaseCommand, CommandError, CommandParser

from django_hfbound import conf
from django_hfbound.exceptions import BadParameters, HfError
from django_hfbound.reports import EXIT_OK, EXIT_USAGE, ReportBundle, render

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("text", "csv", "json")


class UsageErrorParser(CommandParser):
    """Exits with the usage-error status instead of argparse's 2."""

    def exit(self, status: int = 0, message: str | None = None) -> NoReturn:
        super().exit(EXIT_USAGE if status else 0, message)


def add_report_arguments(parser: ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=OUTPUT_FORMATS,
        default="text",
        dest="output_format",
    )
    parser.add_argument(
        "--out",
        default=None,
        help="Write the report to this path instead of standard output.",
    )
    parser.add_argument(
        "--budget",
        type=int,
        default=None,
        help="Largest search space an exhaustive scan may visit.",
    )


class ReportCommand(BaseCommand):
    """Build a report bundle, write it out and exit with its status.

    Exit codes: 0 success, 2 unexpected diffs against the published tables,
    3 a failed invariant suite, 64 a usage error.
    """

    def create_parser(
        self, prog_name: str, subcommand: str, **kwargs: Any
    ) -> CommandParser:
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.__class__ = UsageErrorParser
        return parser

    def add_arguments(self, parser: ArgumentParser) -> None:
        add_report_arguments(parser)

    def build(self, options: dict[str, Any]) -> ReportBundle:
        raise NotImplementedError

    def limits(self, options: dict[str, Any]) -> dict[str, int]:
        budget = options.get("budget")
        if budget is None:
            budget = conf.enumeration_budget()
        elif budget < 1:
            raise BadParameters(f"--budget must be positive, got {budget}")
        return {
            "budget": budget,
            "workers": conf.worker_count(),
            "exact_length_limit": conf.exact_length_limit(),
        }

    def handle(self, *args: Any, **options: Any) -> None:
        try:
            bundle = self.build(options)
        except HfError as e:
            raise CommandError(str(e), returncode=EXIT_USAGE) from e
        except Exception:
            logger.exception("%s failed", self.__module__.rsplit(".", 1)[-1])
            raise

        output = render(bundle, options["output_format"])
        path = options.get("out")
        if path:
            Path(path).write_text(output, encoding="utf-8")
            logger.info("wrote %s report to %s", bundle.command, path)
        else:
            self.stdout.write(output, ending="")

        status = bundle.exit_status
        if status == EXIT_OK:
            return
        if bundle.failed_suites:
            names = ", ".join(result.name for result in bundle.failed_suites)
            raise CommandError(f"invariant check failed: {names}", returncode=status)
        raise CommandError(
            f"{len(bundle.unexpected_diffs)} cell(s) differ from the published tables",
            returncode=status,
        )
