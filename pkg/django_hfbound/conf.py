import os

from django.conf import settings

from .bounds import DEFAULT_EXACT_LENGTH_LIMIT
from .exceptions import BadParameters
from .words import DEFAULT_BUDGET

DEFAULT_WORKERS = 1


def enumeration_budget() -> int:
    """Largest ``|C_{q,n}|`` an exhaustive scan may visit.

    The ``HFBOUND_BUDGET`` environment variable wins over the Django setting
    of the same name.
    """
    raw = os.environ.get("HFBOUND_BUDGET")
    if raw:
        try:
            budget = int(raw)
        except ValueError as e:
            raise BadParameters(
                f"HFBOUND_BUDGET must be an integer, got {raw!r}"
            ) from e
    else:
        budget = int(getattr(settings, "HFBOUND_BUDGET", DEFAULT_BUDGET))
    if budget < 1:
        raise BadParameters(f"enumeration budget must be positive, got {budget}")
    return budget


def worker_count() -> int:
    workers = int(getattr(settings, "HFBOUND_WORKERS", DEFAULT_WORKERS))
    return max(1, workers)


def exact_length_limit() -> int:
    """Word length above which reports switch to log-domain values."""
    limit = getattr(settings, "HFBOUND_EXACT_LENGTH_LIMIT", DEFAULT_EXACT_LENGTH_LIMIT)
    return int(limit)
