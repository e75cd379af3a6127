"""Upper and lower bounds on the maximum size of (HF) codes.

Every bound is a quotient ``numerator / denominator`` of exact values rounded
down (upper bounds) or up (lower bounds). Above ``exact_length_limit`` the
numerator is never materialized and reports carry natural-log values only.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .codes import HfCode, code_sphere_stats, min_distance
from .exceptions import BadParameters, NonpositiveAverage
from .spheres import average_cumulative, extremal_cumulative
from .words import DEFAULT_BUDGET, Alphabet, count_hf

logger = logging.getLogger(__name__)

DEFAULT_EXACT_LENGTH_LIMIT = 64

LOWER_ROUNDING_NOTE = (
    "rounded up; the general form prints a floor, the q=4 form a ceiling"
)
GV_NOTE = "lower bound on the maximum code size, not a claim about every code"


class BoundKind(str, Enum):
    CLASSIC_SP = "classic_sp"
    CLASSIC_GV = "classic_gv"
    HF_UPPER_1 = "hf_upper_1"
    HF_UPPER_2 = "hf_upper_2"
    HF_UPPER_3 = "hf_upper_3"
    HF_LOWER_1 = "hf_lower_1"
    HF_LOWER_2 = "hf_lower_2"
    HF_LOWER_3 = "hf_lower_3"

    @property
    def is_upper(self) -> bool:
        return self in UPPER_KINDS

    @property
    def needs_code(self) -> bool:
        return self in (BoundKind.HF_UPPER_2, BoundKind.HF_LOWER_2)


UPPER_KINDS = frozenset(
    {
        BoundKind.CLASSIC_SP,
        BoundKind.HF_UPPER_1,
        BoundKind.HF_UPPER_2,
        BoundKind.HF_UPPER_3,
    }
)

PARAMETER_KINDS = (
    BoundKind.CLASSIC_SP,
    BoundKind.CLASSIC_GV,
    BoundKind.HF_UPPER_1,
    BoundKind.HF_LOWER_1,
    BoundKind.HF_UPPER_3,
    BoundKind.HF_LOWER_3,
)


@dataclass(frozen=True)
class BoundReport:
    """One evaluated bound.

    ``numerator`` and ``value`` are ``None`` in the log domain; ``log_value``
    (natural log of ``value``, or of the quotient in the log domain) is
    always set.
    """

    kind: BoundKind
    q: int
    n: int
    d: int
    radius_used: int
    numerator: int | None
    denominator: int | Fraction
    value: int | None
    log_value: float
    rate: float
    notes: tuple[str, ...] = field(default=())

    @property
    def exact(self) -> bool:
        return self.value is not None

    @property
    def value_log10(self) -> float:
        return self.log_value / math.log(10)


def _ln(x: int | Fraction) -> float:
    if isinstance(x, Fraction):
        return math.log(x.numerator) - math.log(x.denominator)
    return math.log(x)


def rate(value: int, q: int, n: int) -> float:
    """``(1/n) log_q(value)`` of an exact bound value."""
    if value < 1:
        raise BadParameters(f"rate needs a value of at least 1, got {value}")
    return log_rate(math.log(value), q, n)


def log_rate(log_value: float, q: int, n: int) -> float:
    """Rate of a value given by its natural log."""
    return log_value / (n * math.log(q))


def hf_space_log(q: int, n: int) -> float:
    """``ln(q (q-1)^(n-1))`` without building the integer."""
    return math.log(q) + (n - 1) * math.log(q - 1)


def sphere_volume(q: int, n: int, r: int) -> int:
    """``V_q(n, r) = C(n, r) (q-1)^r``: words at distance exactly ``r`` in ``A_q^n``."""
    if not 0 <= r <= n:
        return 0
    return math.comb(n, r) * (q - 1) ** r


def _check_parameters(q: int, n: int, d: int, *, hf: bool) -> None:
    if q < 2 or n < 1:
        raise BadParameters(f"need q >= 2 and n >= 1, got q={q} n={n}")
    if not 1 <= d <= n:
        raise BadParameters(f"distance must satisfy 1 <= d <= n={n}, got {d}")
    if hf and q < 3:
        raise BadParameters(f"HF bounds need q >= 3, got {q}")


def _report(
    kind: BoundKind,
    q: int,
    n: int,
    d: int,
    radius: int,
    denominator: int | Fraction,
    *,
    exact_length_limit: int,
    notes: Iterable[str] = (),
) -> BoundReport:
    hf = kind not in (BoundKind.CLASSIC_SP, BoundKind.CLASSIC_GV)
    all_notes = list(notes)
    if n > exact_length_limit:
        log_numerator = hf_space_log(q, n) if hf else n * math.log(q)
        log_value = log_numerator - _ln(denominator)
        all_notes.append(f"log domain above n={exact_length_limit}")
        return BoundReport(
            kind=kind,
            q=q,
            n=n,
            d=d,
            radius_used=radius,
            numerator=None,
            denominator=denominator,
            value=None,
            log_value=log_value,
            rate=log_rate(log_value, q, n),
            notes=tuple(all_notes),
        )
    numerator = count_hf(Alphabet(q), n) if hf else q**n
    quotient = Fraction(numerator) / denominator
    value = math.floor(quotient) if kind.is_upper else math.ceil(quotient)
    return BoundReport(
        kind=kind,
        q=q,
        n=n,
        d=d,
        radius_used=radius,
        numerator=numerator,
        denominator=denominator,
        value=value,
        log_value=math.log(value),
        rate=rate(value, q, n),
        notes=tuple(all_notes),
    )


def classic_sp(
    q: int, n: int, d: int, *, exact_length_limit: int = DEFAULT_EXACT_LENGTH_LIMIT
) -> BoundReport:
    _check_parameters(q, n, d, hf=False)
    radius = (d - 1) // 2
    volume = sum(sphere_volume(q, n, r) for r in range(radius + 1))
    return _report(
        BoundKind.CLASSIC_SP,
        q,
        n,
        d,
        radius,
        volume,
        exact_length_limit=exact_length_limit,
    )


def classic_gv(
    q: int, n: int, d: int, *, exact_length_limit: int = DEFAULT_EXACT_LENGTH_LIMIT
) -> BoundReport:
    _check_parameters(q, n, d, hf=False)
    radius = d - 1
    volume = sum(sphere_volume(q, n, r) for r in range(radius + 1))
    return _report(
        BoundKind.CLASSIC_GV,
        q,
        n,
        d,
        radius,
        volume,
        exact_length_limit=exact_length_limit,
        notes=[GV_NOTE],
    )


def hf_upper_1(
    q: int,
    n: int,
    d: int,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    exact_length_limit: int = DEFAULT_EXACT_LENGTH_LIMIT,
) -> BoundReport:
    _check_parameters(q, n, d, hf=True)
    radius = (d - 1) // 2
    extremes = extremal_cumulative(
        Alphabet(q), n, radius, budget=budget, workers=workers
    )
    return _report(
        BoundKind.HF_UPPER_1,
        q,
        n,
        d,
        radius,
        extremes.cumulative_min,
        exact_length_limit=exact_length_limit,
        notes=[f"a_min by {extremes.provenance}"],
    )


def hf_lower_1(
    q: int,
    n: int,
    d: int,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    exact_length_limit: int = DEFAULT_EXACT_LENGTH_LIMIT,
) -> BoundReport:
    _check_parameters(q, n, d, hf=True)
    radius = d - 1
    extremes = extremal_cumulative(
        Alphabet(q), n, radius, budget=budget, workers=workers
    )
    return _report(
        BoundKind.HF_LOWER_1,
        q,
        n,
        d,
        radius,
        extremes.cumulative_max,
        exact_length_limit=exact_length_limit,
        notes=[f"a_max by {extremes.provenance}", LOWER_ROUNDING_NOTE],
    )


def _average(
    q: int,
    n: int,
    radius: int,
    average: Fraction | int | None,
    budget: int,
    workers: int,
) -> Fraction:
    if average is None:
        return average_cumulative(
            Alphabet(q), n, radius, budget=budget, workers=workers
        )
    if average <= 0:
        raise NonpositiveAverage(f"average sphere sum must be positive, got {average}")
    return Fraction(average)


def hf_upper_3(
    q: int,
    n: int,
    d: int,
    average: Fraction | int | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    exact_length_limit: int = DEFAULT_EXACT_LENGTH_LIMIT,
) -> BoundReport:
    """Upper bound from an average sphere sum at radius ``(d-1)//2``.

    Without ``average`` the whole-space average over C_{q,n} is used.
    """
    _check_parameters(q, n, d, hf=True)
    radius = (d - 1) // 2
    mean = _average(q, n, radius, average, budget, workers)
    return _report(
        BoundKind.HF_UPPER_3,
        q,
        n,
        d,
        radius,
        mean,
        exact_length_limit=exact_length_limit,
    )


def hf_lower_3(
    q: int,
    n: int,
    d: int,
    average: Fraction | int | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    exact_length_limit: int = DEFAULT_EXACT_LENGTH_LIMIT,
) -> BoundReport:
    _check_parameters(q, n, d, hf=True)
    radius = d - 1
    mean = _average(q, n, radius, average, budget, workers)
    return _report(
        BoundKind.HF_LOWER_3,
        q,
        n,
        d,
        radius,
        mean,
        exact_length_limit=exact_length_limit,
        notes=[LOWER_ROUNDING_NOTE],
    )


def hf_upper_2(code: HfCode) -> BoundReport:
    """Upper bound from the codeword with the smallest sphere sum."""
    d = min_distance(code)
    radius = (d - 1) // 2
    stats = code_sphere_stats(code, radius)
    return _report(
        BoundKind.HF_UPPER_2,
        code.q,
        code.n,
        d,
        radius,
        stats.w_min,
        exact_length_limit=max(code.n, DEFAULT_EXACT_LENGTH_LIMIT),
        notes=[f"c_min = {stats.c_min}"],
    )


def hf_lower_2(code: HfCode) -> BoundReport:
    """Lower bound from the codeword with the largest sphere sum."""
    d = min_distance(code)
    radius = d - 1
    stats = code_sphere_stats(code, radius)
    return _report(
        BoundKind.HF_LOWER_2,
        code.q,
        code.n,
        d,
        radius,
        stats.w_max,
        exact_length_limit=max(code.n, DEFAULT_EXACT_LENGTH_LIMIT),
        notes=[f"c_max = {stats.c_max}", LOWER_ROUNDING_NOTE],
    )


def evaluate_bound(
    kind: BoundKind,
    q: int,
    n: int,
    d: int,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    exact_length_limit: int = DEFAULT_EXACT_LENGTH_LIMIT,
) -> BoundReport:
    """Evaluate any bound that needs only ``(q, n, d)``."""
    if kind is BoundKind.CLASSIC_SP:
        return classic_sp(q, n, d, exact_length_limit=exact_length_limit)
    if kind is BoundKind.CLASSIC_GV:
        return classic_gv(q, n, d, exact_length_limit=exact_length_limit)
    if kind.needs_code:
        raise BadParameters(f"{kind.value} needs a reference code")
    evaluators: dict[BoundKind, Callable[..., BoundReport]] = {
        BoundKind.HF_UPPER_1: hf_upper_1,
        BoundKind.HF_LOWER_1: hf_lower_1,
        BoundKind.HF_UPPER_3: hf_upper_3,
        BoundKind.HF_LOWER_3: hf_lower_3,
    }
    return evaluators[kind](
        q,
        n,
        d,
        budget=budget,
        workers=workers,
        exact_length_limit=exact_length_limit,
    )


def bound_grid(
    kinds: Iterable[BoundKind],
    q: int,
    lengths: Iterable[int],
    distances: Iterable[int],
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    exact_length_limit: int = DEFAULT_EXACT_LENGTH_LIMIT,
) -> Iterator[BoundReport]:
    """Reports ordered by kind, then distance, then length; cells with d > n skipped."""
    ns = list(lengths)
    ds = list(distances)
    for kind in kinds:
        logger.debug("evaluating %s over %d lengths", kind.value, len(ns))
        for d in ds:
            for n in ns:
                if d > n:
                    continue
                yield evaluate_bound(
                    kind,
                    q,
                    n,
                    d,
                    budget=budget,
                    workers=workers,
                    exact_length_limit=exact_length_limit,
                )
