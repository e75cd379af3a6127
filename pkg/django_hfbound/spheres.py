"""HF sphere sizes.

``H_r(a)`` is the set of HF words at Hamming distance exactly ``r`` from the
center ``a``. Sizes come from a dynamic program over prefixes of the center,
from closed forms for ``r = 1, 2`` and from a brute-force numpy oracle; all
three must agree.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, TypeVar

import numpy as np
import numpy.typing as npt

from .exceptions import (
    RadiusOutOfRange,
    UnsupportedParameters,
    UnsupportedRadius,
)
from .words import (
    DEFAULT_BUDGET,
    Alphabet,
    HfWord,
    characteristic_sequence,
    check_budget,
    count_hf,
    hf_space_array,
    hf_tuples,
    period_word,
)

logger = logging.getLogger(__name__)

Provenance = Literal["pattern", "search"]
AverageMethod = Literal["auto", "enumeration", "expectation", "pairs"]

ORACLE_CHUNK_ROWS = 256

_T = TypeVar("_T")


@dataclass(frozen=True)
class STable:
    """Per-last-symbol sphere counts for every prefix of ``center``.

    ``rows[k - 1][r][b]`` counts the HF words of length ``k`` ending in ``b``
    at distance ``r`` from the length-``k`` prefix of the center.
    """

    center: HfWord
    max_radius: int
    rows: tuple[tuple[tuple[int, ...], ...], ...]

    def entry(self, k: int, r: int, b: int) -> int:
        if not 1 <= k <= self.center.n:
            raise RadiusOutOfRange(f"prefix length {k} outside 1..{self.center.n}")
        if r < 0 or r > min(k, self.max_radius):
            return 0
        return self.rows[k - 1][r][b]


@dataclass(frozen=True)
class SphereProfile:
    center: HfWord
    sizes: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.sizes)

    def cumulative(self, radius: int) -> int:
        return sum(self.sizes[: radius + 1])


@dataclass(frozen=True)
class ExtremalCenters:
    a_min: HfWord
    a_max: HfWord
    radius: int
    cumulative_min: int
    cumulative_max: int
    provenance: Provenance


@dataclass(frozen=True)
class ProfileClass:
    """Words of C_{q,n} that share a full sphere profile."""

    profile: tuple[int, ...]
    representative: HfWord
    members: int


# ---------------------------------------------------------------------------
# Dynamic program
# ---------------------------------------------------------------------------


def _dp_rows(
    symbols: Sequence[int], q: int, max_radius: int
) -> Iterator[list[list[int]]]:
    """Yield the table row of every prefix length, ``row[r][b]``."""
    first = symbols[0]
    row = [[int(b == first) for b in range(q)]]
    if max_radius >= 1:
        row.append([int(b != first) for b in range(q)])
    yield row
    for k, a_k in enumerate(symbols[1:], start=2):
        totals = [sum(level) for level in row]
        new_row = []
        for r in range(min(k, max_radius) + 1):
            level = []
            for b in range(q):
                # A word ending in b keeps its distance when b = a_k and
                # gains one otherwise; its previous symbol must differ from b.
                source = r if b == a_k else r - 1
                if 0 <= source < len(row):
                    level.append(totals[source] - row[source][b])
                else:
                    level.append(0)
            new_row.append(level)
        row = new_row
        yield row


def _profile(symbols: Sequence[int], q: int, max_radius: int) -> list[int]:
    """Shell sizes ``|H_r|`` for ``r = 0..min(n, max_radius)``."""
    row: list[list[int]] = []
    for row in _dp_rows(symbols, q, max_radius):
        pass
    return [sum(level) for level in row]


def _check_radius(center: HfWord, r: int) -> None:
    if not 0 <= r <= center.n:
        raise RadiusOutOfRange(f"radius must lie in 0..{center.n}, got {r}")


def s_table(center: HfWord, max_radius: int) -> STable:
    _check_radius(center, max_radius)
    rows = tuple(
        tuple(tuple(level) for level in row)
        for row in _dp_rows(center.symbols, center.q, max_radius)
    )
    return STable(center=center, max_radius=max_radius, rows=rows)


def sphere_size_dp(center: HfWord, r: int) -> int:
    """``|H_r(center)|`` from the last row of the table."""
    _check_radius(center, r)
    return _profile(center.symbols, center.q, r)[r]


def sphere_profile(center: HfWord) -> SphereProfile:
    sizes = _profile(center.symbols, center.q, center.n)
    return SphereProfile(center=center, sizes=tuple(sizes))


def cumulative_sum(center: HfWord, radius: int) -> int:
    """``S_HF(center, radius)``: the number of HF words within ``radius``."""
    _check_radius(center, radius)
    return sum(_profile(center.symbols, center.q, radius))


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------


def _distances_to(center: HfWord, budget: int) -> npt.NDArray[np.intp]:
    check_budget(center.alphabet, center.n, budget)
    space = hf_space_array(center.alphabet, center.n)
    distances: npt.NDArray[np.intp] = (space != np.asarray(center.symbols)).sum(axis=1)
    return distances


def sphere_size_oracle(center: HfWord, r: int, *, budget: int = DEFAULT_BUDGET) -> int:
    _check_radius(center, r)
    return int(np.count_nonzero(_distances_to(center, budget) == r))


def oracle_profile(center: HfWord, *, budget: int = DEFAULT_BUDGET) -> tuple[int, ...]:
    counts = np.bincount(_distances_to(center, budget), minlength=center.n + 1)
    return tuple(int(c) for c in counts)


def oracle_profiles(
    alphabet: Alphabet, n: int, *, budget: int = DEFAULT_BUDGET
) -> npt.NDArray[np.int64]:
    """Brute-force profile of every center, one row per word of C_{q,n}."""
    check_budget(alphabet, n, budget)
    space = hf_space_array(alphabet, n)
    profiles = np.zeros((space.shape[0], n + 1), dtype=np.int64)
    for start in range(0, space.shape[0], ORACLE_CHUNK_ROWS):
        block = space[start : start + ORACLE_CHUNK_ROWS]
        distances = (block[:, None, :] != space[None, :, :]).sum(axis=2)
        for radius in range(n + 1):
            profiles[start : start + block.shape[0], radius] = (
                distances == radius
            ).sum(axis=1)
    return profiles


def sphere_members(
    center: HfWord, r: int, *, budget: int = DEFAULT_BUDGET
) -> list[HfWord]:
    """The members of ``H_r(center)`` in lexicographic order."""
    _check_radius(center, r)
    distances = _distances_to(center, budget)
    space = hf_space_array(center.alphabet, center.n)
    return [
        HfWord(tuple(int(s) for s in row), center.alphabet)
        for row in space[distances == r]
    ]


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


def h1_closed_form(center: HfWord) -> int:
    n, q = center.n, center.q
    if n < 2:
        raise UnsupportedParameters("the radius-1 closed form needs n >= 2")
    if n == 2:
        return 2 + n * (q - 3)
    tau2 = characteristic_sequence(center, 2)
    return 2 + n * (q - 3) + tau2.window_sum(2, n - 1)


def h2_closed_form(center: HfWord) -> int:
    """``|H_2(center)|`` by case analysis on the two changed positions.

    Consecutive changed positions contribute
    ``3(q-2)^2 + 2 + (n-3)[(q-2)(q-3) + 2] - 2 sum tau2 - sum tau3``. The
    remaining cases pair the first or last position with an interior one,
    or two interior positions at least two apart; an interior position ``i``
    offers ``(q-3) + tau2_i`` replacement symbols.
    """
    n, q = center.n, center.q
    if n < 3:
        raise UnsupportedParameters("the radius-2 closed form needs n >= 3")
    tau2 = characteristic_sequence(center, 2)
    tau3_sum = characteristic_sequence(center, 3).window_sum(2, n - 2) if n > 3 else 0

    consecutive = (
        3 * (q - 2) ** 2
        + 2
        + (n - 3) * ((q - 2) * (q - 3) + 2)
        - 2 * tau2.window_sum(2, n - 1)
        - tau3_sum
    )

    def choices(i: int) -> int:
        return (q - 3) + tau2.at(i)

    with_first = (q - 2) * sum(choices(j) for j in range(3, n))
    with_last = (q - 2) * sum(choices(i) for i in range(2, n - 1))

    # suffix[j] = sum of choices(t) for t = j..n-1
    suffix = [0] * (n + 2)
    for j in range(n - 1, 1, -1):
        suffix[j] = suffix[j + 1] + choices(j)
    interior = sum(choices(i) * suffix[i + 2] for i in range(2, n - 2))

    return consecutive + with_first + with_last + interior


def a_min_closed_form(q: int, n: int, r: int) -> int:
    """Shell size ``|H_r|`` of the period-3 word (``q >= 4``, ``r`` in 1, 2)."""
    if q < 4:
        raise UnsupportedParameters(f"the period-3 closed forms need q >= 4, got {q}")
    if r == 1 and n >= 1:
        return (q - 3) * n + 2
    if r == 2 and n == 2:
        logger.warning(
            "period-3 constraint is vacuous at n=2, applying the n=2 formula as printed"
        )
        return (q - 1) * (q - 2) + 1
    if r == 2 and n >= 3:
        return (
            (n - 4) * (n - 3) * (q - 3) ** 2 // 2
            + n * (3 * q * q - 15 * q + 19)
            - 6 * q * q
            + 33 * q
            - 43
        )
    raise UnsupportedParameters(f"no period-3 closed form for n={n}, r={r}")


def a_max_closed_form(q: int, n: int, r: int) -> int:
    """Shell size ``|H_r|`` of the period-2 word (``q >= 3``, ``r`` in 1, 2)."""
    if q < 3:
        raise UnsupportedParameters(f"the period-2 closed forms need q >= 3, got {q}")
    if r == 1 and n == 1:
        return q - 1
    if r == 1 and n >= 2:
        return n * (q - 2)
    if r == 2 and n == 2:
        return q * q - 3 * q + 3
    if r == 2 and n >= 3:
        return (
            (n - 4) * (n - 3) * (q - 2) ** 2 // 2
            + n * (3 * q * q - 13 * q + 14)
            - 6 * q * q
            + 27 * q
            - 30
        )
    raise UnsupportedParameters(f"no period-2 closed form for n={n}, r={r}")


def extremal_closed_forms(alphabet: Alphabet, n: int, r: int) -> tuple[int, int]:
    """``(|H_r(a_min)|, |H_r(a_max)|)`` from the periodic-pattern formulas."""
    if r not in (1, 2):
        raise UnsupportedParameters(f"closed forms cover r = 1 and r = 2, got {r}")
    return a_min_closed_form(alphabet.q, n, r), a_max_closed_form(alphabet.q, n, r)


# ---------------------------------------------------------------------------
# Exhaustive sweeps
# ---------------------------------------------------------------------------


def _map_first_symbols(
    worker: Callable[[int, int, int, int], _T],
    alphabet: Alphabet,
    n: int,
    radius: int,
    workers: int,
) -> list[_T]:
    """Run ``worker(q, n, radius, first)`` for every first symbol, in symbol order."""
    q = alphabet.q
    firsts = list(range(q))
    if workers <= 1:
        return [worker(q, n, radius, first) for first in firsts]
    logger.debug("spreading %d chunks over %d workers", q, workers)
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(
            executor.map(worker, [q] * q, [n] * q, [radius] * q, firsts)
        )


def _extremes_with_first(
    q: int, n: int, radius: int, first: int
) -> tuple[int, tuple[int, ...], int, tuple[int, ...]]:
    best_min: tuple[int, tuple[int, ...]] | None = None
    best_max: tuple[int, tuple[int, ...]] | None = None
    for symbols in hf_tuples(Alphabet(q), n, (first,)):
        total = sum(_profile(symbols, q, radius))
        if best_min is None or total < best_min[0]:
            best_min = (total, symbols)
        if best_max is None or total > best_max[0]:
            best_max = (total, symbols)
    assert best_min is not None and best_max is not None  # nosec B101
    return best_min[0], best_min[1], best_max[0], best_max[1]


def _shell_totals_with_first(q: int, n: int, radius: int, first: int) -> list[int]:
    totals = [0] * (radius + 1)
    for symbols in hf_tuples(Alphabet(q), n, (first,)):
        for r, size in enumerate(_profile(symbols, q, radius)):
            totals[r] += size
    return totals


def shell_totals(
    alphabet: Alphabet,
    n: int,
    max_radius: int,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> list[int]:
    """``sum over a of |H_r(a)|`` for ``r = 0..max_radius`` by exhaustive DP."""
    size = check_budget(alphabet, n, budget)
    logger.info(
        "summing shells over %d centers (q=%d n=%d R=%d)",
        size,
        alphabet.q,
        n,
        max_radius,
    )
    chunks = _map_first_symbols(
        _shell_totals_with_first, alphabet, n, max_radius, workers
    )
    return [sum(column) for column in zip(*chunks)]


def extremal_search(
    alphabet: Alphabet,
    n: int,
    radius: int,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> ExtremalCenters:
    """Exhaustive argmin and argmax of ``S_HF(a, radius)`` over C_{q,n}.

    Ties go to the lexicographically smallest word for any worker count.
    """
    if not 0 <= radius <= n:
        raise RadiusOutOfRange(f"radius must lie in 0..{n}, got {radius}")
    size = check_budget(alphabet, n, budget)
    logger.info(
        "extremal search over %d centers (q=%d n=%d R=%d)", size, alphabet.q, n, radius
    )
    chunks = _map_first_symbols(_extremes_with_first, alphabet, n, radius, workers)
    min_total, min_symbols, max_total, max_symbols = chunks[0]
    for chunk_min, chunk_min_symbols, chunk_max, chunk_max_symbols in chunks[1:]:
        if chunk_min < min_total:
            min_total, min_symbols = chunk_min, chunk_min_symbols
        if chunk_max > max_total:
            max_total, max_symbols = chunk_max, chunk_max_symbols
    return ExtremalCenters(
        a_min=HfWord(min_symbols, alphabet),
        a_max=HfWord(max_symbols, alphabet),
        radius=radius,
        cumulative_min=min_total,
        cumulative_max=max_total,
        provenance="search",
    )


def extremal_cumulative(
    alphabet: Alphabet,
    n: int,
    radius: int,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> ExtremalCenters:
    """``S_HF(a_min, radius)`` and ``S_HF(a_max, radius)``.

    Periodic patterns with closed forms cover ``q >= 4``, ``n >= 4`` and
    ``radius <= 2``; everything else falls back to :func:`extremal_search`.
    Below ``n = 4`` the pattern constraints do not bind and the period-3 word
    is not the minimum.
    """
    if not 0 <= radius <= n:
        raise RadiusOutOfRange(f"radius must lie in 0..{n}, got {radius}")
    if alphabet.q < 4 or n < 4 or radius > 2:
        return extremal_search(alphabet, n, radius, budget=budget, workers=workers)
    low = high = 1
    for r in range(1, radius + 1):
        r_low, r_high = extremal_closed_forms(alphabet, n, r)
        low += r_low
        high += r_high
    return ExtremalCenters(
        a_min=period_word(alphabet, n, 3),
        a_max=period_word(alphabet, n, 2),
        radius=radius,
        cumulative_min=low,
        cumulative_max=high,
        provenance="pattern",
    )


# ---------------------------------------------------------------------------
# Averages
# ---------------------------------------------------------------------------


def _expected_cumulative(q: int, n: int, radius: int) -> Fraction:
    if radius > 2:
        raise UnsupportedRadius(f"the expectation path covers R <= 2, got {radius}")
    if q < 3:
        raise UnsupportedParameters(f"the expectation path needs q >= 3, got {q}")
    p2 = Fraction(1, q - 1)
    p3 = Fraction(q - 2, (q - 1) ** 2)
    total = Fraction(1)
    if radius >= 1:
        total += q - 1 if n == 1 else 2 + n * (q - 3) + (n - 2) * p2
    if radius >= 2 and n == 2:
        total += (q - 1) * (q - 2) + 1
    elif radius >= 2 and n >= 3:
        choice = q - 3 + p2
        total += (
            3 * (q - 2) ** 2
            + 2
            + (n - 3) * ((q - 2) * (q - 3) + 2)
            - 2 * (n - 2) * p2
            - (n - 3) * p3
            + 2 * (q - 2) * (n - 3) * choice
            + choice * choice * Fraction((n - 4) * (n - 3), 2)
        )
    return total


def _pair_count_within(q: int, n: int, radius: int) -> int:
    """Ordered pairs of words of C_{q,n} at distance at most ``radius``.

    Transfer counts over the two states "last symbols equal" and "last
    symbols differ", indexed by the distance accumulated so far.
    """
    stay_equal, equal_to_differ = q - 1, (q - 1) * (q - 2)
    differ_to_equal, stay_differ = q - 2, (q - 1) ** 2 - (q - 2)
    equal = [0] * (radius + 1)
    differ = [0] * (radius + 1)
    equal[0] = q
    if radius >= 1:
        differ[1] = q * (q - 1)
    for _ in range(n - 1):
        next_equal = [
            equal[r] * stay_equal + differ[r] * differ_to_equal
            for r in range(radius + 1)
        ]
        next_differ = [0] * (radius + 1)
        for r in range(1, radius + 1):
            next_differ[r] = (
                equal[r - 1] * equal_to_differ + differ[r - 1] * stay_differ
            )
        equal, differ = next_equal, next_differ
    return sum(equal) + sum(differ)


def average_cumulative(
    alphabet: Alphabet,
    n: int,
    radius: int,
    *,
    method: AverageMethod = "auto",
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> Fraction:
    """Exact mean of ``S_HF(a, radius)`` over every center ``a`` in C_{q,n}.

    ``enumeration`` sums the DP over all centers, ``expectation`` applies
    linearity of expectation to the ``r <= 2`` closed forms and ``pairs``
    counts close pairs with a transfer recurrence. ``auto`` picks
    ``expectation`` for ``radius <= 2`` and ``pairs`` otherwise.
    """
    if not 0 <= radius <= n:
        raise RadiusOutOfRange(f"radius must lie in 0..{n}, got {radius}")
    q = alphabet.q
    if method == "auto":
        method = "expectation" if radius <= 2 and q >= 3 else "pairs"
    if method == "expectation":
        return _expected_cumulative(q, n, radius)
    size = count_hf(alphabet, n)
    if method == "pairs":
        return Fraction(_pair_count_within(q, n, radius), size)
    totals = shell_totals(alphabet, n, radius, budget=budget, workers=workers)
    return Fraction(sum(totals), size)


def caption_average(n: int) -> Fraction:
    """Published closed form for the radius-2 average at ``q = 4``.

    It is kept as a comparison value only: for ``n >= 4`` it disagrees with
    the exact average.
    """
    if n == 2:
        return Fraction(12)
    if n == 3:
        return Fraction(59, 3)
    if n >= 4:
        return Fraction(8, 9) * (n + 2) ** 2 + Fraction(235, 9)
    raise UnsupportedParameters(f"the caption formula starts at n = 2, got {n}")


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


def classify_profiles(
    alphabet: Alphabet, n: int, *, budget: int = DEFAULT_BUDGET
) -> list[ProfileClass]:
    """Group C_{q,n} by sphere profile, classes sorted by profile."""
    check_budget(alphabet, n, budget)
    groups: dict[tuple[int, ...], tuple[tuple[int, ...], int]] = {}
    for symbols in hf_tuples(alphabet, n):
        profile = tuple(_profile(symbols, alphabet.q, n)[1:])
        first, members = groups.get(profile, (symbols, 0))
        groups[profile] = (first, members + 1)
    return [
        ProfileClass(
            profile=profile,
            representative=HfWord(first, alphabet),
            members=members,
        )
        for profile, (first, members) in sorted(groups.items())
    ]
