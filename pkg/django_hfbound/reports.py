"""Report builders, verification suites, the diff engine and renderers.

Builders are pure: budgets and worker counts come in as arguments and a
:class:`ReportBundle` comes out. The management commands resolve settings,
render bundles and turn their status into exit codes.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from functools import cache
from importlib import resources
from typing import Any, Union

import numpy as np
import yaml

from .bounds import (
    DEFAULT_EXACT_LENGTH_LIMIT,
    PARAMETER_KINDS,
    BoundKind,
    BoundReport,
    bound_grid,
    evaluate_bound,
    hf_lower_1,
    hf_lower_3,
)
from .codes import (
    GreedyOrder,
    code_sphere_stats,
    covers_space,
    format_code_file,
    greedy_construct,
    min_distance,
    parse_code_file,
    random_code,
    spheres_disjoint,
    verify_code,
)
from .exceptions import BadParameters, BudgetExceeded
from .spheres import (
    average_cumulative,
    caption_average,
    classify_profiles,
    cumulative_sum,
    extremal_closed_forms,
    extremal_cumulative,
    extremal_search,
    h1_closed_form,
    h2_closed_form,
    oracle_profile,
    oracle_profiles,
    shell_totals,
    sphere_profile,
    sphere_size_dp,
)
from .words import (
    DEFAULT_BUDGET,
    Alphabet,
    HfWord,
    code_rate_cap,
    count_hf,
    enumerate_hf,
    format_word,
    hf_space_array,
    parse_word,
    period_word,
)

logger = logging.getLogger(__name__)

Cell = Union[int, Fraction, float, str, bool, None]

EXIT_OK = 0
EXIT_DIFFS = 2
EXIT_INVARIANT = 3
EXIT_USAGE = 64

RATE_TOLERANCE = 1e-12

FORMULAS = {
    BoundKind.CLASSIC_SP: "floor(q^n / V_q(n, (d-1)//2))",
    BoundKind.CLASSIC_GV: "ceil(q^n / V_q(n, d-1))",
    BoundKind.HF_UPPER_1: "floor(q(q-1)^(n-1) / S_HF(a_min, (d-1)//2))",
    BoundKind.HF_UPPER_2: "floor(q(q-1)^(n-1) / W_HF(c_min, (d-1)//2))",
    BoundKind.HF_UPPER_3: "floor(q(q-1)^(n-1) / U_HF((d-1)//2))",
    BoundKind.HF_LOWER_1: "ceil(q(q-1)^(n-1) / S_HF(a_max, d-1))",
    BoundKind.HF_LOWER_2: "ceil(q(q-1)^(n-1) / W_HF(c_max, d-1))",
    BoundKind.HF_LOWER_3: "ceil(q(q-1)^(n-1) / U_HF(d-1))",
}

# (bound, largest distance printed in the reference table)
TABLE1_BLOCKS = (
    (BoundKind.HF_UPPER_1, 5),
    (BoundKind.HF_UPPER_3, 5),
    (BoundKind.HF_LOWER_1, 3),
    (BoundKind.HF_LOWER_3, 3),
)

CURVE_KINDS = (
    BoundKind.CLASSIC_SP,
    BoundKind.CLASSIC_GV,
    BoundKind.HF_UPPER_1,
    BoundKind.HF_LOWER_1,
    BoundKind.HF_UPPER_3,
    BoundKind.HF_LOWER_3,
)
CAPTION_CURVE = "caption_formula"

BOUND_COLUMNS = (
    "bound",
    "q",
    "n",
    "d",
    "radius",
    "numerator",
    "denominator",
    "value",
    "rate",
)
TABLE1_COLUMNS = (*BOUND_COLUMNS, "printed", "match")
TABLE2_COLUMNS = ("n", "q", "pattern", "center", "r", "size", "printed", "match")
CLASSIFY_COLUMNS = ("class", "representative", "members", "profile", "printed", "match")
CURVE_COLUMNS = ("curve", "q", "n", "d", "value_log10", "rate")
PROFILE_COLUMNS = ("n", "q", "center", "r", "size")
SUITE_COLUMNS = ("suite", "passed", "checked", "counterexample")
CODE_COLUMNS = ("index", "word")
VIOLATION_COLUMNS = ("kind", "index", "message")


@dataclass(frozen=True)
class DiffRow:
    """A computed cell that disagrees with its published counterpart."""

    table: str
    cell: str
    computed: Cell
    printed: Cell
    formula: str
    whitelisted: bool = False
    reason: str = ""


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    checked: int
    counterexample: str | None = None


@dataclass
class ReportBundle:
    command: str
    params: dict[str, Any]
    columns: tuple[str, ...]
    rows: list[dict[str, Cell]] = field(default_factory=list)
    diffs: list[DiffRow] = field(default_factory=list)
    suite_results: list[SuiteResult] = field(default_factory=list)
    timestamp: datetime = field(default_factory=lambda: datetime.now(timezone.utc))
    document: str | None = None

    @property
    def unexpected_diffs(self) -> list[DiffRow]:
        return [diff for diff in self.diffs if not diff.whitelisted]

    @property
    def failed_suites(self) -> list[SuiteResult]:
        return [result for result in self.suite_results if not result.passed]

    @property
    def exit_status(self) -> int:
        if self.failed_suites:
            return EXIT_INVARIANT
        if self.unexpected_diffs:
            return EXIT_DIFFS
        return EXIT_OK


@cache
def reference_tables() -> dict[str, Any]:
    """Published tables shipped with the package."""
    text = (
        resources.files("django_hfbound")
        .joinpath("reference_tables.yaml")
        .read_text(encoding="utf-8")
    )
    data: dict[str, Any] = yaml.safe_load(text)
    return data


def _bound_row(report: BoundReport) -> dict[str, Cell]:
    return {
        "bound": report.kind.value,
        "q": report.q,
        "n": report.n,
        "d": report.d,
        "radius": report.radius_used,
        "numerator": report.numerator,
        "denominator": report.denominator,
        "value": report.value,
        "rate": report.rate,
    }


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------


def _printed_table1_cell(kind: BoundKind, d: int, n: int) -> int | None:
    blocks = reference_tables()["table1"]["blocks"]
    row = blocks.get(kind.value, {}).get(d)
    if row is None or n > len(row):
        return None
    cell: int | None = row[n - 1]
    return cell


def build_table1(
    max_n: int,
    max_d: int,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    exact_length_limit: int = DEFAULT_EXACT_LENGTH_LIMIT,
) -> ReportBundle:
    """Bound blocks at ``q = 4`` diffed against the published bound table.

    Upper bounds cover ``d <= 5`` and lower bounds ``d <= 3``, the rows the
    published table has.
    """
    if max_n < 1 or max_d < 1:
        raise BadParameters(f"need n >= 1 and d >= 1, got n={max_n} d={max_d}")
    reference = reference_tables()["table1"]
    q = reference["q"]
    whitelist = {
        (entry["bound"], entry["d"], entry["n"]): entry["reason"]
        for entry in reference["whitelist"]
    }
    bundle = ReportBundle(
        command="hf_table1",
        params={"q": q, "n": max_n, "d": max_d},
        columns=TABLE1_COLUMNS,
    )
    for kind, printed_max_d in TABLE1_BLOCKS:
        reports = bound_grid(
            [kind],
            q,
            range(1, max_n + 1),
            range(1, min(max_d, printed_max_d) + 1),
            budget=budget,
            workers=workers,
            exact_length_limit=exact_length_limit,
        )
        for report in reports:
            printed = _printed_table1_cell(kind, report.d, report.n)
            match = None if printed is None else report.value == printed
            row = {**_bound_row(report), "printed": printed, "match": match}
            bundle.rows.append(row)
            if match is False:
                key = (kind.value, report.d, report.n)
                bundle.diffs.append(
                    DiffRow(
                        table="table1",
                        cell=f"{kind.value} d={report.d} n={report.n}",
                        computed=report.value,
                        printed=printed,
                        formula=FORMULAS[kind],
                        whitelisted=key in whitelist,
                        reason=whitelist.get(key, ""),
                    )
                )
    return bundle


def _printed_table2_profiles() -> dict[tuple[int, str], list[int]]:
    printed: dict[tuple[int, str], list[int]] = {}
    for row in reference_tables()["table2"]["rows"]:
        shared = row["pattern"] == "shared"
        patterns = ("a_min", "a_max") if shared else (row["pattern"],)
        for pattern in patterns:
            printed[(row["n"], pattern)] = row["profile"]
    return printed


def build_table2(max_n: int) -> ReportBundle:
    """Sphere profiles of the period-3 and period-2 words at ``q = 4``."""
    if max_n < 1:
        raise BadParameters(f"need n >= 1, got {max_n}")
    q = reference_tables()["table2"]["q"]
    alphabet = Alphabet(q)
    printed_profiles = _printed_table2_profiles()
    bundle = ReportBundle(
        command="hf_table2", params={"q": q, "n": max_n}, columns=TABLE2_COLUMNS
    )
    partition_failure: str | None = None
    checked = 0
    for n in range(1, max_n + 1):
        for pattern, period in (("a_min", 3), ("a_max", 2)):
            center = period_word(alphabet, n, period)
            profile = sphere_profile(center)
            checked += 1
            if profile.total != count_hf(alphabet, n) and partition_failure is None:
                partition_failure = f"{pattern} n={n} sums to {profile.total}"
            expected = printed_profiles.get((n, pattern))
            for r in range(1, n + 1):
                size = profile.sizes[r]
                printed = expected[r - 1] if expected and r <= len(expected) else None
                match = None if printed is None else size == printed
                bundle.rows.append(
                    {
                        "n": n,
                        "q": q,
                        "pattern": pattern,
                        "center": format_word(center, dna=True),
                        "r": r,
                        "size": size,
                        "printed": printed,
                        "match": match,
                    }
                )
                if match is False:
                    bundle.diffs.append(
                        DiffRow(
                            table="table2",
                            cell=f"{pattern} n={n} r={r}",
                            computed=size,
                            printed=printed,
                            formula="sum_b S_a(r; b)",
                        )
                    )
    bundle.suite_results.append(
        SuiteResult("partition", partition_failure is None, checked, partition_failure)
    )
    return bundle


def build_classify(n: int, *, budget: int = DEFAULT_BUDGET) -> ReportBundle:
    """Profile classes of C_{4,n}, diffed against the published class tables."""
    if n < 1:
        raise BadParameters(f"need n >= 1, got {n}")
    reference = reference_tables()["classes"]
    q = reference["q"]
    alphabet = Alphabet(q)
    classes = classify_profiles(alphabet, n, budget=budget)
    printed_classes = reference["lengths"].get(n)
    printed = (
        {tuple(entry["profile"]): entry["members"] for entry in printed_classes}
        if printed_classes
        else {}
    )
    bundle = ReportBundle(
        command="hf_classify", params={"q": q, "n": n}, columns=CLASSIFY_COLUMNS
    )
    for index, profile_class in enumerate(classes, start=1):
        printed_members = printed.get(profile_class.profile)
        match = (
            None
            if printed_classes is None
            else printed_members == profile_class.members
        )
        profile_text = " ".join(str(size) for size in profile_class.profile)
        bundle.rows.append(
            {
                "class": index,
                "representative": format_word(profile_class.representative, dna=True),
                "members": profile_class.members,
                "profile": profile_text,
                "printed": printed_members,
                "match": match,
            }
        )
        if match is False:
            bundle.diffs.append(
                DiffRow(
                    table="classes",
                    cell=f"n={n} profile {profile_text}",
                    computed=profile_class.members,
                    printed=printed_members,
                    formula="members sharing the sphere profile",
                )
            )
    computed_profiles = {profile_class.profile for profile_class in classes}
    for profile, members in printed.items():
        if profile not in computed_profiles:
            bundle.diffs.append(
                DiffRow(
                    table="classes",
                    cell=f"n={n} profile {' '.join(str(s) for s in profile)}",
                    computed=None,
                    printed=members,
                    formula="members sharing the sphere profile",
                )
            )
    total = sum(profile_class.members for profile_class in classes)
    size = count_hf(alphabet, n)
    bundle.suite_results.append(
        SuiteResult(
            "partition",
            total == size,
            len(classes),
            None if total == size else f"classes hold {total} of {size} words",
        )
    )
    return bundle


# ---------------------------------------------------------------------------
# Curves
# ---------------------------------------------------------------------------


def _curve_row(curve: str, report: BoundReport) -> dict[str, Cell]:
    return {
        "curve": curve,
        "q": report.q,
        "n": report.n,
        "d": report.d,
        "value_log10": report.value_log10,
        "rate": report.rate,
    }


def build_curves(
    q: int,
    d: int,
    n_max: int,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    exact_length_limit: int = DEFAULT_EXACT_LENGTH_LIMIT,
) -> ReportBundle:
    """Rate curves for ``n = d..n_max``.

    At ``q = 4, d = 3`` the published closed-form average is added as the
    ``caption_formula`` curve, together with a check that it departs from the
    exact average for every ``n >= 4``.
    """
    if q < 3 or d < 1 or n_max < d:
        raise BadParameters(
            f"need q >= 3 and 1 <= d <= n_max, got q={q} d={d} n={n_max}"
        )
    lengths = range(d, n_max + 1)
    bundle = ReportBundle(
        command="hf_curves",
        params={"q": q, "d": d, "n": n_max},
        columns=CURVE_COLUMNS,
    )
    options: dict[str, int] = {
        "budget": budget,
        "workers": workers,
        "exact_length_limit": exact_length_limit,
    }
    cap = code_rate_cap(q)
    cap_violation: str | None = None
    checked = 0
    for kind in CURVE_KINDS:
        for n in lengths:
            try:
                report = evaluate_bound(kind, q, n, d, **options)
            except BudgetExceeded as e:
                logger.warning("%s stops at n=%d: %s", kind.value, n, e)
                break
            bundle.rows.append(_curve_row(kind.value, report))
            if kind.value.startswith("hf_"):
                checked += 1
                if report.rate > cap + 1 / n + RATE_TOLERANCE and cap_violation is None:
                    cap_violation = f"{kind.value} n={n} rate={report.rate:.12g}"

    if q == 4 and d == 3:
        alphabet = Alphabet(q)
        agreement: str | None = None
        for n in lengths:
            caption = caption_average(n)
            report = hf_lower_3(q, n, d, caption, exact_length_limit=exact_length_limit)
            bundle.rows.append(_curve_row(CAPTION_CURVE, report))
            if n >= 4 and caption == average_cumulative(alphabet, n, 2):
                agreement = agreement or f"caption average is exact at n={n}"
        bundle.suite_results.append(
            SuiteResult(
                "caption-divergence",
                agreement is None,
                max(0, n_max - 3),
                agreement,
            )
        )

    bundle.suite_results.append(
        SuiteResult("rate-cap", cap_violation is None, checked, cap_violation)
    )
    return bundle


# ---------------------------------------------------------------------------
# Single points
# ---------------------------------------------------------------------------


def build_profile(center_text: str, q: int) -> ReportBundle:
    center = parse_word(center_text, Alphabet(q))
    profile = sphere_profile(center)
    text = format_word(center)
    bundle = ReportBundle(
        command="hf_profile",
        params={"center": text, "q": q},
        columns=PROFILE_COLUMNS,
    )
    for r, size in enumerate(profile.sizes):
        bundle.rows.append(
            {"n": center.n, "q": q, "center": text, "r": r, "size": size}
        )
    return bundle


def build_bound(
    q: int,
    n: int,
    d: int,
    radius: int | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    exact_length_limit: int = DEFAULT_EXACT_LENGTH_LIMIT,
) -> ReportBundle:
    """Every parameter-only bound at ``(q, n, d)``.

    With ``radius`` the extremal and average sphere sums at that radius are
    appended as the ``s_hf_a_min``, ``s_hf_a_max`` and ``u_hf`` rows.
    """
    bundle = ReportBundle(
        command="hf_bound",
        params={"q": q, "n": n, "d": d, "radius": radius},
        columns=(*BOUND_COLUMNS, "notes"),
    )
    for kind in PARAMETER_KINDS:
        report = evaluate_bound(
            kind,
            q,
            n,
            d,
            budget=budget,
            workers=workers,
            exact_length_limit=exact_length_limit,
        )
        bundle.rows.append({**_bound_row(report), "notes": "; ".join(report.notes)})
    if radius is not None:
        alphabet = Alphabet(q)
        extremes = extremal_cumulative(
            alphabet, n, radius, budget=budget, workers=workers
        )
        average = average_cumulative(
            alphabet, n, radius, budget=budget, workers=workers
        )
        sums: list[tuple[str, Cell, str]] = [
            ("s_hf_a_min", extremes.cumulative_min, format_word(extremes.a_min)),
            ("s_hf_a_max", extremes.cumulative_max, format_word(extremes.a_max)),
            ("u_hf", average, "whole-space average"),
        ]
        for name, value, note in sums:
            bundle.rows.append(
                {
                    "bound": name,
                    "q": q,
                    "n": n,
                    "radius": radius,
                    "value": value,
                    "notes": note,
                }
            )
    return bundle


# ---------------------------------------------------------------------------
# Codes
# ---------------------------------------------------------------------------


def build_greedy_code(
    q: int,
    n: int,
    d: int,
    order: GreedyOrder = "lexicographic",
    *,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    dna: bool = False,
) -> ReportBundle:
    """A greedy code with its size checked against the first lower bound."""
    alphabet = Alphabet(q)
    code = greedy_construct(alphabet, n, d, order, seed=seed, budget=budget)
    bundle = ReportBundle(
        command="hf_code",
        params={
            "action": "greedy",
            "q": q,
            "n": n,
            "d": d,
            "order": order,
            "seed": seed,
        },
        columns=CODE_COLUMNS,
        document=format_code_file(code, dna=dna),
    )
    for index, word in enumerate(code.words):
        bundle.rows.append({"index": index, "word": format_word(word, dna=dna)})
    if len(code) >= 2:
        distance = min_distance(code)
        bundle.suite_results.append(
            SuiteResult(
                "min-distance",
                distance >= d,
                len(code),
                None if distance >= d else f"minimum distance {distance} < {d}",
            )
        )
    if q >= 3:
        lower = hf_lower_1(q, n, d, budget=budget, workers=workers).value
        assert lower is not None  # nosec B101
        bundle.suite_results.append(
            SuiteResult(
                "lower-bound-1",
                len(code) >= lower,
                1,
                None if len(code) >= lower else f"size {len(code)} < bound {lower}",
            )
        )
    return bundle


def build_code_verification(
    text: str, *, d: int | None = None, size: int | None = None, source: str = ""
) -> ReportBundle:
    """Check a code file; every violation becomes a row and fails the suite."""
    code_file = parse_code_file(text)
    verification = verify_code(
        code_file.words, q=code_file.q, n=code_file.n, size=size, d=d
    )
    bundle = ReportBundle(
        command="hf_code",
        params={
            "action": "verify",
            "path": source,
            "q": code_file.q,
            "n": code_file.n,
            "size": size,
            "d": d,
        },
        columns=VIOLATION_COLUMNS,
    )
    for violation in verification.violations:
        bundle.rows.append(
            {
                "kind": violation.kind,
                "index": violation.index,
                "message": violation.message,
            }
        )
    status = "accepted" if verification.accepted else "rejected"
    distance = format_cell(verification.min_distance) or "-"
    bundle.document = (
        f"{status}: q={verification.q} n={verification.n} M={verification.size} "
        f"d={distance}\n"
        + "".join(f"  {row['kind']}: {row['message']}\n" for row in bundle.rows)
    )
    bundle.suite_results.append(
        SuiteResult(
            "verify-code",
            verification.accepted,
            verification.size,
            None if verification.accepted else verification.violations[0].message,
        )
    )
    return bundle


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------


def _fits(alphabet: Alphabet, n: int, budget: int) -> bool:
    if count_hf(alphabet, n) > budget:
        logger.info("skipping q=%d n=%d: over the budget of %d", alphabet.q, n, budget)
        return False
    return True


def oracle_suite(
    *,
    qs: Iterable[int] = (3, 4, 5),
    max_n: int = 7,
    random_lengths: Iterable[int] = (8, 9, 10),
    random_centers: int = 100,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> SuiteResult:
    """DP profiles against brute-force counts."""
    checked = 0
    for q in qs:
        alphabet = Alphabet(q)
        for n in range(1, max_n + 1):
            if not _fits(alphabet, n, budget):
                continue
            oracle = oracle_profiles(alphabet, n, budget=budget)
            for row, center in zip(oracle, enumerate_hf(alphabet, n)):
                checked += 1
                expected = tuple(int(size) for size in row)
                computed = sphere_profile(center).sizes
                if computed != expected:
                    return SuiteResult(
                        "oracle",
                        False,
                        checked,
                        f"q={q} center={center}: dp={computed} oracle={expected}",
                    )
    rng = np.random.default_rng(seed)
    alphabet = Alphabet(4)
    for n in random_lengths:
        if not _fits(alphabet, n, budget):
            continue
        space = hf_space_array(alphabet, n)
        for index in rng.integers(0, space.shape[0], size=random_centers):
            center = HfWord(tuple(int(s) for s in space[index]), alphabet)
            checked += 1
            computed = sphere_profile(center).sizes
            expected = oracle_profile(center, budget=budget)
            if computed != expected:
                return SuiteResult(
                    "oracle",
                    False,
                    checked,
                    f"q=4 center={center}: dp={computed} oracle={expected}",
                )
    return SuiteResult("oracle", True, checked)


def closed_form_suite(
    *,
    h1_qs: Iterable[int] = (3, 4, 5, 6),
    h1_max_n: int = 8,
    h2_qs: Iterable[int] = (4, 5),
    h2_lengths: Iterable[int] = range(3, 9),
    pattern_qs: Iterable[int] = (4, 5, 6),
    pattern_max_n: int = 10,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> SuiteResult:
    """Radius-1 and radius-2 closed forms and the pattern formulas against the DP."""
    checked = 0
    for q in h1_qs:
        alphabet = Alphabet(q)
        for n in range(2, h1_max_n + 1):
            if not _fits(alphabet, n, budget):
                continue
            for center in enumerate_hf(alphabet, n):
                checked += 1
                closed, dp = h1_closed_form(center), sphere_size_dp(center, 1)
                if closed != dp:
                    return SuiteResult(
                        "closed-form",
                        False,
                        checked,
                        f"|H_1({center})| q={q}: {closed} != {dp}",
                    )
    h2_lengths = list(h2_lengths)
    for q in h2_qs:
        alphabet = Alphabet(q)
        for n in h2_lengths:
            if not _fits(alphabet, n, budget):
                continue
            for center in enumerate_hf(alphabet, n):
                checked += 1
                closed, dp = h2_closed_form(center), sphere_size_dp(center, 2)
                if closed != dp:
                    return SuiteResult(
                        "closed-form",
                        False,
                        checked,
                        f"|H_2({center})| q={q}: {closed} != {dp}",
                    )
    for q in pattern_qs:
        alphabet = Alphabet(q)
        for n in range(1, pattern_max_n + 1):
            for r in (1, 2):
                if r > n:
                    continue
                checked += 1
                low, high = extremal_closed_forms(alphabet, n, r)
                low_dp = sphere_size_dp(period_word(alphabet, n, 3), r)
                high_dp = sphere_size_dp(period_word(alphabet, n, 2), r)
                if (low, high) != (low_dp, high_dp):
                    return SuiteResult(
                        "closed-form",
                        False,
                        checked,
                        f"patterns q={q} n={n} r={r}: "
                        f"{(low, high)} != {(low_dp, high_dp)}",
                    )
    return SuiteResult("closed-form", True, checked)


def extremal_suite(
    *,
    q: int = 4,
    radii: Iterable[int] = (1, 2),
    lengths: Iterable[int] = range(4, 9),
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> SuiteResult:
    """Exhaustive extremes against the periodic patterns."""
    alphabet = Alphabet(q)
    radii = list(radii)
    checked = 0
    for n in lengths:
        if not _fits(alphabet, n, budget):
            continue
        for radius in radii:
            checked += 1
            search = extremal_search(
                alphabet, n, radius, budget=budget, workers=workers
            )
            pattern = extremal_cumulative(alphabet, n, radius)
            attained = (
                cumulative_sum(pattern.a_min, radius),
                cumulative_sum(pattern.a_max, radius),
            )
            expected = (search.cumulative_min, search.cumulative_max)
            claimed = (pattern.cumulative_min, pattern.cumulative_max)
            if claimed != expected or attained != expected:
                return SuiteResult(
                    "extremal",
                    False,
                    checked,
                    f"n={n} R={radius}: search {expected}, patterns {attained}",
                )
    return SuiteResult("extremal", True, checked)


def averages_suite(
    *,
    qs: Iterable[int] = (4, 5),
    lengths: Iterable[int] = range(3, 10),
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> SuiteResult:
    """Enumeration, expectation and pair-count averages agree with each other

    and with the published small-length values.
    """
    checked = 0
    for known in reference_tables()["averages"]:
        checked += 1
        alphabet = Alphabet(known["q"])
        expected = Fraction(known["value"])
        for method in ("enumeration", "expectation", "pairs"):
            value = average_cumulative(
                alphabet, known["n"], known["radius"], method=method, budget=budget
            )
            if value != expected:
                return SuiteResult(
                    "averages",
                    False,
                    checked,
                    f"q={known['q']} n={known['n']} {method}: {value} != {expected}",
                )
    lengths = list(lengths)
    for q in qs:
        alphabet = Alphabet(q)
        for n in lengths:
            if not _fits(alphabet, n, budget):
                continue
            totals = shell_totals(alphabet, n, 2, budget=budget, workers=workers)
            size = count_hf(alphabet, n)
            for radius in range(3):
                checked += 1
                enumerated = Fraction(sum(totals[: radius + 1]), size)
                expected_value = average_cumulative(
                    alphabet, n, radius, method="expectation"
                )
                paired = average_cumulative(alphabet, n, radius, method="pairs")
                if not enumerated == expected_value == paired:
                    return SuiteResult(
                        "averages",
                        False,
                        checked,
                        f"q={q} n={n} R={radius}: enumeration {enumerated}, "
                        f"expectation {expected_value}, pairs {paired}",
                    )
    return SuiteResult("averages", True, checked)


def sandwich_suite(
    *,
    q: int = 4,
    lengths: Iterable[int] = range(2, 7),
    codes_per_length: int = 50,
    disjoint_max_n: int = 5,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> SuiteResult:
    """Sphere-sum chain, packing count and sphere disjointness on random codes."""
    alphabet = Alphabet(q)
    rng = np.random.default_rng(seed)
    checked = 0
    for n in lengths:
        if not _fits(alphabet, n, budget):
            continue
        space_size = count_hf(alphabet, n)
        extremes = {
            radius: extremal_cumulative(
                alphabet, n, radius, budget=budget, workers=workers
            )
            for radius in (1, 2)
            if radius <= n
        }
        for _ in range(codes_per_length):
            checked += 1
            size = int(rng.integers(2, 9))
            distance = int(rng.integers(1, n + 1))
            code = random_code(alphabet, n, size, rng, distance=distance, budget=budget)
            label = " ".join(str(word) for word in code.words)
            for radius, extreme in extremes.items():
                stats = code_sphere_stats(code, radius)
                chain = (
                    extreme.cumulative_min,
                    stats.w_min,
                    stats.u_bar,
                    stats.w_max,
                    extreme.cumulative_max,
                )
                if list(chain) != sorted(chain):
                    return SuiteResult(
                        "sandwich",
                        False,
                        checked,
                        f"R={radius} chain {chain} for {label}",
                    )
            if len(code) < 2:
                continue
            d = min_distance(code)
            packed = sum(cumulative_sum(word, (d - 1) // 2) for word in code.words)
            if packed > space_size:
                return SuiteResult(
                    "sandwich",
                    False,
                    checked,
                    f"packing {packed} > {space_size} for {label}",
                )
            if n > disjoint_max_n:
                continue
            for r1 in range(d):
                for r2 in range(d - r1):
                    if not spheres_disjoint(code, r1, r2, budget=budget):
                        return SuiteResult(
                            "sandwich",
                            False,
                            checked,
                            f"H_{r1} and H_{r2} overlap for {label}",
                        )
    return SuiteResult("sandwich", True, checked)


def greedy_suite(
    *,
    q: int = 4,
    max_n: int = 7,
    max_d: int = 5,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> SuiteResult:
    """Greedy codes are valid, maximal and never smaller than the first lower bound."""
    checked = 1
    example = reference_tables()["example_code"]
    example_alphabet = Alphabet(example["q"])
    verification = verify_code(
        [parse_word(text, example_alphabet).symbols for text in example["words"]],
        q=example["q"],
        n=example["n"],
        size=len(example["words"]),
        d=example["d"],
    )
    if not verification.accepted or verification.min_distance != example["d"]:
        return SuiteResult("greedy", False, checked, "published example code rejected")
    alphabet = Alphabet(q)
    for n in range(1, max_n + 1):
        if not _fits(alphabet, n, budget):
            continue
        for d in range(1, min(max_d, n) + 1):
            checked += 1
            code = greedy_construct(alphabet, n, d, budget=budget)
            verification = verify_code(
                [word.symbols for word in code.words], q=q, n=n, size=len(code), d=d
            )
            lower = hf_lower_1(q, n, d, budget=budget, workers=workers).value
            assert lower is not None  # nosec B101
            if not verification.accepted or len(code) < lower:
                return SuiteResult(
                    "greedy",
                    False,
                    checked,
                    f"n={n} d={d}: size {len(code)}, bound {lower}, "
                    f"{len(verification.violations)} violation(s)",
                )
            if not covers_space(code, d - 1, budget=budget):
                return SuiteResult(
                    "greedy", False, checked, f"n={n} d={d}: greedy code is not maximal"
                )
    return SuiteResult("greedy", True, checked)


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "oracle": oracle_suite,
    "closed-form": closed_form_suite,
    "extremal": extremal_suite,
    "averages": averages_suite,
    "sandwich": sandwich_suite,
    "greedy": greedy_suite,
}


def build_verify(
    suite: str, *, budget: int = DEFAULT_BUDGET, workers: int = 1, seed: int = 0
) -> ReportBundle:
    if suite != "all" and suite not in SUITES:
        raise BadParameters(f"unknown suite {suite!r}")
    names = list(SUITES) if suite == "all" else [suite]
    bundle = ReportBundle(
        command="hf_verify",
        params={"suite": suite, "budget": budget, "seed": seed},
        columns=SUITE_COLUMNS,
    )
    for name in names:
        logger.info("running %s suite", name)
        options: dict[str, int] = {"budget": budget, "workers": workers}
        if name in ("oracle", "sandwich"):
            options["seed"] = seed
        result = SUITES[name](**options)
        bundle.suite_results.append(result)
        bundle.rows.append(
            {
                "suite": result.name,
                "passed": result.passed,
                "checked": result.checked,
                "counterexample": result.counterexample,
            }
        )
    return bundle


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def format_cell(value: Cell) -> str:
    """Exact integers, ``p/q`` fractions and floats with 12 significant digits."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _json_cell(value: Cell) -> Any:
    if isinstance(value, Fraction):
        return format_cell(value)
    return value


def render_csv(bundle: ReportBundle) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(bundle.columns)
    for row in bundle.rows:
        writer.writerow([format_cell(row.get(column)) for column in bundle.columns])
    return buffer.getvalue()


def render_json(bundle: ReportBundle) -> str:
    payload = {
        "command": bundle.command,
        "params": bundle.params,
        "timestamp": bundle.timestamp.isoformat(),
        "rows": [
            {column: _json_cell(row.get(column)) for column in bundle.columns}
            for row in bundle.rows
        ],
        "diffs": [
            {
                "table": diff.table,
                "cell": diff.cell,
                "computed": _json_cell(diff.computed),
                "printed": _json_cell(diff.printed),
                "formula": diff.formula,
                "whitelisted": diff.whitelisted,
                "reason": diff.reason,
            }
            for diff in bundle.diffs
        ],
        "suite_results": [
            {
                "name": result.name,
                "passed": result.passed,
                "checked": result.checked,
                "counterexample": result.counterexample,
            }
            for result in bundle.suite_results
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def render_text(bundle: ReportBundle) -> str:
    if bundle.document is not None:
        return bundle.document
    params = " ".join(
        f"{key}={format_cell(value)}" for key, value in bundle.params.items()
    )
    lines = [f"{bundle.command} {params}".rstrip(), ""]
    table = [list(bundle.columns)] + [
        [format_cell(row.get(column)) for column in bundle.columns]
        for row in bundle.rows
    ]
    widths = [max(len(line[i]) for line in table) for i in range(len(bundle.columns))]
    for line in table:
        cells = (cell.rjust(width) for cell, width in zip(line, widths))
        lines.append("  ".join(cells).rstrip())
    if bundle.diffs:
        lines.append("")
        lines.append("diffs:")
        for diff in bundle.diffs:
            flag = "whitelisted" if diff.whitelisted else "MISMATCH"
            lines.append(
                f"  [{flag}] {diff.table} {diff.cell}: "
                f"computed {format_cell(diff.computed)}, "
                f"printed {format_cell(diff.printed)} ({diff.formula})"
            )
            if diff.reason:
                lines.append(f"    {diff.reason}")
    if bundle.suite_results:
        lines.append("")
        lines.append("suites:")
        for result in bundle.suite_results:
            status = "pass" if result.passed else "FAIL"
            line = f"  [{status}] {result.name} ({result.checked} checked)"
            if result.counterexample:
                line += f": {result.counterexample}"
            lines.append(line)
    return "\n".join(lines) + "\n"


RENDERERS: dict[str, Callable[[ReportBundle], str]] = {
    "text": render_text,
    "csv": render_csv,
    "json": render_json,
}


def render(bundle: ReportBundle, output_format: str) -> str:
    try:
        renderer = RENDERERS[output_format]
    except KeyError as e:
        raise BadParameters(f"unknown output format {output_format!r}") from e
    return renderer(bundle)
