import copy
import json
from fractions import Fraction
from typing import Any

import pytest

from django_hfbound import reports
from django_hfbound.exceptions import BadParameters
from django_hfbound.reports import (
    EXIT_DIFFS,
    EXIT_INVARIANT,
    EXIT_OK,
    DiffRow,
    ReportBundle,
    SuiteResult,
    averages_suite,
    build_bound,
    build_classify,
    build_code_verification,
    build_curves,
    build_greedy_code,
    build_profile,
    build_table1,
    build_table2,
    build_verify,
    closed_form_suite,
    extremal_suite,
    format_cell,
    greedy_suite,
    oracle_suite,
    reference_tables,
    render,
    render_csv,
    render_json,
    render_text,
    sandwich_suite,
)


def _bundle(**kwargs: Any) -> ReportBundle:
    return ReportBundle(command="test", params={}, columns=("a",), **kwargs)


def test_reference_tables_are_loaded() -> None:
    tables = reference_tables()
    assert set(tables) >= {"table1", "table2", "classes", "averages", "example_code"}
    assert tables["table1"]["q"] == 4
    assert len(tables["table2"]["rows"]) == 18


def test_exit_status() -> None:
    diff = DiffRow("t", "c", 1, 2, "f")
    assert _bundle().exit_status == EXIT_OK
    allowed = DiffRow("t", "c", 1, 2, "f", whitelisted=True)
    assert _bundle(diffs=[allowed]).exit_status == EXIT_OK
    assert _bundle(diffs=[diff]).exit_status == EXIT_DIFFS
    failed = SuiteResult("s", False, 1, "x")
    assert _bundle(diffs=[diff], suite_results=[failed]).exit_status == EXIT_INVARIANT


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------


def test_table1_matches_published_values() -> None:
    bundle = build_table1(8, 5)
    assert len(bundle.rows) == 102
    (diff,) = bundle.diffs
    assert diff.cell == "hf_upper_1 d=4 n=5"
    assert (diff.computed, diff.printed) == (40, 8)
    assert diff.whitelisted
    assert "misprint" in diff.reason
    assert diff.formula.startswith("floor(")
    assert bundle.exit_status == EXIT_OK
    mismatched = [row for row in bundle.rows if row["match"] is False]
    assert len(mismatched) == 1


def test_table1_distance_one() -> None:
    bundle = build_table1(2, 1)
    assert {row["bound"] for row in bundle.rows} == {
        "hf_upper_1",
        "hf_upper_3",
        "hf_lower_1",
        "hf_lower_3",
    }
    assert [row["value"] for row in bundle.rows] == [4, 12] * 4
    assert not bundle.diffs


def test_table1_lower_bound_at_length_three() -> None:
    bundle = build_table1(3, 3)
    (row,) = [
        row
        for row in bundle.rows
        if row["bound"] == "hf_lower_1" and row["d"] == 3 and row["n"] == 3
    ]
    assert row["value"] == 2
    assert row["match"] is True


def test_table1_rejects_bad_sizes() -> None:
    with pytest.raises(BadParameters):
        build_table1(0, 3)


def test_table1_reports_unexpected_diffs(monkeypatch: pytest.MonkeyPatch) -> None:
    tables = copy.deepcopy(reference_tables())
    tables["table1"]["whitelist"] = []
    monkeypatch.setattr(reports, "reference_tables", lambda: tables)
    bundle = build_table1(5, 4)
    assert len(bundle.unexpected_diffs) == 1
    assert bundle.exit_status == EXIT_DIFFS


def test_table2_matches_published_profiles() -> None:
    bundle = build_table2(10)
    assert len(bundle.rows) == 110
    assert not bundle.diffs
    assert all(row["match"] is True for row in bundle.rows)
    a_max = [
        row["size"]
        for row in bundle.rows
        if row["n"] == 10 and row["pattern"] == "a_max"
    ]
    assert a_max == [20, 166, 784, 2494, 5932, 11030, 16200, 18494, 15492, 8119]
    (partition,) = bundle.suite_results
    assert partition.passed
    assert partition.checked == 20


def test_table2_single_symbol() -> None:
    bundle = build_table2(1)
    assert [row["size"] for row in bundle.rows] == [3, 3]
    assert [row["center"] for row in bundle.rows] == ["A", "A"]


def test_table2_beyond_published_lengths() -> None:
    bundle = build_table2(11)
    assert all(row["printed"] is None for row in bundle.rows if row["n"] == 11)
    assert bundle.exit_status == EXIT_OK


def test_classify_length_four() -> None:
    bundle = build_classify(4)
    assert [row["members"] for row in bundle.rows] == [24, 24, 48, 12]
    assert bundle.rows[0]["profile"] == "6 21 44 36"
    assert bundle.rows[0]["representative"] == "ACGA"
    assert all(row["match"] is True for row in bundle.rows)
    assert bundle.exit_status == EXIT_OK


def test_classify_length_five() -> None:
    bundle = build_classify(5)
    assert len(bundle.rows) == 10
    members = [row["members"] for row in bundle.rows]
    assert sum(m for m in members if isinstance(m, int)) == 324
    last = bundle.rows[-1]
    assert (last["profile"], last["members"]) == ("10 36 74 104 99", 12)
    assert not bundle.diffs


def test_classify_without_published_classes() -> None:
    bundle = build_classify(3)
    assert all(row["match"] is None for row in bundle.rows)
    assert bundle.suite_results[0].passed


def test_classify_reports_missing_classes(monkeypatch: pytest.MonkeyPatch) -> None:
    tables = copy.deepcopy(reference_tables())
    tables["classes"]["lengths"][4][0]["members"] = 25
    tables["classes"]["lengths"][4].append(
        {"representative": "ACGT", "profile": [1, 2, 3, 4], "members": 1}
    )
    monkeypatch.setattr(reports, "reference_tables", lambda: tables)
    bundle = build_classify(4)
    assert [diff.printed for diff in bundle.diffs] == [25, 1]
    assert bundle.diffs[1].computed is None
    assert bundle.exit_status == EXIT_DIFFS


# ---------------------------------------------------------------------------
# Curves and single points
# ---------------------------------------------------------------------------


def test_curves_for_dna() -> None:
    bundle = build_curves(4, 3, 10)
    curves = [row["curve"] for row in bundle.rows]
    assert curves == [
        curve
        for curve in (
            "classic_sp",
            "classic_gv",
            "hf_upper_1",
            "hf_lower_1",
            "hf_upper_3",
            "hf_lower_3",
            "caption_formula",
        )
        for _ in range(8)
    ]
    results = {result.name: result for result in bundle.suite_results}
    assert results["rate-cap"].passed
    assert results["caption-divergence"].passed
    assert results["caption-divergence"].checked == 7
    first_lower = next(row for row in bundle.rows if row["curve"] == "hf_lower_1")
    assert first_lower["n"] == 3
    assert first_lower["value_log10"] == pytest.approx(0.30103, abs=1e-5)


def test_curves_classic_rate_at_distance_one() -> None:
    bundle = build_curves(4, 1, 5)
    rates = [row["rate"] for row in bundle.rows if row["curve"] == "classic_sp"]
    assert rates == pytest.approx([1.0] * 5)


def test_curves_in_log_domain() -> None:
    bundle = build_curves(4, 3, 80, exact_length_limit=64)
    assert bundle.exit_status == EXIT_OK
    assert all(
        row["rate"] <= 0.79248 + 1 / row["n"]  # type: ignore[operator]
        for row in bundle.rows
        if str(row["curve"]).startswith("hf_")
    )


def test_curves_stop_at_the_budget() -> None:
    bundle = build_curves(4, 4, 8, budget=1000)
    lower = [row["n"] for row in bundle.rows if row["curve"] == "hf_lower_1"]
    assert lower == [4, 5, 6]
    assert not any(row["curve"] == "caption_formula" for row in bundle.rows)


@pytest.mark.parametrize("q,d,n", [(2, 3, 10), (4, 3, 2), (4, 0, 5)])
def test_curves_reject_bad_parameters(q: int, d: int, n: int) -> None:
    with pytest.raises(BadParameters):
        build_curves(q, d, n)


def test_profile_bundle() -> None:
    bundle = build_profile("ACAG", 4)
    assert [row["size"] for row in bundle.rows] == [1, 7, 22, 39, 39]
    assert bundle.rows[0]["center"] == "0102"
    assert render_csv(bundle).splitlines()[:2] == ["n,q,center,r,size", "4,4,0102,0,1"]


def test_bound_bundle() -> None:
    bundle = build_bound(4, 8, 3, 2)
    assert [row["bound"] for row in bundle.rows] == [
        "classic_sp",
        "classic_gv",
        "hf_upper_1",
        "hf_lower_1",
        "hf_upper_3",
        "hf_lower_3",
        "s_hf_a_min",
        "s_hf_a_max",
        "u_hf",
    ]
    values = {row["bound"]: row["value"] for row in bundle.rows}
    assert values["hf_lower_1"] == 74
    assert values["s_hf_a_min"] == 70
    assert values["s_hf_a_max"] == 119
    assert values["u_hf"] == Fraction(259, 3)


def test_greedy_code_bundle() -> None:
    bundle = build_greedy_code(4, 5, 3, dna=True)
    assert bundle.document is not None
    assert bundle.document.startswith("# q=4 n=5\nACACA\n")
    assert render_text(bundle) == bundle.document
    assert [result.name for result in bundle.suite_results] == [
        "min-distance",
        "lower-bound-1",
    ]
    assert bundle.exit_status == EXIT_OK


def test_code_verification_bundle(example_words: list[str]) -> None:
    text = "# q=3 n=4\n" + "\n".join(example_words) + "\n"
    bundle = build_code_verification(text, d=3, size=3)
    assert bundle.document == "accepted: q=3 n=4 M=3 d=3\n"
    assert bundle.exit_status == EXIT_OK

    rejected = build_code_verification(text, d=4)
    assert rejected.document is not None
    assert rejected.document.startswith("rejected:")
    assert [row["kind"] for row in rejected.rows] == ["distance"]
    assert rejected.exit_status == EXIT_INVARIANT


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def test_oracle_suite() -> None:
    result = oracle_suite(qs=(3,), max_n=4, random_lengths=(5,), random_centers=5)
    assert result.passed
    assert result.checked == 3 + 6 + 12 + 24 + 5


def test_oracle_suite_skips_over_budget() -> None:
    result = oracle_suite(qs=(4,), max_n=3, random_lengths=(), budget=10)
    assert result.passed
    assert result.checked == 4


def test_closed_form_suite() -> None:
    result = closed_form_suite(
        h1_qs=(3, 4),
        h1_max_n=4,
        h2_qs=(4,),
        h2_lengths=(3, 4),
        pattern_qs=(4, 5),
        pattern_max_n=5,
    )
    assert result.passed
    assert result.counterexample is None


def test_extremal_suite() -> None:
    result = extremal_suite(lengths=(4, 5))
    assert result.passed
    assert result.checked == 4


def test_averages_suite() -> None:
    assert averages_suite(qs=(4, 5), lengths=(3, 4)).passed


def test_sandwich_suite() -> None:
    result = sandwich_suite(lengths=(2, 3, 4), codes_per_length=5)
    assert result.passed
    assert result.checked == 15


def test_greedy_suite() -> None:
    assert greedy_suite(max_n=4, max_d=3).passed


def test_build_verify_reports_failures(monkeypatch: pytest.MonkeyPatch) -> None:
    def failing(**options: Any) -> SuiteResult:
        return SuiteResult("oracle", False, 1, "center=0101")

    monkeypatch.setitem(reports.SUITES, "oracle", failing)
    bundle = build_verify("oracle")
    assert bundle.rows == [
        {
            "suite": "oracle",
            "passed": False,
            "checked": 1,
            "counterexample": "center=0101",
        }
    ]
    assert bundle.exit_status == EXIT_INVARIANT


def test_build_verify_runs_every_suite(monkeypatch: pytest.MonkeyPatch) -> None:
    seen: list[tuple[str, dict[str, Any]]] = []
    for name in list(reports.SUITES):

        def passing(name: str = name, **options: Any) -> SuiteResult:
            seen.append((name, options))
            return SuiteResult(name, True, 0)

        monkeypatch.setitem(reports.SUITES, name, passing)
    bundle = build_verify("all", budget=500, seed=3)
    assert [row["suite"] for row in bundle.rows] == list(reports.SUITES)
    assert dict(seen)["sandwich"] == {"budget": 500, "workers": 1, "seed": 3}
    assert dict(seen)["extremal"] == {"budget": 500, "workers": 1}
    assert bundle.exit_status == EXIT_OK


def test_build_verify_rejects_unknown_suite() -> None:
    with pytest.raises(BadParameters):
        build_verify("everything")


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "value,expected",
    [
        (None, ""),
        (True, "true"),
        (False, "false"),
        (Fraction(59, 3), "59/3"),
        (Fraction(12), "12"),
        (0.792481250360578, "0.792481250361"),
        (10**30, "1" + "0" * 30),
        ("ACGT", "ACGT"),
    ],
)
def test_format_cell(value: Any, expected: str) -> None:
    assert format_cell(value) == expected


def test_render_json() -> None:
    bundle = build_bound(4, 3, 3, 2)
    payload = json.loads(render_json(bundle))
    assert set(payload) == {
        "command",
        "params",
        "timestamp",
        "rows",
        "diffs",
        "suite_results",
    }
    assert payload["command"] == "hf_bound"
    assert payload["rows"][-1]["value"] == "59/3"
    assert payload["rows"][0]["value"] == 6


def test_render_text_is_deterministic() -> None:
    first = render_text(build_table1(5, 4))
    second = render_text(build_table1(5, 4))
    assert first == second
    assert first.startswith("hf_table1 q=4 n=5 d=4\n")
    assert "[whitelisted] table1 hf_upper_1 d=4 n=5" in first


def test_render_text_lists_suites() -> None:
    text = render_text(build_table2(3))
    assert "[pass] partition (6 checked)" in text


def test_render_rejects_unknown_format() -> None:
    with pytest.raises(BadParameters):
        render(_bundle(), "xml")
