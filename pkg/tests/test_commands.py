import copy
import json
from io import StringIO
from pathlib import Path
from typing import Any

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from django_hfbound import reports
from django_hfbound.management.commands.hf_code import Command as CodeCommand
from django_hfbound.management.commands.hf_table2 import Command as Table2Command
from django_hfbound.reports import SuiteResult, reference_tables


def _run(*args: str) -> str:
    out = StringIO()
    call_command(*args, stdout=out)
    return out.getvalue()


def test_table1_command_text() -> None:
    output = _run("hf_table1")
    assert output.startswith("hf_table1 q=4 n=8 d=5\n")
    assert "[whitelisted] table1 hf_upper_1 d=4 n=5" in output


def test_table1_command_csv() -> None:
    output = _run("hf_table1", "--n", "2", "--d", "1", "--format", "csv")
    lines = output.splitlines()
    assert lines[0] == (
        "bound,q,n,d,radius,numerator,denominator,value,rate,printed,match"
    )
    assert lines[1].startswith("hf_upper_1,4,1,1,0,4,1,4,")
    assert lines[1].endswith(",4,true")
    assert len(lines) == 9


def test_table1_command_fails_on_unexpected_diff(
    monkeypatch: pytest.MonkeyPatch,
) -> None:
    tables = copy.deepcopy(reference_tables())
    tables["table1"]["whitelist"] = []
    monkeypatch.setattr(reports, "reference_tables", lambda: tables)
    out = StringIO()
    with pytest.raises(CommandError) as excinfo:
        call_command("hf_table1", "--n", "5", "--d", "4", stdout=out)
    assert excinfo.value.returncode == 2
    assert "[MISMATCH] table1 hf_upper_1 d=4 n=5" in out.getvalue()


def test_table2_command_json() -> None:
    payload = json.loads(_run("hf_table2", "--n", "3", "--format", "json"))
    assert payload["command"] == "hf_table2"
    assert payload["params"] == {"q": 4, "n": 3}
    assert payload["diffs"] == []
    assert payload["suite_results"][0]["passed"] is True
    assert len(payload["rows"]) == 12


def test_table2_command_writes_file(tmp_path: Path) -> None:
    path = tmp_path / "table2.csv"
    assert _run("hf_table2", "--n", "2", "--format", "csv", "--out", str(path)) == ""
    assert path.read_text(encoding="utf-8").splitlines()[0] == (
        "n,q,pattern,center,r,size,printed,match"
    )


def test_classify_command() -> None:
    output = _run("hf_classify", "--n", "4", "--format", "csv")
    assert output.splitlines()[1] == "1,ACGA,24,6 21 44 36,24,true"


def test_classify_command_respects_budget() -> None:
    with pytest.raises(CommandError) as excinfo:
        _run("hf_classify", "--n", "5", "--budget", "100")
    assert excinfo.value.returncode == 64


def test_command_rejects_bad_budget_environment(
    monkeypatch: pytest.MonkeyPatch,
) -> None:
    monkeypatch.setenv("HFBOUND_BUDGET", "lots")
    with pytest.raises(CommandError) as excinfo:
        _run("hf_classify", "--n", "4")
    assert excinfo.value.returncode == 64


def test_curves_command_is_reproducible() -> None:
    args = ("hf_curves", "--q", "4", "--d", "3", "--n", "30", "--format", "csv")
    first = _run(*args)
    assert first == _run(*args)
    assert first.splitlines()[0] == "curve,q,n,d,value_log10,rate"
    assert "caption_formula,4,30,3," in first


def test_curves_command_rejects_bad_parameters() -> None:
    with pytest.raises(CommandError) as excinfo:
        _run("hf_curves", "--d", "3", "--n", "2")
    assert excinfo.value.returncode == 64


def test_verify_command(monkeypatch: pytest.MonkeyPatch) -> None:
    def passing(**options: Any) -> SuiteResult:
        return SuiteResult("extremal", True, 10)

    monkeypatch.setitem(reports.SUITES, "extremal", passing)
    output = _run("hf_verify", "--suite", "extremal", "--format", "csv")
    assert output.splitlines() == [
        "suite,passed,checked,counterexample",
        "extremal,true,10,",
    ]


def test_verify_command_fails_on_counterexample(
    monkeypatch: pytest.MonkeyPatch,
) -> None:
    def failing(**options: Any) -> SuiteResult:
        return SuiteResult("sandwich", False, 3, "R=1 chain broken")

    monkeypatch.setitem(reports.SUITES, "sandwich", failing)
    out = StringIO()
    with pytest.raises(CommandError) as excinfo:
        call_command("hf_verify", "--suite", "sandwich", stdout=out)
    assert excinfo.value.returncode == 3
    assert "R=1 chain broken" in out.getvalue()


def test_verify_command_runs_a_real_suite() -> None:
    output = _run("hf_verify", "--suite", "extremal")
    assert "[pass] extremal" in output


def test_profile_command() -> None:
    output = _run("hf_profile", "ACAG", "--format", "csv")
    assert output.splitlines()[-1] == "4,4,0102,4,39"


def test_profile_command_rejects_homopolymer() -> None:
    with pytest.raises(CommandError) as excinfo:
        _run("hf_profile", "ACCA")
    assert excinfo.value.returncode == 64
    assert "adjacent repeat" in str(excinfo.value)


def test_bound_command_json() -> None:
    payload = json.loads(
        _run(
            "hf_bound", "--q", "4", "--n", "8", "--d", "3", "--radius", "2",
            "--format", "json",
        )
    )
    values = {row["bound"]: row["value"] for row in payload["rows"]}
    assert values["hf_lower_3"] == 102
    assert values["u_hf"] == "259/3"


def test_code_greedy_command() -> None:
    output = _run("hf_code", "greedy", "--q", "3", "--n", "4", "--d", "3")
    lines = output.splitlines()
    assert lines[0] == "# q=3 n=4"
    assert lines[1] == "0101"


def test_code_greedy_command_seeded_shuffle() -> None:
    args = (
        "hf_code",
        "greedy",
        "--q",
        "4",
        "--n",
        "5",
        "--d",
        "3",
        "--order",
        "seeded-shuffle",
        "--seed",
        "11",
        "--dna",
    )
    assert _run(*args) == _run(*args)


def test_code_verify_command(code_file: Path) -> None:
    output = _run("hf_code", "verify", str(code_file), "--d", "3", "--size", "3")
    assert output == "accepted: q=3 n=4 M=3 d=3\n"


def test_code_verify_command_rejects_claimed_distance(code_file: Path) -> None:
    out = StringIO()
    with pytest.raises(CommandError) as excinfo:
        call_command("hf_code", "verify", str(code_file), "--d", "4", stdout=out)
    assert excinfo.value.returncode == 3
    assert out.getvalue().startswith("rejected:")


def test_code_verify_command_missing_file(tmp_path: Path) -> None:
    with pytest.raises(CommandError) as excinfo:
        _run("hf_code", "verify", str(tmp_path / "missing.txt"))
    assert excinfo.value.returncode == 64


def test_usage_errors_exit_with_64() -> None:
    with pytest.raises(SystemExit) as excinfo:
        Table2Command().run_from_argv(["manage.py", "hf_table2", "--n", "two"])
    assert excinfo.value.code == 64


@pytest.mark.parametrize(
    "argv",
    [
        ["greedy", "--q", "x", "--n", "4", "--d", "3"],
        ["shuffle", "--n", "4"],
        [],
    ],
)
def test_code_usage_errors_exit_with_64(argv: list[str]) -> None:
    with pytest.raises(SystemExit) as excinfo:
        CodeCommand().run_from_argv(["manage.py", "hf_code", *argv])
    assert excinfo.value.code == 64


def test_help_exits_cleanly(capsys: pytest.CaptureFixture[str]) -> None:
    with pytest.raises(SystemExit) as excinfo:
        Table2Command().run_from_argv(["manage.py", "hf_table2", "--help"])
    assert excinfo.value.code == 0
    assert "--format" in capsys.readouterr().out


def test_report_status_becomes_exit_code(
    monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]
) -> None:
    tables = copy.deepcopy(reference_tables())
    tables["table2"]["rows"][0]["profile"] = [4]
    monkeypatch.setattr(reports, "reference_tables", lambda: tables)
    with pytest.raises(SystemExit) as excinfo:
        Table2Command().run_from_argv(["manage.py", "hf_table2", "--n", "1"])
    assert excinfo.value.code == 2
    assert "differ from the published tables" in capsys.readouterr().err
