"""Тесты подкоманд командной строки и кодов выхода."""

from __future__ import annotations

from pathlib import Path

import pandas as pd
import pytest

from app.config import settings
from app.models.cycle import CaseId
from app.services.optimizers import ga_config_for
from ecodrive import main


@pytest.fixture(autouse=True)
def no_log_file(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("ECODRIVE_LOG_FILE", "")
    monkeypatch.setattr(settings, "log_file", "")


def test_evaluate_optimum(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["evaluate", "--params", "8,0.5,49.6"]) == 0
    out = capsys.readouterr().out
    assert "0.93" in out
    assert "battery_total_kwh" in out


def test_evaluate_infeasible() -> None:
    assert main(["evaluate", "--params", "8,0.5,48.8"]) == 3


def test_evaluate_writes_csv(tmp_path: Path) -> None:
    code = main(["--out-dir", str(tmp_path), "evaluate", "--bits", "11110000111110", "--numerical"])
    assert code == 0
    breakdown = pd.read_csv(tmp_path / "case1_evaluate_breakdown.csv")
    assert breakdown["phase_idx"].iloc[-1] == "battery_total_kwh"
    assert (tmp_path / "case1_evaluate_profile.csv").is_file()


def test_evaluate_case2(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["evaluate", "--case", "case2", "--params", "8,75,0.5,25,2,75,1"]) == 0
    assert "кВт·ч" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["evaluate", "--params", "8,0.5"],
        ["--config", "absent.conf", "evaluate", "--params", "8,0.5,49.6"],
        ["evaluate", "--bits", "0101"],
    ],
)
def test_config_errors(argv: list[str]) -> None:
    assert main(argv) == 2


def test_optimize_exhaustive(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["--out-dir", str(tmp_path), "optimize", "--algo", "exhaustive"]) == 0
    assert "11110000111110" in capsys.readouterr().out


def test_optimize_ga_writes_trace(tmp_path: Path) -> None:
    argv = ["--out-dir", str(tmp_path), "optimize", "--seed", "4", "--generations", "5"]
    assert main(argv) == 0
    trace = pd.read_csv(tmp_path / "case1_ga_seed4_trace.csv")
    assert len(trace) == 6


def test_experiment_then_profile(tmp_path: Path) -> None:
    argv = [
        "--out-dir", str(tmp_path), "experiment",
        "--runs", "2", "--generations", "10", "--population", "20",
    ]
    assert main(argv) == 0
    assert (tmp_path / "case1_ga_summary.csv").is_file()
    assert main(["--out-dir", str(tmp_path), "profile"]) == 0
    profile = pd.read_csv(tmp_path / "case1_profile.csv")
    assert profile["v_mph"].iloc[0] == 0.0


def test_profile_without_summary(tmp_path: Path) -> None:
    assert main(["--out-dir", str(tmp_path), "profile"]) == 2


def test_profile_infeasible_params(tmp_path: Path) -> None:
    assert main(["--out-dir", str(tmp_path), "profile", "--params", "8,0.5,48.8"]) == 1


def test_no_log_file_in_working_dir(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.chdir(tmp_path)
    assert main(["evaluate", "--params", "8,0.5,49.6"]) == 0
    assert not (tmp_path / "ecodrive.log").exists()


def test_optimize_case2_uses_case_budget(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    argv = [
        "--out-dir", str(tmp_path), "optimize", "--case", "case2",
        "--algo", "shc", "--seed", "1",
    ]
    assert main(argv) == 0
    budget = ga_config_for(CaseId.CASE2).evaluation_budget
    assert f"оценок: {budget}" in capsys.readouterr().out


def test_invalid_ga_override(tmp_path: Path) -> None:
    argv = ["--out-dir", str(tmp_path), "optimize", "--population", "2", "--elite", "2"]
    assert main(argv) == 2
