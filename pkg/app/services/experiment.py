"""Серии запусков оптимизаторов и выгрузка результатов в CSV.

Каждый запуск получает зерно base_seed + номер запуска. Запуски независимы
и могут выполняться в пуле процессов; агрегирование всегда идёт в порядке
номеров, поэтому файлы не зависят от числа процессов.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import repeat
from pathlib import Path

import numpy as np
import pandas as pd
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from app.data.scenarios import case1_scenario, case2_scenario, find_target
from app.errors import ArtifactWriteError, EmptyInput, InfeasibleProfile, NonPositiveBinWidth
from app.models.cycle import CandidateParams, CaseId, Infeasible
from app.models.params import Scenario, VehicleParams
from app.services.cycles import SpeedProfile, sample_profile
from app.services.encoding import LAYOUTS
from app.services.energy import EfficiencyModel
from app.services.optimizers import (
    Algorithm,
    GaConfig,
    RunReport,
    ShcConfig,
    ga_config_for,
    run_exhaustive,
    run_ga,
    run_shc,
    shc_config_for,
)
from app.services.problem import EcoDrivingProblem

# Ширина корзины гистограммы по умолчанию, кВт·ч
DEFAULT_BIN_WIDTH: dict[CaseId, float] = {CaseId.CASE1: 0.01, CaseId.CASE2: 0.05}

SUMMARY_COLUMNS = [
    "case", "algo", "runs", "e_min_kwh", "e_avg_kwh", "sigma_kwh",
    "alpha1", "v1", "beta1", "v2", "alpha2", "v3", "beta2",
]
HISTOGRAM_COLUMNS = ["bin_lo_kwh", "bin_hi_kwh", "count"]
# Знаков после запятой для параметров в итоговой таблице
PARAM_DECIMALS = 10


class ExperimentConfig(BaseModel):
    """Настройки серии запусков.

    Attributes:
        case: Сценарий.
        algo: Алгоритм.
        runs: Число независимых запусков.
        base_seed: Зерно первого запуска.
        ga: Гиперпараметры ГА (зерно заменяется на зерно запуска);
            по умолчанию набор сценария из ``ga_config_for``.
        shc: Параметры стохастического подъёма (зерно заменяется);
            по умолчанию из ``shc_config_for``.
        model: Модель учёта КПД.
        vehicle: Параметры автомобиля.
        scenario: Сценарий; по умолчанию справочный для ``case``.
        out_dir: Каталог результатов.
        bin_width: Ширина корзины гистограммы; по умолчанию по сценарию.
        profile_dt: Шаг дискретизации лучшего профиля, с.
        workers: Число процессов для параллельных запусков.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    case: CaseId
    algo: Algorithm = Algorithm.GA
    runs: int = Field(30, ge=1)
    base_seed: int = 0
    ga: GaConfig | None = None
    shc: ShcConfig | None = None
    model: EfficiencyModel = EfficiencyModel.WHEEL_NET
    vehicle: VehicleParams = VehicleParams()
    scenario: Scenario | None = None
    out_dir: Path = Path("out")
    bin_width: float | None = Field(None, gt=0)
    profile_dt: float = Field(1.0, gt=0)
    workers: int = Field(1, ge=1)

    def problem(self) -> EcoDrivingProblem:
        """Задача для этой серии."""
        scenario = self.scenario
        if scenario is None:
            scenario = case1_scenario() if self.case is CaseId.CASE1 else case2_scenario()
        return EcoDrivingProblem(self.vehicle, scenario, self.case, self.model)

    @property
    def ga_config(self) -> GaConfig:
        return self.ga if self.ga is not None else ga_config_for(self.case)

    @property
    def shc_config(self) -> ShcConfig:
        return self.shc if self.shc is not None else shc_config_for(self.case)

    @property
    def histogram_bin_width(self) -> float:
        return self.bin_width or DEFAULT_BIN_WIDTH[self.case]

    def paths(self) -> ExperimentPaths:
        """Пути всех файлов серии."""
        prefix = self.out_dir / f"{self.case.value}_{self.algo.value}"
        return ExperimentPaths(
            summary=Path(f"{prefix}_summary.csv"),
            runs=Path(f"{prefix}_runs.csv"),
            histogram=Path(f"{prefix}_histogram.csv"),
            profile=Path(f"{prefix}_profile.csv"),
            traces=tuple(
                Path(f"{prefix}_trace_run{idx:02d}.csv") for idx in range(self.runs)
            ),
        )


@dataclass(frozen=True)
class ExperimentPaths:
    """Пути файлов результатов серии."""

    summary: Path
    runs: Path
    histogram: Path
    profile: Path
    traces: tuple[Path, ...]


@dataclass(frozen=True)
class ExperimentSummary:
    """Статистика серии запусков.

    Статистика считается только по запускам, нашедшим допустимое решение;
    их число хранится в ``feasible_runs``. Если таких нет, e_min и e_avg
    бесконечны, а sigma равна нулю.

    Attributes:
        case: Сценарий.
        algo: Алгоритм.
        e_min: Минимум энергии по допустимым запускам, кВт·ч.
        e_avg: Среднее минимумов допустимых запусков, кВт·ч.
        sigma: Выборочное стандартное отклонение (n − 1) по допустимым
            запускам, кВт·ч.
        best_params: Параметры лучшего запуска.
        best_run: Номер лучшего запуска (при ничьей меньший).
        per_run_energies: Минимумы энергии по запускам.
        reports: Отчёты всех запусков.
    """

    case: CaseId
    algo: Algorithm
    e_min: float
    e_avg: float
    sigma: float
    best_params: CandidateParams | None
    best_run: int
    per_run_energies: tuple[float, ...]
    reports: tuple[RunReport, ...]

    @property
    def runs(self) -> int:
        return len(self.per_run_energies)

    @property
    def feasible_runs(self) -> int:
        return int(np.isfinite(self.per_run_energies).sum())

    @property
    def infeasible_runs(self) -> int:
        return self.runs - self.feasible_runs

    def to_frame(self) -> pd.DataFrame:
        """Строка итоговой таблицы; в Case I последние четыре колонки пустые."""
        row: dict[str, object] = {
            "case": self.case.value,
            "algo": self.algo.value,
            "runs": self.runs,
            "e_min_kwh": self.e_min,
            "e_avg_kwh": self.e_avg,
            "sigma_kwh": self.sigma,
        }
        if self.best_params is not None:
            mph = self.best_params.as_mph()
            if self.case is CaseId.CASE1:
                mph = {"alpha1": mph["alpha"], "v1": mph["v"], "beta1": mph["beta"]}
            row.update({k: round(v, PARAM_DECIMALS) for k, v in mph.items()})
        return pd.DataFrame([row], columns=SUMMARY_COLUMNS)


def run_single(
    problem: EcoDrivingProblem,
    algo: Algorithm,
    ga: GaConfig,
    shc: ShcConfig,
    seed: int,
) -> RunReport:
    """Один запуск выбранного алгоритма с заданным зерном."""
    layout = LAYOUTS[problem.case]
    if algo is Algorithm.GA:
        return run_ga(problem, layout, ga.model_copy(update={"rng_seed": seed}))
    if algo is Algorithm.SHC:
        return run_shc(problem, layout, shc.max_itr, seed, neighborhood=shc.neighborhood)
    return run_exhaustive(problem, layout)


def run_experiment(cfg: ExperimentConfig) -> ExperimentSummary:
    """Выполняет серию запусков, считает статистику и пишет все файлы.

    Args:
        cfg: Настройки серии.

    Returns:
        Сводка серии.

    Raises:
        ArtifactWriteError: Если файл результата не удалось записать.

    Example:
        >>> summary = run_experiment(ExperimentConfig(case=CaseId.CASE1, runs=30))  # doctest: +SKIP
        >>> round(summary.e_min, 4)  # doctest: +SKIP
        0.9366
    """
    problem = cfg.problem()
    seeds = [cfg.base_seed + idx for idx in range(cfg.runs)]
    logger.info(
        "Серия {} / {}: {} запусков, зерно {}", cfg.case, cfg.algo, cfg.runs, cfg.base_seed
    )
    args = (
        repeat(problem), repeat(cfg.algo), repeat(cfg.ga_config), repeat(cfg.shc_config), seeds
    )
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            reports = list(pool.map(run_single, *args))
    else:
        reports = list(map(run_single, *args))

    energies = np.array([r.best_energy_kwh for r in reports], dtype=float)
    finite = energies[np.isfinite(energies)]
    if finite.size < energies.size:
        logger.warning(
            "Серия {} / {}: {} из {} запусков без допустимого решения исключены из статистики",
            cfg.case, cfg.algo, energies.size - finite.size, energies.size,
        )
    best_run = int(np.argmin(energies))
    summary = ExperimentSummary(
        case=cfg.case,
        algo=cfg.algo,
        e_min=float(energies[best_run]),
        e_avg=float(np.mean(finite)) if finite.size else math.inf,
        sigma=float(np.std(finite, ddof=1)) if finite.size > 1 else 0.0,
        best_params=reports[best_run].best_params,
        best_run=best_run,
        per_run_energies=tuple(float(e) for e in energies),
        reports=tuple(reports),
    )
    _write_artifacts(cfg, summary, seeds, problem)

    logger.info(
        "Серия {} / {}: E_min={:.4f}, E_avg={:.4f}, σ={:.4f} кВт·ч",
        cfg.case, cfg.algo, summary.e_min, summary.e_avg, summary.sigma,
    )
    target = find_target(cfg.case, cfg.algo.value)
    if target is not None and np.isfinite(summary.e_min):
        logger.info(
            "Отклонение E_min от целевого {:.4f}: {:+.2%}",
            target.e_min, summary.e_min / target.e_min - 1,
        )
    return summary


def _write_artifacts(
    cfg: ExperimentConfig,
    summary: ExperimentSummary,
    seeds: list[int],
    problem: EcoDrivingProblem,
) -> None:
    paths = cfg.paths()
    try:
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ArtifactWriteError(cfg.out_dir, str(exc)) from exc

    write_csv(summary.to_frame(), paths.summary)
    runs = pd.DataFrame(
        {
            "run": range(summary.runs),
            "seed": seeds,
            "best_energy_kwh": summary.per_run_energies,
            "best_fitness": [r.best_fitness for r in summary.reports],
            "evaluations": [r.evaluations for r in summary.reports],
            "chromosome": [str(r.best_chromosome) for r in summary.reports],
            "feasible": [r.feasible for r in summary.reports],
        }
    )
    write_csv(runs, paths.runs)
    for report, path in zip(summary.reports, paths.traces):
        write_csv(report.trace_frame(), path)
    export_histogram(summary.per_run_energies, cfg.histogram_bin_width, paths.histogram)
    try:
        export_best_profile(summary, problem, cfg.profile_dt, paths.profile)
    except InfeasibleProfile as exc:
        logger.warning("Профиль не записан: {}", exc)
    logger.info("Результаты записаны в {}", cfg.out_dir)


def write_csv(frame: pd.DataFrame, path: Path) -> None:
    """Пишет таблицу в CSV с переводом ошибок ввода-вывода в ArtifactWriteError."""
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, lineterminator="\n")
    except OSError as exc:
        raise ArtifactWriteError(path, str(exc)) from exc


def export_histogram(
    per_run_energies: Iterable[float],
    bin_width: float,
    path: Path,
) -> pd.DataFrame:
    """Гистограмма минимумов энергии с корзинами, кратными ``bin_width``.

    Пишутся только непустые корзины. Запуски без допустимого решения
    (бесконечная энергия) попадают в последнюю строку с границами ``inf``,
    так что сумма счётчиков всегда равна числу запусков.

    Raises:
        NonPositiveBinWidth: Если ширина корзины не положительна.
        EmptyInput: Если значений нет.
    """
    if not bin_width > 0:
        raise NonPositiveBinWidth(f"Ширина корзины {bin_width} не положительна")
    values = np.asarray(list(per_run_energies), dtype=float)
    if values.size == 0:
        raise EmptyInput("Нет значений для гистограммы")
    finite = values[np.isfinite(values)]
    # сдвиг компенсирует ошибку деления вида 0.95 / 0.01 = 94.999...
    idx = np.floor(finite / bin_width + 1e-9).astype(np.int64)
    bins, counts = np.unique(idx, return_counts=True)
    frame = pd.DataFrame(
        {
            "bin_lo_kwh": np.round(bins * bin_width, 12),
            "bin_hi_kwh": np.round((bins + 1) * bin_width, 12),
            "count": counts,
        },
        columns=HISTOGRAM_COLUMNS,
    )
    infeasible = values.size - finite.size
    if infeasible:
        logger.warning("Гистограмма: {} запусков без допустимого решения", infeasible)
        frame.loc[len(frame)] = [math.inf, math.inf, infeasible]
        frame["count"] = frame["count"].astype(np.int64)
    write_csv(frame, path)
    return frame


def export_best_profile(
    summary: ExperimentSummary,
    problem: EcoDrivingProblem,
    dt: float,
    path: Path,
) -> SpeedProfile:
    """Пишет профиль скорости лучшего решения серии.

    Raises:
        InfeasibleProfile: Если лучшие параметры недопустимы.
    """
    if summary.best_params is None:
        raise InfeasibleProfile("У серии нет лучших параметров")
    cycle = problem.build(summary.best_params)
    if isinstance(cycle, Infeasible):
        raise InfeasibleProfile(f"Лучшие параметры недопустимы: {cycle.reason}")
    profile = sample_profile(cycle, dt)
    write_csv(profile.to_frame(), path)
    return profile
