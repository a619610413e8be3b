"""Скрипт воспроизведения серий из 30 запусков ГА и стохастического подъёма.

Для каждого сценария и алгоритма выполняет серию, пишет CSV-отчёты в
``<out_dir>/tables`` и печатает таблицу E_min / E_avg / σ рядом с целевыми
значениями. Параметры ГА и подъёма берутся из наборов сценария
(``ga_config_for``, ``shc_config_for``), в Case II бюджеты вычислений совпадают.
"""

from __future__ import annotations

import sys
from pathlib import Path

import pandas as pd
from loguru import logger

# Добавляем корень проекта в sys.path
PROJECT_ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(PROJECT_ROOT))

from app.config import settings  # noqa: E402
from app.data.scenarios import find_target  # noqa: E402
from app.models.cycle import CaseId  # noqa: E402
from app.services.experiment import ExperimentConfig, run_experiment  # noqa: E402
from app.services.optimizers import Algorithm  # noqa: E402

RUNS = 30


def reproduce(out_dir: Path, runs: int = RUNS) -> pd.DataFrame:
    """Выполняет все четыре серии и собирает сравнительную таблицу.

    Args:
        out_dir: Каталог для CSV-отчётов серий.
        runs: Число запусков в серии.

    Returns:
        Таблица с полученными и целевыми значениями.
    """
    rows = []
    for case in CaseId:
        for algo in (Algorithm.SHC, Algorithm.GA):
            summary = run_experiment(
                ExperimentConfig(
                    case=case,
                    algo=algo,
                    runs=runs,
                    out_dir=out_dir,
                    model=settings.efficiency_model,
                    workers=settings.workers,
                )
            )
            target = find_target(case, algo.value)
            rows.append(
                {
                    "case": case.value,
                    "algo": algo.value,
                    "e_min": summary.e_min,
                    "e_min_target": target.e_min if target else None,
                    "e_avg": summary.e_avg,
                    "e_avg_target": target.e_avg if target else None,
                    "sigma": summary.sigma,
                    "sigma_target": target.sigma if target else None,
                }
            )
    return pd.DataFrame(rows)


if __name__ == "__main__":
    table = reproduce(settings.out_dir / "tables")
    logger.success("Серии завершены")
    print(table.to_string(index=False, float_format="{:.4f}".format))
