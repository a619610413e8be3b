"""Подкоманда profile: выгрузка профиля скорости лучшего решения.

Параметры берутся из ``--params``/``--bits`` или из итоговой таблицы
серии ``{case}_{algo}_summary.csv`` в каталоге результатов.
"""

from __future__ import annotations

import argparse
import math
from pathlib import Path

import pandas as pd
from loguru import logger

from app.errors import ConfigError, InfeasibleProfile
from app.handlers.common import (
    add_candidate_arguments,
    add_case_argument,
    build_problem,
    layout_for,
    output_dir,
    params_from_mph,
    parse_candidate,
)
from app.models.cycle import CandidateParams, CaseId, Infeasible
from app.services.cycles import sample_profile
from app.services.encoding import Layout
from app.services.experiment import write_csv
from app.services.optimizers import Algorithm


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("profile", help="Выгрузить профиль скорости v(t)")
    add_case_argument(parser)
    add_candidate_arguments(parser, required=False)
    parser.add_argument(
        "--algo",
        type=Algorithm,
        choices=list(Algorithm),
        default=Algorithm.GA,
        help="Чья итоговая таблица используется без --params/--bits",
    )
    parser.add_argument("--dt", type=float, default=1.0, help="Шаг дискретизации, с")
    parser.add_argument("--output", type=Path, default=None, help="Путь CSV-файла профиля")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    problem = build_problem(args)
    layout = layout_for(args)
    if args.params is None and args.bits is None:
        params = params_from_summary(
            output_dir(args) / f"{args.case.value}_{args.algo.value}_summary.csv", layout
        )
    else:
        params = parse_candidate(args, layout)

    cycle = problem.build(params)
    if isinstance(cycle, Infeasible):
        raise InfeasibleProfile(f"Параметры недопустимы: {cycle.reason} {cycle.detail}")
    profile = sample_profile(cycle, args.dt)
    path = args.output or output_dir(args) / f"{args.case.value}_profile.csv"
    write_csv(profile.to_frame(), path)
    logger.info("Профиль из {} точек записан в {}", len(profile), path)
    return 0


def params_from_summary(path: Path, layout: Layout) -> CandidateParams:
    """Лучшие параметры из итоговой таблицы серии.

    Raises:
        ConfigError: Если таблица отсутствует или не содержит параметров.
    """
    if not path.is_file():
        raise ConfigError(f"Итоговая таблица не найдена: {path}")
    row = pd.read_csv(path).iloc[0]
    columns = ["alpha1", "beta1", "v1"] if layout.case is CaseId.CASE1 else [
        "alpha1", "v1", "beta1", "v2", "alpha2", "v3", "beta2"
    ]
    values = [float(row[c]) for c in columns]
    if any(math.isnan(v) for v in values):
        raise ConfigError(f"В {path} нет лучших параметров")
    return params_from_mph(",".join(repr(v) for v in values), layout)
