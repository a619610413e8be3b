"""Подкоманда experiment: серия независимых запусков и CSV-отчёты."""

from __future__ import annotations

import argparse

from app.config import load_config_file, settings
from app.data.scenarios import find_target
from app.handlers.common import add_case_argument, ga_config, output_dir, shc_config
from app.services.experiment import ExperimentConfig, run_experiment
from app.services.optimizers import Algorithm


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("experiment", help="Серия запусков с агрегированием")
    add_case_argument(parser)
    parser.add_argument("--algo", type=Algorithm, choices=list(Algorithm), default=Algorithm.GA)
    parser.add_argument("--runs", type=int, default=30, help="Число запусков")
    parser.add_argument("--base-seed", type=int, default=0, help="Зерно первого запуска")
    parser.add_argument(
        "--generations", type=int, default=None, help="Поколения ГА (по умолчанию по сценарию)"
    )
    parser.add_argument(
        "--population", type=int, default=None, help="Размер популяции (по умолчанию по сценарию)"
    )
    parser.add_argument(
        "--max-itr",
        type=int,
        default=None,
        help="Итерации подъёма (по умолчанию по сценарию)",
    )
    parser.add_argument(
        "--workers",
        type=int,
        default=None,
        help="Число процессов (по умолчанию из настроек)",
    )
    parser.add_argument("--bin-width", type=float, default=None, help="Ширина корзины, кВт·ч")
    parser.add_argument("--profile-dt", type=float, default=1.0, help="Шаг профиля, с")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """Выполняет серию и печатает сводку рядом с целевыми значениями."""
    loaded = load_config_file(args.config)
    cfg = ExperimentConfig(
        case=args.case,
        algo=args.algo,
        runs=args.runs,
        base_seed=args.base_seed,
        ga=ga_config(args.case, population_size=args.population, generations=args.generations),
        shc=shc_config(args.case, max_itr=args.max_itr),
        model=args.efficiency_model,
        vehicle=loaded.vehicle(),
        scenario=loaded.scenario(args.case),
        out_dir=output_dir(args),
        bin_width=args.bin_width,
        profile_dt=args.profile_dt,
        workers=args.workers if args.workers is not None else settings.workers,
    )
    summary = run_experiment(cfg)
    print(summary.to_frame().to_string(index=False))
    if summary.infeasible_runs:
        print(f"Запусков без допустимого решения: {summary.infeasible_runs} из {summary.runs}")
    target = find_target(args.case, args.algo.value)
    if target is not None:
        print(
            f"Цель: E_min={target.e_min:.4f}, E_avg={target.e_avg:.4f}, "
            f"σ={target.sigma:.4f} кВт·ч"
        )
    return 0
