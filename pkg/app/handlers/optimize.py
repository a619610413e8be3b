"""Подкоманда optimize: один запуск ГА, стохастического подъёма или перебора."""

from __future__ import annotations

import argparse

from loguru import logger

from app.handlers.common import (
    add_case_argument,
    build_problem,
    ga_config,
    layout_for,
    output_dir,
    shc_config,
)
from app.services.encoding import DEFAULT_ENUMERATION_LIMIT
from app.services.experiment import write_csv
from app.services.optimizers import (
    Algorithm,
    Neighborhood,
    run_exhaustive,
    run_ga,
    run_shc,
)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("optimize", help="Один запуск оптимизатора")
    add_case_argument(parser)
    parser.add_argument("--algo", type=Algorithm, choices=list(Algorithm), default=Algorithm.GA)
    parser.add_argument("--seed", type=int, default=0, help="Зерно генератора")
    parser.add_argument("--population", type=int, default=None)
    parser.add_argument("--generations", type=int, default=None)
    parser.add_argument("--crossover-prob", type=float, default=None)
    parser.add_argument("--mutation-prob", type=float, default=None)
    parser.add_argument("--elite", type=int, default=None)
    parser.add_argument(
        "--max-itr",
        type=int,
        default=None,
        help="Итерации подъёма (по умолчанию по сценарию)",
    )
    parser.add_argument(
        "--neighborhood",
        type=Neighborhood,
        choices=list(Neighborhood),
        default=Neighborhood.BIT_FLIP,
    )
    parser.add_argument(
        "--max-bits",
        type=int,
        default=DEFAULT_ENUMERATION_LIMIT,
        help="Предел длины хромосомы для полного перебора",
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """Запускает оптимизатор, печатает лучший результат и пишет трассу в CSV."""
    problem = build_problem(args)
    layout = layout_for(args)
    if args.algo is Algorithm.GA:
        cfg = ga_config(
            args.case,
            population_size=args.population,
            generations=args.generations,
            crossover_prob=args.crossover_prob,
            mutation_prob=args.mutation_prob,
            elite_count=args.elite,
            rng_seed=args.seed,
        )
        report = run_ga(problem, layout, cfg)
    elif args.algo is Algorithm.SHC:
        shc = shc_config(args.case, max_itr=args.max_itr)
        report = run_shc(problem, layout, shc.max_itr, args.seed, neighborhood=args.neighborhood)
    else:
        report = run_exhaustive(problem, layout, max_bits=args.max_bits)

    print(f"Алгоритм: {report.algorithm}, оценок: {report.evaluations}")
    print(f"Хромосома: {report.best_chromosome}")
    if report.best_params is not None:
        print(
            "Параметры: "
            + ", ".join(f"{k}={v:.4g}" for k, v in report.best_params.as_mph().items())
        )
    if report.feasible:
        print(f"Энергия батареи: {report.best_energy_kwh:.4f} кВт·ч")
    else:
        print("Допустимое решение не найдено")

    if report.trace:
        path = output_dir(args) / f"{args.case.value}_{args.algo.value}_seed{args.seed}_trace.csv"
        write_csv(report.trace_frame(), path)
        logger.info("Трасса записана в {}", path)
    return 0
