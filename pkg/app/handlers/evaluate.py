"""Подкоманда evaluate: энергия цикла для явно заданных параметров."""

from __future__ import annotations

import argparse

from loguru import logger

from app.handlers.common import (
    EXIT_INFEASIBLE,
    add_candidate_arguments,
    add_case_argument,
    build_problem,
    layout_for,
    parse_candidate,
)
from app.models.cycle import Infeasible
from app.services.cycles import check_constraints, sample_profile
from app.services.energy import cycle_energy, energy_discrepancy, numerical_energy
from app.services.experiment import write_csv


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "evaluate",
        help="Посчитать энергию цикла для заданных параметров",
    )
    add_case_argument(parser)
    add_candidate_arguments(parser, required=True)
    parser.add_argument(
        "--numerical",
        action="store_true",
        help="Сравнить с численным интегрированием мгновенной мощности",
    )
    parser.add_argument("--dt", type=float, default=1.0, help="Шаг профиля скорости, с")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """Печатает разбивку энергии; с ``--out-dir`` пишет разбивку и профиль в CSV.

    Returns:
        0 для допустимого цикла, 3 для недопустимых параметров.
    """
    problem = build_problem(args)
    params = parse_candidate(args, layout_for(args))
    print(f"Параметры ({args.case}): {_format_mph(params.as_mph())}")

    cycle = problem.build(params)
    if isinstance(cycle, Infeasible):
        print(f"Недопустимо: {cycle.reason} {cycle.detail}".rstrip())
        return EXIT_INFEASIBLE

    breakdown = cycle_energy(problem.vehicle, cycle, problem.model)
    print(breakdown.to_frame().to_string(index=False))
    print(f"Время поездки: {cycle.total_time:.1f} с")
    print(f"Энергия батареи: {breakdown.battery_total_kwh:.4f} кВт·ч")
    violations = check_constraints(cycle, problem.scenario)
    if violations:
        logger.warning("Нарушены ограничения: {}", ", ".join(violations))

    if args.numerical:
        reference = numerical_energy(problem.vehicle, cycle, problem.model)
        print(
            f"Численный расчёт: {reference.battery_total_kwh:.4f} кВт·ч "
            f"({energy_discrepancy(breakdown, reference):+.2%})"
        )

    if args.out_dir is not None:
        prefix = args.out_dir / f"{args.case.value}_evaluate"
        write_csv(breakdown.to_frame(), prefix.with_name(prefix.name + "_breakdown.csv"))
        write_csv(
            sample_profile(cycle, args.dt).to_frame(),
            prefix.with_name(prefix.name + "_profile.csv"),
        )
        logger.info("Результаты записаны в {}", args.out_dir)
    return 0


def _format_mph(values: dict[str, float]) -> str:
    return ", ".join(f"{name}={value:.4g}" for name, value in values.items())
