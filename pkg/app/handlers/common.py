"""Общие аргументы и помощники для подкоманд CLI."""

from __future__ import annotations

import argparse
from pathlib import Path

from app.config import load_config_file, settings
from app.errors import ConfigError
from app.models.cycle import CandidateParams, CaseId, CaseIIParams, CaseIParams
from app.services.encoding import LAYOUTS, Chromosome, Layout, decode
from app.services.optimizers import GaConfig, ShcConfig, ga_config_for, shc_config_for
from app.services.problem import EcoDrivingProblem
from app.services.units import mph_per_s_to_mps2, mph_to_mps

# Код выхода для недопустимых параметров в evaluate
EXIT_INFEASIBLE = 3


def add_case_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--case",
        type=CaseId,
        choices=list(CaseId),
        default=CaseId.CASE1,
        help="Сценарий: case1 (без ограничений) или case2 (участок 25 mph)",
    )


def add_candidate_arguments(parser: argparse.ArgumentParser, *, required: bool) -> None:
    """Параметры цикла: значения в mph/mph/s или битовая строка."""
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument(
        "--params",
        help="Значения через запятую в порядке полей хромосомы "
        "(case1: alpha,beta,v; case2: alpha1,v1,beta1,v2,alpha2,v3,beta2), mph и mph/s",
    )
    group.add_argument("--bits", help="Хромосома строкой из 0 и 1")


def build_problem(args: argparse.Namespace) -> EcoDrivingProblem:
    """Задача по файлу параметров, сценарию и модели КПД из аргументов."""
    loaded = load_config_file(args.config)
    return EcoDrivingProblem(
        vehicle=loaded.vehicle(),
        scenario=loaded.scenario(args.case),
        case=args.case,
        model=args.efficiency_model,
    )


def parse_candidate(args: argparse.Namespace, layout: Layout) -> CandidateParams:
    """Параметры цикла из ``--params`` или ``--bits``.

    Raises:
        ConfigError: Если число значений не совпадает с раскладкой или
            значения недопустимы.
    """
    if args.bits is not None:
        try:
            return decode(Chromosome.from_string(args.bits.strip()), layout)
        except ValueError as exc:
            raise ConfigError(f"Некорректная хромосома: {exc}") from exc
    return params_from_mph(args.params, layout)


def params_from_mph(raw: str, layout: Layout) -> CandidateParams:
    """Разбирает строку значений в mph и mph/s в параметры цикла (СИ)."""
    try:
        values = [float(item) for item in raw.split(",")]
    except ValueError as exc:
        raise ConfigError(f"Некорректные значения параметров: {raw!r}") from exc
    names = [f.name for f in layout.fields]
    if len(values) != len(names):
        raise ConfigError(
            f"Для {layout.case} нужно {len(names)} значений ({', '.join(names)}), "
            f"получено {len(values)}"
        )
    si = {
        name: mph_to_mps(v) if name.startswith("v") else mph_per_s_to_mps2(v)
        for name, v in zip(names, values)
    }
    try:
        return CaseIParams(**si) if layout.case is CaseId.CASE1 else CaseIIParams(**si)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def layout_for(args: argparse.Namespace) -> Layout:
    return LAYOUTS[args.case]


def output_dir(args: argparse.Namespace) -> Path:
    """Каталог результатов: флаг ``--out-dir`` или настройка по умолчанию."""
    return args.out_dir if args.out_dir is not None else settings.out_dir


def ga_config(case: CaseId, **overrides: object) -> GaConfig:
    """Набор ГА сценария с заменой полей, заданных в командной строке."""
    fields = ga_config_for(case).model_dump()
    fields.update({k: v for k, v in overrides.items() if v is not None})
    return GaConfig.model_validate(fields)


def shc_config(case: CaseId, **overrides: object) -> ShcConfig:
    """Параметры подъёма сценария с заменой полей из командной строки."""
    fields = shc_config_for(case).model_dump()
    fields.update({k: v for k, v in overrides.items() if v is not None})
    return ShcConfig.model_validate(fields)
