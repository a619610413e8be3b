"""Точка входа CLI для поиска энергоэффективных ездовых циклов электромобиля.

Подкоманды: ``evaluate`` (энергия для заданных параметров), ``optimize``
(один запуск), ``experiment`` (серия запусков) и ``profile`` (профиль
скорости лучшего решения).

Коды выхода: 0 успех, 2 ошибка конфигурации, 3 недопустимые
параметры в ``evaluate``, 1 прочие ошибки.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

from loguru import logger
from pydantic import ValidationError

from app.config import settings
from app.errors import ConfigError, EcoDriveError
from app.handlers import COMMANDS
from app.services.energy import EfficiencyModel

EXIT_ERROR = 1
EXIT_CONFIG = 2


def build_parser() -> argparse.ArgumentParser:
    """Создаёт парсер аргументов со всеми подкомандами.

    Returns:
        Парсер с глобальными флагами и зарегистрированными подкомандами.

    Example:
        >>> args = build_parser().parse_args(["evaluate", "--params", "8,0.5,49.6"])
        >>> args.case
        <CaseId.CASE1: 'case1'>
    """
    parser = argparse.ArgumentParser(
        prog="ecodrive",
        description="Энергоэффективные ездовые циклы электромобиля с рекуперацией",
    )
    parser.add_argument(
        "--config",
        type=Path,
        default=settings.config_path,
        help="Файл параметров автомобиля и сценария (ключ = значение)",
    )
    parser.add_argument(
        "--efficiency-model",
        type=EfficiencyModel,
        choices=list(EfficiencyModel),
        default=settings.efficiency_model,
        help="Порядок учёта КПД трансмиссии и рекуперации",
    )
    parser.add_argument("--out-dir", type=Path, default=None, help="Каталог CSV-результатов")
    parser.add_argument("--log-level", default=settings.log_level, help="Уровень логирования")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def setup_logging(level: str, log_file: str) -> None:
    """Вывод в stderr на заданном уровне и ротируемый файл, если он задан."""
    logger.remove()
    logger.add(sys.stderr, level=level.upper())
    if log_file:
        logger.add(log_file, rotation="10 MB", level="DEBUG")


def main(argv: Sequence[str] | None = None) -> int:
    """Разбирает аргументы, выполняет подкоманду и возвращает код выхода."""
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level, settings.log_file)
    try:
        return args.handler(args)
    except (ConfigError, ValidationError) as exc:
        logger.error("Ошибка конфигурации: {}", exc)
        return EXIT_CONFIG
    except EcoDriveError as exc:
        logger.error("{}: {}", type(exc).__name__, exc)
        return EXIT_ERROR


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        logger.info("Прервано пользователем")
