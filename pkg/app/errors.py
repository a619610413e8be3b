"""Иерархия исключений приложения.

Все доменные ошибки наследуются от ``EcoDriveError``. Ошибки, сигнализирующие
о некорректных аргументах, дополнительно наследуются от ``ValueError``.
Недостижимость цикла (Infeasible) исключением не является.
"""

from __future__ import annotations

from pathlib import Path


class EcoDriveError(Exception):
    """Базовое исключение приложения."""


class ConfigError(EcoDriveError):
    """Ошибка загрузки или валидации конфигурации."""


# --- Модель мощности ---


class PowerModelError(EcoDriveError, ValueError):
    """Некорректные аргументы формул мощности."""


class NonPositiveDuration(PowerModelError):
    """Длительность фазы не положительна."""


class DegenerateRamp(PowerModelError):
    """Разгон/торможение без изменения скорости (V_hi <= V_lo)."""


class NegativeSpeed(PowerModelError):
    """Отрицательная скорость."""


# --- Модель цикла ---


class CycleError(EcoDriveError, ValueError):
    """Структурно некорректный ездовой цикл."""


class MalformedPhase(CycleError):
    """Фаза нарушает собственные инварианты."""


class MalformedCycle(CycleError):
    """Цикл нарушает непрерывность скорости."""


class NonPositiveStep(CycleError):
    """Шаг дискретизации не положителен."""


class InfeasibleProfile(CycleError):
    """Запрошен профиль для недопустимых параметров."""


# --- Кодирование ---


class EncodingError(EcoDriveError, ValueError):
    """Ошибка кодирования хромосом."""


class LayoutMismatch(EncodingError):
    """Длина хромосомы не совпадает с раскладкой."""


class SpaceTooLarge(EncodingError):
    """Полный перебор превышает допустимый размер пространства."""


class GridValueError(EncodingError):
    """Значение не лежит на сетке декодирования поля."""


# --- Оптимизаторы ---


class OptimizerError(EcoDriveError):
    """Ошибка оптимизатора."""


class LengthMismatch(OptimizerError, ValueError):
    """Родительские хромосомы разной длины."""


class SizeMismatch(OptimizerError, ValueError):
    """Размеры популяции и вектора приспособленности не совпадают."""


class InvariantViolation(OptimizerError):
    """Нарушен инвариант монотонности (элитизм или SHC)."""


# --- Эксперименты ---


class ExperimentError(EcoDriveError):
    """Ошибка эксперимента."""


class EmptyInput(ExperimentError, ValueError):
    """Пустой набор значений."""


class NonPositiveBinWidth(ExperimentError, ValueError):
    """Ширина корзины гистограммы не положительна."""


class ArtifactWriteError(ExperimentError):
    """Не удалось записать файл результата.

    Attributes:
        path: Путь к файлу, который не удалось записать.
    """

    def __init__(self, path: Path, reason: str) -> None:
        super().__init__(f"Не удалось записать {path}: {reason}")
        self.path = path
