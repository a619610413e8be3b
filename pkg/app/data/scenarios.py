"""Справочные сценарии и целевые значения для воспроизводящих прогонов.

Содержит справочный автомобиль, два сценария на 5 миль и эталонные
результаты (E_min, E_avg, σ и параметры), с которыми сравниваются серии
из 30 запусков.
"""

from __future__ import annotations

from dataclasses import dataclass

from app.models.cycle import CaseId
from app.models.params import Scenario, Segment, VehicleParams
from app.services.units import mph_per_s_to_mps2, mph_to_mps, miles_to_m

TABLE1_VEHICLE = VehicleParams()

ROUTE_MILES = 5.0
MAX_TIME_S = 420.0
MAX_ACCEL_MPH_S = 8.0
MAX_SPEED_MPH = 75.0
# Участок с ограничением в середине маршрута
RESTRICTED_MILES = 1.0
RESTRICTED_LIMIT_MPH = 25.0


def case1_scenario() -> Scenario:
    """Дорога без ограничений скорости, кроме V_max."""
    return Scenario.single_segment(
        total_distance=miles_to_m(ROUTE_MILES),
        max_time=MAX_TIME_S,
        max_accel=mph_per_s_to_mps2(MAX_ACCEL_MPH_S),
        max_speed=mph_to_mps(MAX_SPEED_MPH),
    )


def case2_scenario(
    segments_miles_mph: tuple[tuple[float, float], ...] | None = None,
) -> Scenario:
    """Дорога с ограничением 25 mph на средней миле.

    Args:
        segments_miles_mph: Участки как пары (мили, mph); по умолчанию 2/1/2 мили.
    """
    if segments_miles_mph is None:
        side = (ROUTE_MILES - RESTRICTED_MILES) / 2
        segments_miles_mph = (
            (side, MAX_SPEED_MPH),
            (RESTRICTED_MILES, RESTRICTED_LIMIT_MPH),
            (side, MAX_SPEED_MPH),
        )
    return Scenario(
        total_distance=miles_to_m(sum(length for length, _ in segments_miles_mph)),
        max_time=MAX_TIME_S,
        max_accel=mph_per_s_to_mps2(MAX_ACCEL_MPH_S),
        max_speed=mph_to_mps(MAX_SPEED_MPH),
        segments=tuple(
            Segment(length=miles_to_m(length), speed_limit=mph_to_mps(limit))
            for length, limit in segments_miles_mph
        ),
    )


@dataclass(frozen=True)
class BenchmarkTarget:
    """Целевой результат серии из 30 запусков.

    Attributes:
        case: Сценарий.
        algo: Алгоритм (``ga`` или ``shc``).
        e_min: Минимум энергии по запускам, кВт·ч.
        e_avg: Среднее минимумов, кВт·ч.
        sigma: Стандартное отклонение минимумов, кВт·ч.
        params_mph: Оптимальные параметры в mph и mph/s.
    """

    case: CaseId
    algo: str
    e_min: float
    e_avg: float
    sigma: float
    params_mph: tuple[float, ...]


BENCHMARK_TARGETS: list[BenchmarkTarget] = [
    BenchmarkTarget(CaseId.CASE1, "shc", 0.9361, 0.9553, 0.0328, (8, 0.5, 50.4)),
    BenchmarkTarget(CaseId.CASE1, "ga", 0.9285, 0.9355, 0.0159, (8, 0.5, 49.6)),
    BenchmarkTarget(CaseId.CASE2, "shc", 0.8851, 1.1465, 0.1185, (4.5, 75, 0.5, 25, 0.5, 75, 4.5)),
    BenchmarkTarget(CaseId.CASE2, "ga", 0.8060, 0.9016, 0.0775, (8, 75, 0.5, 25, 2, 75, 1)),
]


def find_target(case: CaseId, algo: str) -> BenchmarkTarget | None:
    """Ищет целевой результат для сценария и алгоритма."""
    for target in BENCHMARK_TARGETS:
        if target.case is case and target.algo == algo:
            return target
    return None
