"""Формулы тяговой мощности для фаз ездового цикла.

Разгон и торможение описываются одной формулой средней мощности. Для рампы
между двумя ненулевыми скоростями сопротивления усредняются по профилю
постоянной мощности (V² линейно во времени). Именно этот профиль даёт
коэффициенты 2/3 (качение) и 1/5 (аэродинамика) при старте с места.
"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt

from app.errors import DegenerateRamp, NegativeSpeed, NonPositiveDuration
from app.models.cycle import RampKind
from app.models.params import VehicleParams


def ramp_kinetic_power(
    p: VehicleParams,
    v_b: float,
    v_lo: float,
    v_hi: float,
    t: float,
) -> float:
    """Кинетическая составляющая мощности рампы, Вт.

    Поправка V_b² добавляется, когда нижняя скорость рампы ниже базовой
    (участок постоянного момента).
    """
    if not t > 0:
        raise NonPositiveDuration(f"Длительность рампы {t} с не положительна")
    if not v_hi > v_lo:
        raise DegenerateRamp(f"V_hi={v_hi} не больше V_lo={v_lo}")
    dv2 = v_hi * v_hi - v_lo * v_lo
    if v_lo < v_b:
        dv2 += v_b * v_b
    return p.mass_factor * p.mass * dv2 / (2.0 * t)


def ramp_resistive_power(p: VehicleParams, v_lo: float, v_hi: float) -> float:
    """Средняя мощность сопротивлений качению и воздуха на рампе, Вт."""
    if v_lo < 0:
        raise NegativeSpeed(f"Отрицательная скорость {v_lo} м/с")
    if not v_hi > v_lo:
        raise DegenerateRamp(f"V_hi={v_hi} не больше V_lo={v_lo}")
    dv2 = v_hi * v_hi - v_lo * v_lo
    rolling = (
        p.mass * p.gravity * p.rolling_coeff
        * (2.0 / 3.0) * (v_hi**3 - v_lo**3) / dv2
    )
    aero = (
        0.5 * p.air_density * p.drag_coeff * p.frontal_area
        * 0.4 * (v_hi**5 - v_lo**5) / dv2
    )
    return rolling + aero


def ramp_power(
    p: VehicleParams,
    v_b: float,
    v_lo: float,
    v_hi: float,
    t: float,
    kind: RampKind,
) -> float:
    """Средняя мощность разгона или торможения между скоростями V_lo и V_hi.

    Величина одинакова для разгона и торможения; ``kind`` лишь помечает фазу,
    знак учитывается при подсчёте энергии.

    Args:
        p: Параметры автомобиля.
        v_b: Базовая скорость привода, м/с.
        v_lo: Меньшая скорость рампы, м/с.
        v_hi: Большая скорость рампы, м/с.
        t: Длительность рампы, с.
        kind: Разгон или торможение.

    Returns:
        Строго положительная мощность, Вт.

    Raises:
        NonPositiveDuration: Если t <= 0.
        DegenerateRamp: Если V_hi <= V_lo.

    Example:
        >>> ramp_power(VehicleParams(), 8.382, 0.0, 22.173184, 6.2,
        ...            RampKind.ACCELERATE)  # doctest: +SKIP
        98431.9...
    """
    return ramp_kinetic_power(p, v_b, v_lo, v_hi, t) + ramp_resistive_power(p, v_lo, v_hi)


def cruise_power(p: VehicleParams, v: float) -> float:
    """Тяговая мощность при движении с постоянной скоростью, Вт."""
    if v < 0:
        raise NegativeSpeed(f"Отрицательная скорость {v} м/с")
    return (
        p.mass * p.gravity * p.rolling_coeff * v
        + 0.5 * p.air_density * p.drag_coeff * p.frontal_area * v**3
    )


def instantaneous_power(
    p: VehicleParams,
    v: float | npt.NDArray[np.float64],
    a: float | npt.NDArray[np.float64],
) -> float | npt.NDArray[np.float64]:
    """Мгновенная мощность на колёсах F_w · V, Вт.

    Принимает скаляры или массивы numpy. При достаточно сильном торможении
    результат отрицателен.

    Raises:
        NegativeSpeed: Если хотя бы одна скорость отрицательна.
    """
    if np.any(np.asarray(v) < 0):
        raise NegativeSpeed("Отрицательная скорость в мгновенной мощности")
    force = (
        p.mass_factor * p.mass * a
        + p.mass * p.gravity * p.rolling_coeff
        + 0.5 * p.air_density * p.drag_coeff * p.frontal_area * v * v
    )
    return force * v
