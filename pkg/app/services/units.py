"""Единицы измерения и производные характеристики автомобиля.

Все внутренние вычисления ведутся в СИ (м, с, кг, Вт, Дж). Мили, mph и кВт·ч
появляются только на границах ввода-вывода.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from app.models.params import VehicleParams

MPH_TO_MPS = 0.44704
MILE_TO_M = 1609.344
KWH_TO_J = 3.6e6


def mph_to_mps(v: float) -> float:
    """Переводит скорость из миль в час в м/с.

    Example:
        >>> mph_to_mps(75)
        33.528
    """
    return v * MPH_TO_MPS


def mps_to_mph(v: float) -> float:
    """Переводит скорость из м/с в мили в час."""
    return v / MPH_TO_MPS


def mph_per_s_to_mps2(a: float) -> float:
    """Переводит ускорение из mph/s в м/с²."""
    return a * MPH_TO_MPS


def mps2_to_mph_per_s(a: float) -> float:
    """Переводит ускорение из м/с² в mph/s."""
    return a / MPH_TO_MPS


def miles_to_m(d: float) -> float:
    """Переводит расстояние из миль в метры."""
    return d * MILE_TO_M


def m_to_miles(d: float) -> float:
    """Переводит расстояние из метров в мили."""
    return d / MILE_TO_M


def j_to_kwh(e: float) -> float:
    """Переводит энергию из джоулей в кВт·ч."""
    return e / KWH_TO_J


def kwh_to_j(e: float) -> float:
    """Переводит энергию из кВт·ч в джоули."""
    return e * KWH_TO_J


def base_speed(p: VehicleParams, v_max: float) -> float:
    """Базовая скорость тягового привода V_b = V_max / x.

    Ниже базовой скорости привод работает с постоянным моментом,
    выше неё с постоянной мощностью.

    Args:
        p: Параметры автомобиля (используется передаточное отношение скоростей x).
        v_max: Максимальная крейсерская скорость, м/с.

    Returns:
        Базовая скорость в тех же единицах, что и ``v_max``.

    Example:
        >>> base_speed(VehicleParams(), 33.528)  # doctest: +SKIP
        8.382
    """
    return v_max / p.speed_ratio


def drivetrain_efficiency(p: VehicleParams) -> float:
    """КПД трансмиссии от батареи до колёс: η_m · η_i · η_t."""
    return p.motor_eff * p.inverter_eff * p.gearbox_eff
