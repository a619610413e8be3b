"""Подсчёт энергии цикла, функция приспособленности и численный эталон.

Энергия на колёсах считается по фазам (мощность × длительность), затем
переводится в энергию батареи с учётом КПД трансмиссии и рекуперации.
Численный эталон интегрирует мгновенную мощность методом трапеций.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        def __str__(self) -> str:
            return str(self.value)

        def __format__(self, format_spec: str) -> str:
            return format(str(self.value), format_spec)

import numpy as np
import pandas as pd

from app.errors import NonPositiveStep
from app.models.cycle import DrivingCycle, PhaseKind
from app.models.params import VehicleParams
from app.services.power import cruise_power, instantaneous_power, ramp_power
from app.services.units import base_speed, drivetrain_efficiency, j_to_kwh


class EfficiencyModel(StrEnum):
    """Порядок учёта КПД трансмиссии и рекуперации.

    WHEEL_NET: E = (Σ тяга − η_r·Σ торможение) / η_drive.
    SPLIT_PATH: E = Σ тяга / η_drive − η_r·Σ торможение.
    """

    WHEEL_NET = "wheel-net"
    SPLIT_PATH = "split-path"


@dataclass(frozen=True, slots=True)
class EnergyBreakdown:
    """Разбивка энергии цикла.

    Attributes:
        phase_kinds: Типы фаз.
        phase_durations: Длительности фаз, с.
        phase_energies: Энергия фаз на колёсах, Дж (торможение со знаком минус).
        traction_total: Суммарная тяговая энергия на колёсах, Дж.
        regen_total: Рекуперированная энергия η_r·Σ|торможение|, Дж.
        battery_total: Энергия, взятая из батареи, Дж.
        model: Использованная модель КПД.
    """

    phase_kinds: tuple[PhaseKind, ...]
    phase_durations: tuple[float, ...]
    phase_energies: tuple[float, ...]
    traction_total: float
    regen_total: float
    battery_total: float
    model: EfficiencyModel

    @property
    def battery_total_kwh(self) -> float:
        return j_to_kwh(self.battery_total)

    def to_frame(self) -> pd.DataFrame:
        """Таблица для CSV: по строке на фазу и итоговая строка ``battery_total_kwh``."""
        rows = [
            {
                "phase_idx": str(idx),
                "kind": kind.value,
                "duration_s": duration,
                "wheel_energy_j": energy,
            }
            for idx, (kind, duration, energy) in enumerate(
                zip(self.phase_kinds, self.phase_durations, self.phase_energies)
            )
        ]
        rows.append(
            {
                "phase_idx": "battery_total_kwh",
                "kind": "",
                "duration_s": None,
                "wheel_energy_j": self.battery_total_kwh,
            }
        )
        return pd.DataFrame(rows, columns=["phase_idx", "kind", "duration_s", "wheel_energy_j"])


def battery_energy(
    traction: float,
    regen: float,
    eta_drive: float,
    model: EfficiencyModel,
) -> float:
    """Энергия батареи по тяговой и рекуперированной энергии на колёсах, Дж."""
    if model is EfficiencyModel.WHEEL_NET:
        return (traction - regen) / eta_drive
    return traction / eta_drive - regen


def cycle_energy(
    p: VehicleParams,
    cy: DrivingCycle,
    m: EfficiencyModel = EfficiencyModel.WHEEL_NET,
) -> EnergyBreakdown:
    """Энергия цикла по аналитическим формулам средней мощности фаз.

    Рекуперация засчитывается от полной мощности торможения (кинетическая
    часть и сопротивления).

    Args:
        p: Параметры автомобиля.
        cy: Ездовой цикл.
        m: Модель учёта КПД.

    Returns:
        Разбивка энергии.

    Example:
        >>> cycle_energy(VehicleParams(), cycle).battery_total_kwh  # doctest: +SKIP
        0.9366...
    """
    v_b = base_speed(p, cy.scenario.max_speed)
    energies: list[float] = []
    traction: list[float] = []
    braking: list[float] = []
    for phase in cy.phases:
        if phase.kind is PhaseKind.CRUISE:
            e = cruise_power(p, phase.v_start) * phase.duration
        else:
            e = ramp_power(
                p, v_b, phase.v_low, phase.v_high, phase.duration, phase.kind.ramp_kind
            ) * phase.duration
        if phase.kind is PhaseKind.BRAKE:
            braking.append(e)
            energies.append(-e)
        else:
            traction.append(e)
            energies.append(e)
    return _breakdown(p, cy, m, energies, math.fsum(traction), math.fsum(braking))


def fitness(e_kwh: float, feasible: bool) -> float:
    """Приспособленность F = 1 / (1 + E), E в кВт·ч; 0 для недопустимых."""
    if not feasible:
        return 0.0
    return 1.0 / (1.0 + e_kwh)


def numerical_energy(
    p: VehicleParams,
    cy: DrivingCycle,
    m: EfficiencyModel = EfficiencyModel.WHEEL_NET,
    dt: float = 0.01,
) -> EnergyBreakdown:
    """Энергия цикла численным интегрированием мгновенной мощности.

    Профиль скорости внутри фазы линеен по времени. Положительная мощность
    накапливается как тяга, отрицательная как энергия для рекуперации.
    Поправка на базовую скорость не моделируется.

    Raises:
        NonPositiveStep: Если dt <= 0.
    """
    if not dt > 0:
        raise NonPositiveStep(f"Шаг {dt} с не положителен")
    energies: list[float] = []
    traction = 0.0
    braking = 0.0
    for phase in cy.phases:
        n = max(1, math.ceil(phase.duration / dt))
        t = np.linspace(0.0, phase.duration, n + 1)
        a = phase.accel
        power = instantaneous_power(p, phase.v_start + a * t, a)
        energies.append(float(np.trapezoid(power, t)))
        traction += float(np.trapezoid(np.clip(power, 0.0, None), t))
        braking += float(np.trapezoid(np.clip(-power, 0.0, None), t))
    return _breakdown(p, cy, m, energies, traction, braking)


def energy_discrepancy(closed_form: EnergyBreakdown, numerical: EnergyBreakdown) -> float:
    """Относительное расхождение численного результата с аналитическим."""
    return (numerical.battery_total - closed_form.battery_total) / closed_form.battery_total


def _breakdown(
    p: VehicleParams,
    cy: DrivingCycle,
    m: EfficiencyModel,
    energies: list[float],
    traction: float,
    braking: float,
) -> EnergyBreakdown:
    regen = p.regen_eff * braking
    return EnergyBreakdown(
        phase_kinds=tuple(ph.kind for ph in cy.phases),
        phase_durations=tuple(ph.duration for ph in cy.phases),
        phase_energies=tuple(energies),
        traction_total=traction,
        regen_total=regen,
        battery_total=battery_energy(traction, regen, drivetrain_efficiency(p), m),
        model=m,
    )
