"""Построение ездовых циклов для двух сценариев и проверка ограничений.

Длительности и пути рамп считаются по кинематике равноускоренного движения,
длительности крейсерских фаз выводятся из ограничения на пройденный путь.
Недопустимые параметры возвращаются значением ``Infeasible``, а не исключением.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
import pandas as pd

from app.errors import NonPositiveStep
from app.models.cycle import (
    CaseIIParams,
    CaseIParams,
    DrivingCycle,
    Infeasible,
    InfeasibleReason,
    Phase,
    Violation,
)
from app.models.params import Scenario
from app.services.units import mps_to_mph

# Абсолютный допуск сравнения скоростей/ускорений и времени
_EPS = 1e-9
# Относительный допуск ограничения на пройденный путь
_DISTANCE_RTOL = 1e-6


def build_case1(sc: Scenario, c: CaseIParams) -> DrivingCycle | Infeasible:
    """Строит цикл «разгон, движение, торможение».

    Время крейсерского движения выводится из условия
    ½·t_a·V + t_c·V + ½·t_b·V = S.

    Args:
        sc: Сценарий поездки.
        c: Параметры α, β, V.

    Returns:
        Цикл из трёх фаз или ``Infeasible`` с причиной.

    Example:
        >>> build_case1(CASE1_SCENARIO, CaseIParams(3.57632, 0.22352, 22.173184))  # doctest: +SKIP
        DrivingCycle(phases=(...), ...)
    """
    if c.v == 0:
        return Infeasible(InfeasibleReason.ZERO_CRUISE_SPEED, "V = 0")
    limit = min(sc.max_speed, min(s.speed_limit for s in sc.segments))
    if c.v > limit + _EPS:
        return Infeasible(InfeasibleReason.SPEED_LIMIT, f"V={c.v:.4f} > {limit:.4f} м/с")
    if c.alpha > sc.max_accel + _EPS or c.beta > sc.max_accel + _EPS:
        return Infeasible(InfeasibleReason.ACCEL_LIMIT, "α или β больше a_max")

    t_a = c.v / c.alpha
    t_b = c.v / c.beta
    t_c = (sc.total_distance - 0.5 * (t_a + t_b) * c.v) / c.v
    if t_c < -_EPS:
        return Infeasible(
            InfeasibleReason.RAMP_OVERSHOOT,
            f"Разгон и торможение длиннее маршрута (t_c={t_c:.3f} с)",
        )
    total = t_a + max(t_c, 0.0) + t_b
    if total > sc.max_time + _EPS:
        return Infeasible(
            InfeasibleReason.TIME_EXCEEDED,
            f"T={total:.3f} с > T_max={sc.max_time} с",
            total_time=total,
        )

    phases = [Phase.ramp(0.0, c.v, t_a)]
    if t_c > _EPS:
        phases.append(Phase.cruise(c.v, t_c))
    phases.append(Phase.ramp(c.v, 0.0, t_b))
    return DrivingCycle(tuple(phases), sc)


def build_case2(sc: Scenario, c: CaseIIParams) -> DrivingCycle | Infeasible:
    """Строит семифазный цикл для дороги из трёх участков.

    Торможение V_1 → V_2 заканчивается ровно на входе в участок с
    ограничением, разгон V_2 → V_3 начинается ровно на выходе из него, так что
    весь средний участок проходится со скоростью V_2. Вырожденные фазы
    нулевой длительности (например, при V_1 = V_2) опускаются.

    Args:
        sc: Сценарий с тремя участками.
        c: Параметры α_1, V_1, β_1, V_2, α_2, V_3, β_2.

    Returns:
        Цикл или ``Infeasible`` с причиной.
    """
    if len(sc.segments) != 3:
        return Infeasible(
            InfeasibleReason.UNSUPPORTED_SCENARIO,
            f"Нужно 3 участка, получено {len(sc.segments)}",
        )
    first, middle, last = sc.segments
    if c.v2 == 0:
        return Infeasible(InfeasibleReason.ZERO_CRUISE_SPEED, "V_2 = 0")
    if c.v1 < c.v2 or c.v3 < c.v2:
        return Infeasible(
            InfeasibleReason.PROFILE_SHAPE_VIOLATED, "V_1 и V_3 должны быть не ниже V_2"
        )
    for v, seg in ((c.v1, first), (c.v2, middle), (c.v3, last)):
        if v > min(seg.speed_limit, sc.max_speed) + _EPS:
            return Infeasible(
                InfeasibleReason.SPEED_LIMIT,
                f"Скорость {v:.4f} выше ограничения {seg.speed_limit:.4f} м/с",
            )
    if max(c.alpha1, c.beta1, c.alpha2, c.beta2) > sc.max_accel + _EPS:
        return Infeasible(InfeasibleReason.ACCEL_LIMIT, "Темп выше a_max")

    t1 = c.v1 / c.alpha1
    t3 = (c.v1 - c.v2) / c.beta1
    d_ramps_first = 0.5 * c.v1 * t1 + 0.5 * (c.v1 + c.v2) * t3
    t2 = (first.length - d_ramps_first) / c.v1

    t4 = middle.length / c.v2

    t5 = (c.v3 - c.v2) / c.alpha2
    t7 = c.v3 / c.beta2
    d_ramps_last = 0.5 * (c.v2 + c.v3) * t5 + 0.5 * c.v3 * t7
    t6 = (last.length - d_ramps_last) / c.v3

    if t2 < -_EPS or t6 < -_EPS:
        return Infeasible(
            InfeasibleReason.SEGMENT_OVERSHOOT,
            f"Рампы не помещаются в участки (t_2={t2:.3f} с, t_6={t6:.3f} с)",
        )
    t2, t6 = max(t2, 0.0), max(t6, 0.0)
    total = t1 + t2 + t3 + t4 + t5 + t6 + t7
    if total > sc.max_time + _EPS:
        return Infeasible(
            InfeasibleReason.TIME_EXCEEDED,
            f"T={total:.3f} с > T_max={sc.max_time} с",
            total_time=total,
        )

    phases = [Phase.ramp(0.0, c.v1, t1)]
    if t2 > _EPS:
        phases.append(Phase.cruise(c.v1, t2))
    if t3 > 0:
        phases.append(Phase.ramp(c.v1, c.v2, t3))
    phases.append(Phase.cruise(c.v2, t4))
    if t5 > 0:
        phases.append(Phase.ramp(c.v2, c.v3, t5))
    if t6 > _EPS:
        phases.append(Phase.cruise(c.v3, t6))
    phases.append(Phase.ramp(c.v3, 0.0, t7))
    return DrivingCycle(tuple(phases), sc)


def check_constraints(cy: DrivingCycle, sc: Scenario) -> list[Violation]:
    """Проверяет ограничения по пути, скорости, ускорению и времени.

    Ограничения участков проверяются по положению на маршруте: на рампе
    скорость монотонна, поэтому максимум на пересечении фазы и участка
    достигается на одной из его границ.

    Returns:
        Пустой список, если все ограничения выполнены.
    """
    violations: list[Violation] = []
    if not math.isclose(cy.total_distance, sc.total_distance, rel_tol=_DISTANCE_RTOL):
        violations.append(Violation.DISTANCE)
    if cy.max_speed > sc.max_speed + _EPS:
        violations.append(Violation.SPEED_LIMIT)
    if _exceeds_segment_limits(cy, sc):
        violations.append(Violation.SEGMENT_LIMIT)
    if cy.max_rate > sc.max_accel + _EPS:
        violations.append(Violation.ACCEL_LIMIT)
    if cy.total_time > sc.max_time + _EPS:
        violations.append(Violation.TIME_LIMIT)
    return violations


def _exceeds_segment_limits(cy: DrivingCycle, sc: Scenario) -> bool:
    # Относительный допуск на положение границ: суммы путей накапливают ошибку
    pos_tol = _DISTANCE_RTOL * sc.total_distance
    seg_start = 0.0
    for seg in sc.segments:
        seg_end = seg_start + seg.length
        if seg.speed_limit >= sc.max_speed:
            # покрывается общим ограничением V_max
            seg_start = seg_end
            continue
        phase_start = 0.0
        for phase in cy.phases:
            phase_end = phase_start + phase.distance
            lo = max(seg_start + pos_tol, phase_start)
            hi = min(seg_end - pos_tol, phase_end)
            if lo <= hi:
                v = max(
                    phase.speed_at_offset(lo - phase_start),
                    phase.speed_at_offset(hi - phase_start),
                )
                if v > seg.speed_limit + 1e-6:
                    return True
            phase_start = phase_end
        seg_start = seg_end
    return False


@dataclass(frozen=True)
class SpeedProfile:
    """Дискретизированный профиль скорости.

    Attributes:
        t: Моменты времени, с.
        v: Скорости, м/с.
    """

    t: npt.NDArray[np.float64]
    v: npt.NDArray[np.float64]

    def __len__(self) -> int:
        return len(self.t)

    def to_frame(self) -> pd.DataFrame:
        """Таблица для CSV с колонками ``t_s`` и ``v_mph``."""
        return pd.DataFrame({"t_s": self.t, "v_mph": mps_to_mph(self.v)})


def sample_profile(cy: DrivingCycle, dt: float) -> SpeedProfile:
    """Дискретизирует кусочно-линейный профиль скорости с шагом ``dt``.

    Оба конца цикла всегда входят в выборку.

    Raises:
        NonPositiveStep: Если dt <= 0.
    """
    if not dt > 0:
        raise NonPositiveStep(f"Шаг {dt} с не положителен")
    knots_t = np.concatenate(([0.0], np.cumsum([p.duration for p in cy.phases])))
    knots_v = np.array([cy.phases[0].v_start] + [p.v_end for p in cy.phases])
    total = float(knots_t[-1])
    t = np.arange(0.0, total, dt)
    if total - t[-1] <= dt * 1e-9:
        t[-1] = total
    else:
        t = np.append(t, total)
    return SpeedProfile(t=t, v=np.interp(t, knots_t, knots_v))
