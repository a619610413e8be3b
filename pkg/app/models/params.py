"""Модели параметров автомобиля и дорожного сценария.

Значения по умолчанию ``VehicleParams`` соответствуют справочному
электромобилю из набора данных для тестовых сценариев. Все поля в СИ.
"""

from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict, Field, model_validator

# Допуск на сравнение сумм длин сегментов и ограничений скорости
_REL_TOL = 1e-9


class VehicleParams(BaseModel):
    """Физические и трансмиссионные константы автомобиля.

    Модель неизменяема после создания и валидируется pydantic.

    Attributes:
        mass: Масса M, кг.
        air_density: Плотность воздуха ρ_a, кг/м³.
        drag_coeff: Коэффициент аэродинамического сопротивления C_d.
        frontal_area: Лобовая площадь A_f, м².
        rolling_coeff: Коэффициент сопротивления качению f_r.
        wheel_radius: Радиус колеса r_d, м. Хранится, в формулах не участвует.
        wind_speed: Скорость ветра V_w, м/с. Хранится, в формулах не участвует.
        mass_factor: Коэффициент учёта вращающихся масс δ.
        final_drive_ratio: Передаточное число главной передачи i_0. Не используется.
        transmission_ratio: Передаточное число коробки i_g. Не используется.
        speed_ratio: Отношение максимальной скорости к базовой x.
        motor_eff: КПД тягового двигателя η_m.
        inverter_eff: КПД инвертора η_i.
        gearbox_eff: КПД редуктора и главной передачи η_t.
        regen_eff: Общий КПД рекуперации η_r.
        gravity: Ускорение свободного падения g, м/с².

    Example:
        >>> VehicleParams().mass
        2000.0
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    mass: float = Field(2000.0, gt=0)
    air_density: float = Field(1.22, ge=0)
    drag_coeff: float = Field(0.3, ge=0)
    frontal_area: float = Field(1.6, gt=0)
    rolling_coeff: float = Field(0.01, ge=0)
    wheel_radius: float = Field(0.28, gt=0)
    wind_speed: float = Field(0.0, ge=0)
    mass_factor: float = Field(1.04, ge=1)
    final_drive_ratio: float = Field(4.18, gt=0)
    transmission_ratio: float = Field(1.3, gt=0)
    speed_ratio: float = Field(4.0, ge=1)
    motor_eff: float = Field(0.85, gt=0, le=1)
    inverter_eff: float = Field(0.95, gt=0, le=1)
    gearbox_eff: float = Field(0.90, gt=0, le=1)
    regen_eff: float = Field(0.50, ge=0, le=1)
    gravity: float = Field(9.81, gt=0)


class Segment(BaseModel):
    """Участок дороги с собственным ограничением скорости.

    Attributes:
        length: Длина участка, м.
        speed_limit: Ограничение скорости, м/с.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    length: float = Field(gt=0)
    speed_limit: float = Field(gt=0)


class Scenario(BaseModel):
    """Описание маршрута и ограничений поездки.

    Attributes:
        total_distance: Общая длина маршрута S, м.
        max_time: Предельное время поездки T_max, с.
        max_accel: Предельное ускорение a_max, м/с².
        max_speed: Предельная крейсерская скорость V_max, м/с.
        segments: Упорядоченные участки дороги; сумма длин равна S.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    total_distance: float = Field(gt=0)
    max_time: float = Field(gt=0)
    max_accel: float = Field(gt=0)
    max_speed: float = Field(gt=0)
    segments: tuple[Segment, ...] = Field(min_length=1)

    @model_validator(mode="after")
    def _check_segments(self) -> Scenario:
        """Проверяет сумму длин участков и их ограничения скорости."""
        total = math.fsum(s.length for s in self.segments)
        if not math.isclose(total, self.total_distance, rel_tol=_REL_TOL):
            raise ValueError(
                f"Сумма длин участков {total} м не равна total_distance "
                f"{self.total_distance} м"
            )
        limit = self.max_speed * (1 + _REL_TOL)
        for idx, seg in enumerate(self.segments):
            if seg.speed_limit > limit:
                raise ValueError(
                    f"Ограничение участка {idx} ({seg.speed_limit} м/с) "
                    f"превышает max_speed ({self.max_speed} м/с)"
                )
        return self

    @classmethod
    def single_segment(
        cls,
        *,
        total_distance: float,
        max_time: float,
        max_accel: float,
        max_speed: float,
    ) -> Scenario:
        """Создаёт сценарий из одного участка с ограничением V_max."""
        return cls(
            total_distance=total_distance,
            max_time=max_time,
            max_accel=max_accel,
            max_speed=max_speed,
            segments=(Segment(length=total_distance, speed_limit=max_speed),),
        )
