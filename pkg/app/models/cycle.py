"""Модели ездового цикла: фазы, цикл, параметры-кандидаты и недопустимость.

Фазы и цикл являются неизменяемыми dataclass-объектами: они создаются для каждого
кандидата в популяции, поэтому pydantic здесь не используется.
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

from app.errors import MalformedCycle, MalformedPhase
from app.models.params import Scenario
from app.services.units import mps2_to_mph_per_s, mps_to_mph

# Допуск на непрерывность скорости между фазами, м/с
_SPEED_TOL = 1e-9


class CaseId(StrEnum):
    """Тип сценария: простой цикл (I) или дорога с ограничением (II)."""

    CASE1 = "case1"
    CASE2 = "case2"


class RampKind(StrEnum):
    """Тип участка изменения скорости."""

    ACCELERATE = "accelerate"
    BRAKE = "brake"


class PhaseKind(StrEnum):
    """Тип фазы цикла."""

    ACCELERATE = "accelerate"
    BRAKE = "brake"
    CRUISE = "cruise"

    @property
    def ramp_kind(self) -> RampKind | None:
        """Тип разгона/торможения или None для крейсерской фазы."""
        if self is PhaseKind.CRUISE:
            return None
        return RampKind(self.value)


class InfeasibleReason(StrEnum):
    """Причина недопустимости параметров цикла."""

    ZERO_CRUISE_SPEED = "zero-cruise-speed"
    SPEED_LIMIT = "speed-limit"
    ACCEL_LIMIT = "accel-limit"
    RAMP_OVERSHOOT = "ramp-overshoot"
    SEGMENT_OVERSHOOT = "segment-overshoot"
    PROFILE_SHAPE_VIOLATED = "profile-shape-violated"
    TIME_EXCEEDED = "time-exceeded"
    UNSUPPORTED_SCENARIO = "unsupported-scenario"


class Violation(StrEnum):
    """Нарушенное ограничение задачи (дистанция, скорость, ускорение, время)."""

    DISTANCE = "distance"
    SPEED_LIMIT = "speed-limit"
    SEGMENT_LIMIT = "segment-limit"
    ACCEL_LIMIT = "accel-limit"
    TIME_LIMIT = "time-limit"


@dataclass(frozen=True, slots=True)
class Phase:
    """Одна фаза цикла: разгон, торможение или движение с постоянной скоростью.

    Длина разгона/торможения считается по кинематике равноускоренного
    движения: (v_start + v_end) / 2 × duration.

    Attributes:
        kind: Тип фазы.
        v_start: Скорость в начале фазы, м/с.
        v_end: Скорость в конце фазы, м/с.
        duration: Длительность, с.
        distance: Пройденный путь, м.
    """

    kind: PhaseKind
    v_start: float
    v_end: float
    duration: float
    distance: float

    def __post_init__(self) -> None:
        if not self.duration > 0:
            raise MalformedPhase(f"Длительность фазы {self.duration} с не положительна")
        if self.distance < 0:
            raise MalformedPhase(f"Отрицательная длина фазы {self.distance} м")
        if self.v_start < 0 or self.v_end < 0:
            raise MalformedPhase("Скорость фазы отрицательна")
        if self.kind is PhaseKind.CRUISE:
            if self.v_start != self.v_end:
                raise MalformedPhase("Крейсерская фаза с разными скоростями")
        elif self.kind is PhaseKind.ACCELERATE:
            if not self.v_end > self.v_start:
                raise MalformedPhase("Разгон без роста скорости")
        elif not self.v_end < self.v_start:
            raise MalformedPhase("Торможение без снижения скорости")

    @classmethod
    def ramp(cls, v_start: float, v_end: float, duration: float) -> Phase:
        """Создаёт фазу разгона или торможения по направлению изменения скорости."""
        kind = PhaseKind.ACCELERATE if v_end > v_start else PhaseKind.BRAKE
        return cls(kind, v_start, v_end, duration, 0.5 * (v_start + v_end) * duration)

    @classmethod
    def cruise(cls, v: float, duration: float) -> Phase:
        """Создаёт фазу движения с постоянной скоростью."""
        return cls(PhaseKind.CRUISE, v, v, duration, v * duration)

    @property
    def accel(self) -> float:
        """Постоянное ускорение фазы, м/с² (отрицательно при торможении)."""
        return (self.v_end - self.v_start) / self.duration

    @property
    def v_low(self) -> float:
        return min(self.v_start, self.v_end)

    @property
    def v_high(self) -> float:
        return max(self.v_start, self.v_end)

    def speed_at_offset(self, x: float) -> float:
        """Скорость после прохождения ``x`` метров от начала фазы."""
        if self.kind is PhaseKind.CRUISE:
            return self.v_start
        v2 = self.v_start**2 + 2.0 * self.accel * x
        return math.sqrt(max(v2, 0.0))


@dataclass(frozen=True, slots=True)
class DrivingCycle:
    """Упорядоченный набор фаз и сценарий, для которого он построен.

    Конструктор проверяет только непрерывность скорости между фазами.
    Нулевая скорость на концах отражается свойством ``is_closed``.

    Attributes:
        phases: Фазы в порядке следования.
        scenario: Сценарий поездки.
    """

    phases: tuple[Phase, ...]
    scenario: Scenario

    def __post_init__(self) -> None:
        if not self.phases:
            raise MalformedCycle("Цикл без фаз")
        for idx, (prev, nxt) in enumerate(zip(self.phases, self.phases[1:])):
            if abs(prev.v_end - nxt.v_start) > _SPEED_TOL:
                raise MalformedCycle(
                    f"Разрыв скорости между фазами {idx} и {idx + 1}: "
                    f"{prev.v_end} != {nxt.v_start}"
                )

    @property
    def total_time(self) -> float:
        return math.fsum(p.duration for p in self.phases)

    @property
    def total_distance(self) -> float:
        return math.fsum(p.distance for p in self.phases)

    @property
    def max_speed(self) -> float:
        return max(p.v_high for p in self.phases)

    @property
    def max_rate(self) -> float:
        """Наибольший модуль ускорения по всем фазам, м/с²."""
        return max(abs(p.accel) for p in self.phases)

    @property
    def is_closed(self) -> bool:
        """Цикл начинается и заканчивается остановкой."""
        return self.phases[0].v_start == 0 and self.phases[-1].v_end == 0


@dataclass(frozen=True, slots=True)
class CaseIParams:
    """Параметры простого цикла: разгон α, торможение β, скорость V (СИ)."""

    alpha: float
    beta: float
    v: float

    def __post_init__(self) -> None:
        _check_rates(self.alpha, self.beta)
        _check_speeds(self.v)

    def as_mph(self) -> dict[str, float]:
        """Значения в mph/s и mph для отчётов."""
        return {
            "alpha": mps2_to_mph_per_s(self.alpha),
            "beta": mps2_to_mph_per_s(self.beta),
            "v": mps_to_mph(self.v),
        }


@dataclass(frozen=True, slots=True)
class CaseIIParams:
    """Параметры цикла с ограничением скорости на среднем участке (СИ).

    Attributes:
        alpha1: Разгон с места до V_1.
        v1: Скорость на первом участке.
        beta1: Торможение с V_1 до V_2 перед участком с ограничением.
        v2: Скорость на участке с ограничением.
        alpha2: Разгон с V_2 до V_3 после участка с ограничением.
        v3: Скорость на последнем участке.
        beta2: Торможение с V_3 до остановки.
    """

    alpha1: float
    v1: float
    beta1: float
    v2: float
    alpha2: float
    v3: float
    beta2: float

    def __post_init__(self) -> None:
        _check_rates(self.alpha1, self.beta1, self.alpha2, self.beta2)
        _check_speeds(self.v1, self.v2, self.v3)

    def as_mph(self) -> dict[str, float]:
        """Значения в mph/s и mph для отчётов."""
        return {
            "alpha1": mps2_to_mph_per_s(self.alpha1),
            "v1": mps_to_mph(self.v1),
            "beta1": mps2_to_mph_per_s(self.beta1),
            "v2": mps_to_mph(self.v2),
            "alpha2": mps2_to_mph_per_s(self.alpha2),
            "v3": mps_to_mph(self.v3),
            "beta2": mps2_to_mph_per_s(self.beta2),
        }


CandidateParams = CaseIParams | CaseIIParams


@dataclass(frozen=True, slots=True)
class Infeasible:
    """Результат построения цикла для недопустимых параметров.

    Attributes:
        reason: Причина недопустимости.
        detail: Человекочитаемое пояснение.
        total_time: Расчётное время поездки, если оно было вычислено.
    """

    reason: InfeasibleReason
    detail: str = ""
    total_time: float | None = None


def _check_rates(*rates: float) -> None:
    if any(not r > 0 for r in rates):
        raise ValueError(f"Темпы разгона/торможения должны быть положительны: {rates}")


def _check_speeds(*speeds: float) -> None:
    if any(v < 0 for v in speeds):
        raise ValueError(f"Скорости не могут быть отрицательными: {speeds}")
