"""Модуль конфигурации приложения.

Содержит настройки запуска, загружаемые из переменных окружения или .env
файла, и загрузчик файла параметров автомобиля и сценария.

Файл параметров: плоский текст ``ключ = значение`` с комментариями ``#``.
Единицы в файле: кг, м, м², mph, mph/s, мили, секунды, проценты для КПД.
Участки дороги задаются строкой ``segments = 2:75, 1:25, 2:75`` (мили:mph).
Отсутствующие ключи берутся из справочных значений.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from app.data.scenarios import (
    MAX_ACCEL_MPH_S,
    MAX_SPEED_MPH,
    MAX_TIME_S,
    ROUTE_MILES,
    case1_scenario,
    case2_scenario,
)
from app.errors import ConfigError
from app.models.cycle import CaseId
from app.models.params import Scenario, Segment, VehicleParams
from app.services.energy import EfficiencyModel
from app.services.units import m_to_miles, miles_to_m, mph_per_s_to_mps2, mph_to_mps, mps_to_mph

_DEFAULTS = VehicleParams()


class Settings(BaseSettings):
    """Настройки запуска, загружаемые из переменных окружения.

    Переменные читаются с префиксом ``ECODRIVE_`` из окружения или файла
    .env. Флаги командной строки имеют приоритет над настройками.

    Attributes:
        config_path: Файл параметров автомобиля и сценария по умолчанию.
        out_dir: Каталог для CSV-результатов.
        efficiency_model: Модель учёта КПД (wheel-net или split-path).
        log_level: Уровень логирования в stderr.
        log_file: Файл лога; пустая строка отключает запись в файл.
        workers: Число процессов для серий запусков.

    Example:
        >>> from app.config import settings
        >>> print(settings.out_dir)
        out
    """

    model_config = SettingsConfigDict(
        env_prefix="ECODRIVE_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    config_path: Path | None = None
    out_dir: Path = Path("out")
    efficiency_model: EfficiencyModel = EfficiencyModel.WHEEL_NET
    log_level: str = "INFO"
    log_file: str = "ecodrive.log"
    workers: int = Field(1, ge=1)


class ConfigFile(BaseModel):
    """Содержимое файла параметров в единицах файла.

    Имена полей совпадают с ``VehicleParams`` и ``Scenario``; КПД заданы в
    процентах, скорости в mph, ускорение в mph/s, длины в милях.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    mass: float = _DEFAULTS.mass
    air_density: float = _DEFAULTS.air_density
    drag_coeff: float = _DEFAULTS.drag_coeff
    frontal_area: float = _DEFAULTS.frontal_area
    rolling_coeff: float = _DEFAULTS.rolling_coeff
    wheel_radius: float = _DEFAULTS.wheel_radius
    wind_speed: float = 0.0
    mass_factor: float = _DEFAULTS.mass_factor
    final_drive_ratio: float = _DEFAULTS.final_drive_ratio
    transmission_ratio: float = _DEFAULTS.transmission_ratio
    speed_ratio: float = _DEFAULTS.speed_ratio
    motor_eff: float = _DEFAULTS.motor_eff * 100
    inverter_eff: float = _DEFAULTS.inverter_eff * 100
    gearbox_eff: float = _DEFAULTS.gearbox_eff * 100
    regen_eff: float = _DEFAULTS.regen_eff * 100
    gravity: float = _DEFAULTS.gravity

    total_distance: float | None = None
    max_time: float | None = None
    max_accel: float | None = None
    max_speed: float | None = None
    segments: tuple[tuple[float, float], ...] | None = None

    @field_validator("segments", mode="before")
    @classmethod
    def _parse_segments(cls, raw: object) -> object:
        """Разбирает строку ``мили:mph, мили:mph`` в пары чисел."""
        if not isinstance(raw, str):
            return raw
        pairs = []
        for item in raw.split(","):
            length, sep, limit = item.strip().partition(":")
            if not sep:
                raise ValueError(f"Участок {item.strip()!r} должен иметь вид мили:mph")
            pairs.append((float(length), float(limit)))
        return tuple(pairs)

    @property
    def has_scenario(self) -> bool:
        return any(
            v is not None
            for v in (self.total_distance, self.max_time, self.max_accel, self.max_speed, self.segments)
        )

    def vehicle(self) -> VehicleParams:
        """Параметры автомобиля в СИ."""
        return VehicleParams(
            mass=self.mass,
            air_density=self.air_density,
            drag_coeff=self.drag_coeff,
            frontal_area=self.frontal_area,
            rolling_coeff=self.rolling_coeff,
            wheel_radius=self.wheel_radius,
            wind_speed=mph_to_mps(self.wind_speed),
            mass_factor=self.mass_factor,
            final_drive_ratio=self.final_drive_ratio,
            transmission_ratio=self.transmission_ratio,
            speed_ratio=self.speed_ratio,
            motor_eff=self.motor_eff / 100,
            inverter_eff=self.inverter_eff / 100,
            gearbox_eff=self.gearbox_eff / 100,
            regen_eff=self.regen_eff / 100,
            gravity=self.gravity,
        )

    def scenario(self, case: CaseId) -> Scenario:
        """Сценарий в СИ для указанного случая.

        Если ключи сценария не заданы, возвращается справочный сценарий.
        Без ``segments`` Case I получает один участок с ограничением
        V_max, а Case II справочную разбивку 2/1/2 мили.
        """
        if not self.has_scenario:
            return case1_scenario() if case is CaseId.CASE1 else case2_scenario()
        max_speed = self.max_speed if self.max_speed is not None else MAX_SPEED_MPH
        segments = self.segments
        if segments is None:
            if case is CaseId.CASE1:
                distance = self.total_distance if self.total_distance is not None else ROUTE_MILES
                segments = ((distance, max_speed),)
            else:
                segments = tuple(
                    (m_to_miles(s.length), mps_to_mph(s.speed_limit))
                    for s in case2_scenario().segments
                )
        distance = sum(length for length, _ in segments)
        if self.total_distance is not None and abs(distance - self.total_distance) > 1e-9 * distance:
            raise ValueError(
                f"Сумма участков {distance} миль не равна total_distance {self.total_distance}"
            )
        return Scenario(
            total_distance=miles_to_m(distance),
            max_time=self.max_time if self.max_time is not None else MAX_TIME_S,
            max_accel=mph_per_s_to_mps2(
                self.max_accel if self.max_accel is not None else MAX_ACCEL_MPH_S
            ),
            max_speed=mph_to_mps(max_speed),
            segments=tuple(
                Segment(length=miles_to_m(length), speed_limit=mph_to_mps(limit))
                for length, limit in segments
            ),
        )


@dataclass(frozen=True)
class LoadedConfig:
    """Загруженный файл параметров.

    Attributes:
        path: Путь к файлу (None для справочных значений).
        file: Разобранное содержимое в единицах файла.
    """

    path: Path | None
    file: ConfigFile

    def vehicle(self) -> VehicleParams:
        return self.file.vehicle()

    def scenario(self, case: CaseId) -> Scenario:
        """Сценарий для случая; ошибки валидации переводятся в ConfigError."""
        try:
            return self.file.scenario(case)
        except (ValidationError, ValueError) as exc:
            raise ConfigError(f"{self.path}: некорректный сценарий: {exc}") from exc


def load_config_file(path: Path | None) -> LoadedConfig:
    """Загружает файл параметров автомобиля и сценария.

    Args:
        path: Путь к файлу; None означает справочные значения.

    Returns:
        Разобранная конфигурация.

    Raises:
        ConfigError: Если файл не найден, содержит неизвестные ключи или
            некорректные значения.

    Example:
        >>> cfg = load_config_file(Path("configs/table1.conf"))  # doctest: +SKIP
        >>> cfg.vehicle().regen_eff  # doctest: +SKIP
        0.5
    """
    if path is None:
        return LoadedConfig(None, ConfigFile())
    if not path.is_file():
        raise ConfigError(f"Файл параметров не найден: {path}")
    raw = dotenv_values(path)
    empty = sorted(key for key, value in raw.items() if value is None or value == "")
    if empty:
        raise ConfigError(f"{path}: пустые значения для ключей {', '.join(empty)}")
    try:
        parsed = ConfigFile.model_validate(raw)
        parsed.vehicle()
    except ValidationError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return LoadedConfig(path, parsed)


# Глобальный экземпляр настроек
settings = Settings()
