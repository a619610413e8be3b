"""Скрипт проверки постоянного смещения энергии Case I относительно целевых значений.

Пересчитывает оптимальные строки Case I при g ∈ {9.8, 9.81} м/с² и длине
мили ∈ {1600, 1609.344} м и печатает отклонение от целевого E_min.
"""

from __future__ import annotations

import itertools
import sys
from pathlib import Path

import pandas as pd

# Добавляем корень проекта в sys.path
PROJECT_ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(PROJECT_ROOT))

from app.data.scenarios import (  # noqa: E402
    BENCHMARK_TARGETS,
    MAX_ACCEL_MPH_S,
    MAX_SPEED_MPH,
    MAX_TIME_S,
    ROUTE_MILES,
    TABLE1_VEHICLE,
)
from app.models.cycle import CaseId, CaseIParams, Infeasible  # noqa: E402
from app.models.params import Scenario  # noqa: E402
from app.services.cycles import build_case1  # noqa: E402
from app.services.energy import cycle_energy  # noqa: E402
from app.services.units import MILE_TO_M, mph_per_s_to_mps2, mph_to_mps  # noqa: E402

GRAVITY_VALUES = (9.8, 9.81)
MILE_VALUES = (1600.0, MILE_TO_M)


def calibrate() -> pd.DataFrame:
    """Энергия строк Case I для всех сочетаний g и длины мили."""
    rows = []
    targets = [t for t in BENCHMARK_TARGETS if t.case is CaseId.CASE1]
    for g, mile in itertools.product(GRAVITY_VALUES, MILE_VALUES):
        vehicle = TABLE1_VEHICLE.model_copy(update={"gravity": g})
        scenario = Scenario.single_segment(
            total_distance=ROUTE_MILES * mile,
            max_time=MAX_TIME_S,
            max_accel=mph_per_s_to_mps2(MAX_ACCEL_MPH_S),
            max_speed=mph_to_mps(MAX_SPEED_MPH),
        )
        for target in targets:
            alpha, beta, v = target.params_mph
            cycle = build_case1(
                scenario,
                CaseIParams(mph_per_s_to_mps2(alpha), mph_per_s_to_mps2(beta), mph_to_mps(v)),
            )
            energy = (
                float("nan")
                if isinstance(cycle, Infeasible)
                else cycle_energy(vehicle, cycle).battery_total_kwh
            )
            rows.append(
                {
                    "algo": target.algo,
                    "gravity": g,
                    "mile_m": mile,
                    "energy_kwh": energy,
                    "target_kwh": target.e_min,
                    "offset": energy / target.e_min - 1,
                }
            )
    return pd.DataFrame(rows)


if __name__ == "__main__":
    print(calibrate().to_string(index=False, float_format="{:.4f}".format))
