"""Тесты перевода единиц и производных параметров автомобиля."""

from __future__ import annotations

import pytest

from app.models.params import VehicleParams
from app.services.units import (
    base_speed,
    drivetrain_efficiency,
    j_to_kwh,
    kwh_to_j,
    m_to_miles,
    miles_to_m,
    mph_per_s_to_mps2,
    mph_to_mps,
    mps_to_mph,
)


@pytest.mark.parametrize(
    ("mph", "mps"),
    [(0.0, 0.0), (75.0, 33.528), (49.6, 22.173184)],
)
def test_mph_to_mps(mph: float, mps: float) -> None:
    assert mph_to_mps(mph) == pytest.approx(mps, abs=1e-9)


def test_conversions_are_inverse() -> None:
    assert mps_to_mph(mph_to_mps(49.6)) == pytest.approx(49.6)
    assert m_to_miles(miles_to_m(5.0)) == pytest.approx(5.0)
    assert j_to_kwh(kwh_to_j(0.9366)) == pytest.approx(0.9366)
    assert miles_to_m(1.0) == 1609.344
    assert mph_per_s_to_mps2(8.0) == pytest.approx(3.57632)


def test_base_speed_table1() -> None:
    p = VehicleParams()
    assert base_speed(p, mph_to_mps(75)) == pytest.approx(mph_to_mps(18.75))
    assert base_speed(p, 33.528) == pytest.approx(8.382)


def test_base_speed_identity_ratio() -> None:
    assert base_speed(VehicleParams(speed_ratio=1), 30.0) == 30.0


@pytest.mark.parametrize(
    ("effs", "expected"),
    [((1, 1, 1), 1.0), ((0.85, 0.95, 0.90), 0.72675), ((0.5, 1, 1), 0.5)],
)
def test_drivetrain_efficiency(effs: tuple[float, float, float], expected: float) -> None:
    motor, inverter, gearbox = effs
    p = VehicleParams(motor_eff=motor, inverter_eff=inverter, gearbox_eff=gearbox)
    assert drivetrain_efficiency(p) == pytest.approx(expected)


@pytest.mark.parametrize(
    "field",
    [{"mass": 0}, {"motor_eff": 1.2}, {"regen_eff": -0.1}, {"speed_ratio": 0.5}, {"unknown": 1}],
)
def test_vehicle_params_rejects_invalid(field: dict[str, float]) -> None:
    with pytest.raises(ValueError):
        VehicleParams(**field)
