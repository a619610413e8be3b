"""Общие фикстуры тестов."""

from __future__ import annotations

import pytest

from app.data.scenarios import case1_scenario, case2_scenario
from app.models.cycle import CaseId, CaseIIParams, CaseIParams, DrivingCycle
from app.models.params import Scenario, VehicleParams
from app.services.cycles import build_case1, build_case2
from app.services.problem import EcoDrivingProblem
from app.services.units import mph_per_s_to_mps2, mph_to_mps


def case1_params(alpha: float, beta: float, v: float) -> CaseIParams:
    """Параметры Case I из mph/s и mph."""
    return CaseIParams(mph_per_s_to_mps2(alpha), mph_per_s_to_mps2(beta), mph_to_mps(v))


def case2_params(*values: float) -> CaseIIParams:
    """Параметры Case II из значений в порядке α1, V1, β1, V2, α2, V3, β2 (mph/s, mph)."""
    alpha1, v1, beta1, v2, alpha2, v3, beta2 = values
    return CaseIIParams(
        alpha1=mph_per_s_to_mps2(alpha1),
        v1=mph_to_mps(v1),
        beta1=mph_per_s_to_mps2(beta1),
        v2=mph_to_mps(v2),
        alpha2=mph_per_s_to_mps2(alpha2),
        v3=mph_to_mps(v3),
        beta2=mph_per_s_to_mps2(beta2),
    )


@pytest.fixture
def vehicle() -> VehicleParams:
    return VehicleParams()


@pytest.fixture
def scenario1() -> Scenario:
    return case1_scenario()


@pytest.fixture
def scenario2() -> Scenario:
    return case2_scenario()


@pytest.fixture
def optimum_cycle(scenario1: Scenario) -> DrivingCycle:
    """Оптимальный цикл Case I (8, 0.5, 49.6)."""
    cycle = build_case1(scenario1, case1_params(8, 0.5, 49.6))
    assert isinstance(cycle, DrivingCycle)
    return cycle


@pytest.fixture
def table3_cycle(scenario2: Scenario) -> DrivingCycle:
    """Цикл Case II по строке ГА (8, 75, 0.5, 25, 2, 75, 1)."""
    cycle = build_case2(scenario2, case2_params(8, 75, 0.5, 25, 2, 75, 1))
    assert isinstance(cycle, DrivingCycle)
    return cycle


@pytest.fixture
def problem1(vehicle: VehicleParams, scenario1: Scenario) -> EcoDrivingProblem:
    return EcoDrivingProblem(vehicle, scenario1, CaseId.CASE1)


@pytest.fixture
def problem2(vehicle: VehicleParams, scenario2: Scenario) -> EcoDrivingProblem:
    return EcoDrivingProblem(vehicle, scenario2, CaseId.CASE2)
