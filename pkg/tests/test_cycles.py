"""Тесты построения циклов, проверки ограничений и дискретизации профиля."""

from __future__ import annotations

import numpy as np
import pytest

from app.errors import MalformedCycle, MalformedPhase, NonPositiveStep
from app.models.cycle import (
    CaseIParams,
    DrivingCycle,
    Infeasible,
    InfeasibleReason,
    Phase,
    PhaseKind,
    Violation,
)
from app.models.params import Scenario
from app.services.cycles import build_case1, build_case2, check_constraints, sample_profile
from app.services.encoding import CASE1_LAYOUT, decode, enumerate_all, random_chromosome
from app.services.units import mph_to_mps, mps_to_mph
from tests.conftest import case1_params, case2_params


class TestBuildCase1:
    def test_optimum_kinematics(self, optimum_cycle: DrivingCycle) -> None:
        accel, cruise, brake = optimum_cycle.phases
        assert accel.duration == pytest.approx(6.2)
        assert brake.duration == pytest.approx(99.2)
        assert cruise.duration == pytest.approx(310.2, abs=0.05)
        assert 415.3 <= optimum_cycle.total_time <= 415.9
        assert optimum_cycle.is_closed

    def test_feasibility_edge(self, scenario1: Scenario) -> None:
        result = build_case1(scenario1, case1_params(8, 0.5, 48.8))
        assert isinstance(result, Infeasible)
        assert result.reason is InfeasibleReason.TIME_EXCEEDED
        assert 420.5 <= result.total_time <= 421.0

    def test_zero_speed(self, scenario1: Scenario) -> None:
        result = build_case1(scenario1, CaseIParams(1.0, 1.0, 0.0))
        assert isinstance(result, Infeasible)
        assert result.reason is InfeasibleReason.ZERO_CRUISE_SPEED

    def test_speed_above_limit(self, scenario1: Scenario) -> None:
        result = build_case1(scenario1, case1_params(8, 8, 80))
        assert result.reason is InfeasibleReason.SPEED_LIMIT

    def test_rate_above_limit(self, scenario1: Scenario) -> None:
        result = build_case1(scenario1, case1_params(9, 0.5, 49.6))
        assert result.reason is InfeasibleReason.ACCEL_LIMIT

    def test_ramps_longer_than_route(self, scenario1: Scenario) -> None:
        short = scenario1.model_copy(
            update={"total_distance": 500.0, "segments": (scenario1.segments[0].model_copy(
                update={"length": 500.0}),)}
        )
        result = build_case1(short, case1_params(0.5, 0.5, 50.4))
        assert result.reason is InfeasibleReason.RAMP_OVERSHOOT

    def test_distance_matches_route(self, optimum_cycle: DrivingCycle, scenario1: Scenario) -> None:
        assert optimum_cycle.total_distance == pytest.approx(scenario1.total_distance, rel=1e-9)


class TestBuildCase2:
    def test_table3_row_is_feasible(self, table3_cycle: DrivingCycle, scenario2: Scenario) -> None:
        assert table3_cycle.total_time <= 420
        assert table3_cycle.is_closed
        assert check_constraints(table3_cycle, scenario2) == []

    def test_restricted_mile_driven_at_v2(self, table3_cycle: DrivingCycle) -> None:
        plateau = [
            p for p in table3_cycle.phases
            if p.kind is PhaseKind.CRUISE and mps_to_mph(p.v_start) == pytest.approx(25)
        ]
        assert len(plateau) == 1
        assert plateau[0].duration == pytest.approx(144.0)

    def test_shape_violation(self, scenario2: Scenario) -> None:
        result = build_case2(scenario2, case2_params(8, 20, 0.5, 25, 2, 75, 1))
        assert result.reason is InfeasibleReason.PROFILE_SHAPE_VIOLATED

    def test_segment_overshoot(self, scenario2: Scenario) -> None:
        result = build_case2(scenario2, case2_params(8, 75, 0.1, 25, 2, 75, 1))
        assert result.reason is InfeasibleReason.SEGMENT_OVERSHOOT

    def test_restricted_speed_limit(self, scenario2: Scenario) -> None:
        result = build_case2(scenario2, case2_params(8, 75, 0.5, 30, 2, 75, 1))
        assert result.reason is InfeasibleReason.SPEED_LIMIT

    def test_equal_speeds_omit_zero_phases(self, scenario2: Scenario) -> None:
        cycle = build_case2(scenario2, case2_params(8, 25, 8, 25, 8, 25, 8))
        # при 25 mph 5 миль проходятся за 720 с
        assert cycle.reason is InfeasibleReason.TIME_EXCEEDED
        relaxed = scenario2.model_copy(update={"max_time": 1000.0})
        cycle = build_case2(relaxed, case2_params(8, 25, 8, 25, 8, 25, 8))
        assert isinstance(cycle, DrivingCycle)
        assert all(p.duration > 0 for p in cycle.phases)
        assert [p.kind for p in cycle.phases] == [
            PhaseKind.ACCELERATE,
            PhaseKind.CRUISE,
            PhaseKind.CRUISE,
            PhaseKind.CRUISE,
            PhaseKind.BRAKE,
        ]

    def test_requires_three_segments(self, scenario1: Scenario) -> None:
        result = build_case2(scenario1, case2_params(8, 75, 0.5, 25, 2, 75, 1))
        assert result.reason is InfeasibleReason.UNSUPPORTED_SCENARIO


class TestCheckConstraints:
    def test_feasible_build_has_no_violations(
        self, optimum_cycle: DrivingCycle, scenario1: Scenario
    ) -> None:
        assert check_constraints(optimum_cycle, scenario1) == []

    def test_speed_limit(self, scenario1: Scenario) -> None:
        v = mph_to_mps(80)
        t_ramp = v / 2.0
        cruise = (scenario1.total_distance - v * t_ramp) / v
        relaxed = scenario1.model_copy(update={"max_time": 1000.0})
        cycle = DrivingCycle(
            (Phase.ramp(0.0, v, t_ramp), Phase.cruise(v, cruise), Phase.ramp(v, 0.0, t_ramp)),
            relaxed,
        )
        assert check_constraints(cycle, relaxed) == [Violation.SPEED_LIMIT]

    def test_time_limit(self, scenario1: Scenario) -> None:
        v = scenario1.total_distance / 421.0
        cycle = DrivingCycle((Phase.cruise(v, 421.0),), scenario1)
        assert check_constraints(cycle, scenario1) == [Violation.TIME_LIMIT]

    def test_segment_limit(self, scenario2: Scenario) -> None:
        v = mph_to_mps(30)
        t = scenario2.total_distance / v
        relaxed = scenario2.model_copy(update={"max_time": 1000.0})
        cycle = DrivingCycle((Phase.cruise(v, t),), relaxed)
        assert check_constraints(cycle, relaxed) == [Violation.SEGMENT_LIMIT]


def test_random_feasible_candidates_cover_route(scenario1: Scenario) -> None:
    relaxed = scenario1.model_copy(update={"max_time": 3000.0})
    rng = np.random.default_rng(3)
    checked = 0
    while checked < 1000:
        cycle = build_case1(relaxed, decode(random_chromosome(CASE1_LAYOUT, rng), CASE1_LAYOUT))
        if isinstance(cycle, Infeasible):
            continue
        assert cycle.total_distance == pytest.approx(relaxed.total_distance, rel=1e-6)
        checked += 1


def test_phase_validation() -> None:
    with pytest.raises(MalformedPhase):
        Phase.cruise(10.0, 0.0)
    with pytest.raises(MalformedPhase):
        Phase(PhaseKind.ACCELERATE, 10.0, 5.0, 1.0, 7.5)
    with pytest.raises(MalformedCycle):
        DrivingCycle((Phase.ramp(0.0, 10.0, 5.0), Phase.cruise(12.0, 1.0)), None)
    with pytest.raises(MalformedCycle):
        DrivingCycle((), None)


class TestSampleProfile:
    def test_case1_optimum(self, optimum_cycle: DrivingCycle) -> None:
        profile = sample_profile(optimum_cycle, 1.0)
        assert len(profile) == 417
        assert mps_to_mph(profile.v.max()) == pytest.approx(49.6)
        assert profile.v[0] == 0.0
        assert profile.v[-1] == pytest.approx(0.0)

    def test_single_cruise_endpoints(self, scenario1: Scenario) -> None:
        cycle = DrivingCycle((Phase.cruise(10.0, 30.0),), scenario1)
        assert len(sample_profile(cycle, 30.0)) == 2
        assert len(sample_profile(cycle, 100.0)) == 2

    def test_integral_matches_distance(self, table3_cycle: DrivingCycle) -> None:
        profile = sample_profile(table3_cycle, 0.5)
        assert np.trapezoid(profile.v, profile.t) == pytest.approx(
            table3_cycle.total_distance, rel=1e-3
        )

    def test_non_positive_step(self, optimum_cycle: DrivingCycle) -> None:
        with pytest.raises(NonPositiveStep):
            sample_profile(optimum_cycle, 0.0)

    def test_frame_columns(self, optimum_cycle: DrivingCycle) -> None:
        frame = sample_profile(optimum_cycle, 10.0).to_frame()
        assert list(frame.columns) == ["t_s", "v_mph"]


def test_case1_feasibility_monotone_in_time_limit(scenario1: Scenario) -> None:
    limits = (380.0, 420.0, 460.0, 3000.0)
    scenarios = [scenario1.model_copy(update={"max_time": t}) for t in limits]
    for chromosome in list(enumerate_all(CASE1_LAYOUT))[::3]:
        params = decode(chromosome, CASE1_LAYOUT)
        feasible = [not isinstance(build_case1(sc, params), Infeasible) for sc in scenarios]
        # допустимость при меньшем пределе сохраняется при большем
        assert feasible == sorted(feasible), (str(chromosome), feasible)


def test_case1_time_decreases_with_speed(scenario1: Scenario) -> None:
    relaxed = scenario1.model_copy(update={"max_time": 3000.0})
    times = []
    for s in range(1, 64):
        cycle = build_case1(relaxed, case1_params(8, 0.5, 75 * s / 63))
        if isinstance(cycle, Infeasible):
            continue
        times.append(cycle.total_time)
    assert len(times) > 40
    assert all(b < a for a, b in zip(times, times[1:]))
