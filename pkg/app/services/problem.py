"""Задача эко-вождения как функция приспособленности хромосомы.

``EcoDrivingProblem`` связывает автомобиль, сценарий, модель КПД и
построитель цикла. Оптимизаторы работают с любым объектом, реализующим
протокол ``SearchProblem``.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Protocol

from app.models.cycle import CandidateParams, CaseId, DrivingCycle, Infeasible
from app.models.params import Scenario, VehicleParams
from app.services.cycles import build_case1, build_case2
from app.services.encoding import Chromosome, Layout, decode
from app.services.energy import EfficiencyModel, cycle_energy, fitness

CycleBuilder = Callable[[Scenario, CandidateParams], DrivingCycle | Infeasible]

BUILDERS: dict[CaseId, CycleBuilder] = {
    CaseId.CASE1: build_case1,
    CaseId.CASE2: build_case2,
}


@dataclass(frozen=True, slots=True)
class Evaluation:
    """Результат оценки одной хромосомы.

    Attributes:
        chromosome: Оценённая хромосома.
        params: Декодированные параметры (None для абстрактных задач).
        energy_kwh: Энергия батареи, кВт·ч; ``inf`` для недопустимых.
        fitness: Приспособленность 1/(1+E) или 0.
        infeasible: Причина недопустимости, если есть.
    """

    chromosome: Chromosome
    params: CandidateParams | None
    energy_kwh: float
    fitness: float
    infeasible: Infeasible | None = None

    @property
    def feasible(self) -> bool:
        return self.infeasible is None


class SearchProblem(Protocol):
    """Протокол задачи, которую решают оптимизаторы."""

    def evaluate(self, chromosome: Chromosome, layout: Layout) -> Evaluation: ...


@dataclass(frozen=True)
class EcoDrivingProblem:
    """Задача поиска цикла минимальной энергии.

    Attributes:
        vehicle: Параметры автомобиля.
        scenario: Сценарий поездки.
        case: Тип сценария (выбирает построитель цикла).
        model: Модель учёта КПД.
    """

    vehicle: VehicleParams
    scenario: Scenario
    case: CaseId
    model: EfficiencyModel = EfficiencyModel.WHEEL_NET

    def build(self, params: CandidateParams) -> DrivingCycle | Infeasible:
        """Строит цикл для параметров соответствующим построителем."""
        return BUILDERS[self.case](self.scenario, params)

    def evaluate(self, chromosome: Chromosome, layout: Layout) -> Evaluation:
        """Декодирует хромосому, строит цикл и считает энергию."""
        params = decode(chromosome, layout)
        cycle = self.build(params)
        if isinstance(cycle, Infeasible):
            return Evaluation(chromosome, params, math.inf, 0.0, cycle)
        energy = cycle_energy(self.vehicle, cycle, self.model).battery_total_kwh
        return Evaluation(chromosome, params, energy, fitness(energy, True))
