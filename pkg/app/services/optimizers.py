"""Оптимизаторы: генетический алгоритм, стохастический подъём и полный перебор.

Все алгоритмы детерминированы при фиксированном зерне: каждый запуск
использует собственный поток ``numpy.random.Generator``, глобальное
состояние ГСЧ не затрагивается. Ничьи везде разрешаются в пользу хромосомы
с меньшим беззнаковым значением.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        def __str__(self) -> str:
            return str(self.value)

        def __format__(self, format_spec: str) -> str:
            return format(str(self.value), format_spec)
from typing import Any

import numpy as np
import pandas as pd
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.errors import InvariantViolation, LengthMismatch, SizeMismatch
from app.models.cycle import CandidateParams, CaseId
from app.services.encoding import (
    DEFAULT_ENUMERATION_LIMIT,
    Chromosome,
    Layout,
    enumerate_all,
    random_chromosome,
)
from app.services.problem import Evaluation, SearchProblem


class Algorithm(StrEnum):
    """Алгоритм оптимизации."""

    GA = "ga"
    SHC = "shc"
    EXHAUSTIVE = "exhaustive"


class Neighborhood(StrEnum):
    """Способ генерации нового решения в стохастическом подъёме."""

    BIT_FLIP = "bit-flip"
    UNIFORM = "uniform"


class GaConfig(BaseModel):
    """Гиперпараметры генетического алгоритма.

    Attributes:
        population_size: Размер популяции.
        generations: Число поколений после начального.
        crossover_prob: Вероятность одноточечного скрещивания пары.
        mutation_prob: Вероятность мутации потомка (одна инверсия бита).
        elite_count: Число элит, переносимых без изменений.
        reseed_infeasible: Пока в популяции нет ни одной допустимой особи,
            вместо потомков генерируются новые случайные хромосомы.
        rng_seed: Зерно ГСЧ запуска.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    population_size: int = Field(40, ge=2)
    generations: int = Field(100, ge=0)
    crossover_prob: float = Field(0.8, ge=0, le=1)
    mutation_prob: float = Field(0.2, ge=0, le=1)
    elite_count: int = Field(2, ge=0)
    reseed_infeasible: bool = True
    rng_seed: int = 0

    @model_validator(mode="after")
    def _check_elites(self) -> GaConfig:
        if self.elite_count >= self.population_size:
            raise ValueError("elite_count должен быть меньше population_size")
        return self

    @property
    def evaluation_budget(self) -> int:
        """Число вычислений приспособленности за запуск: P + G·(P − E)."""
        return self.population_size + self.generations * (
            self.population_size - self.elite_count
        )


class ShcConfig(BaseModel):
    """Параметры стохастического подъёма.

    Attributes:
        max_itr: Число итераций (новых решений).
        neighborhood: Инверсия одного бита или новое случайное решение.
        rng_seed: Зерно ГСЧ запуска.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    max_itr: int = Field(2000, ge=0)
    neighborhood: Neighborhood = Neighborhood.BIT_FLIP
    rng_seed: int = 0


# В Case II допустим около 1% случайных 32-битных хромосом
CASE_GA_CONFIGS: dict[CaseId, GaConfig] = {
    CaseId.CASE1: GaConfig(),
    CaseId.CASE2: GaConfig(population_size=60, mutation_prob=0.3),
}


def ga_config_for(case: CaseId) -> GaConfig:
    """Гиперпараметры ГА по умолчанию для сценария."""
    return CASE_GA_CONFIGS[case]


def shc_config_for(case: CaseId) -> ShcConfig:
    """Параметры подъёма по умолчанию для сценария.

    В Case II бюджет вычислений совпадает с бюджетом ГА того же сценария:
    начальное решение плюс ``max_itr`` итераций.
    """
    if case is CaseId.CASE1:
        return ShcConfig()
    return ShcConfig(max_itr=ga_config_for(case).evaluation_budget - 1)


@dataclass(frozen=True, slots=True)
class TraceEntry:
    """Строка трассы сходимости (поколение или итерация)."""

    generation: int
    best_fitness: float
    mean_fitness: float
    best_energy_kwh: float


@dataclass(frozen=True)
class RunReport:
    """Итог одного запуска оптимизатора.

    Attributes:
        algorithm: Алгоритм.
        best: Лучшая оценённая хромосома за весь запуск.
        evaluations: Число вызовов функции приспособленности.
        trace: Трасса сходимости.
        config: Снимок параметров запуска.
    """

    algorithm: Algorithm
    best: Evaluation
    evaluations: int
    trace: tuple[TraceEntry, ...]
    config: dict[str, Any] = field(default_factory=dict)

    @property
    def best_chromosome(self) -> Chromosome:
        return self.best.chromosome

    @property
    def best_params(self) -> CandidateParams | None:
        return self.best.params

    @property
    def best_energy_kwh(self) -> float:
        return self.best.energy_kwh

    @property
    def best_fitness(self) -> float:
        return self.best.fitness

    @property
    def feasible(self) -> bool:
        return self.best.feasible

    def trace_frame(self) -> pd.DataFrame:
        """Трасса для CSV: ``generation,best_fitness,mean_fitness,best_energy_kwh``."""
        return pd.DataFrame(
            [
                (e.generation, e.best_fitness, e.mean_fitness, e.best_energy_kwh)
                for e in self.trace
            ],
            columns=["generation", "best_fitness", "mean_fitness", "best_energy_kwh"],
        )


def _rank_key(e: Evaluation) -> tuple[float, int]:
    return (-e.fitness, e.chromosome.value)


def _is_better(candidate: Evaluation, incumbent: Evaluation) -> bool:
    return _rank_key(candidate) < _rank_key(incumbent)


def _trace_entry(generation: int, population: Sequence[Evaluation]) -> TraceEntry:
    top = min(population, key=_rank_key)
    mean = float(np.mean([e.fitness for e in population]))
    return TraceEntry(generation, top.fitness, mean, top.energy_kwh)


def crossover(
    p1: Chromosome,
    p2: Chromosome,
    rng: np.random.Generator,
    *,
    cut: int | None = None,
) -> tuple[Chromosome, Chromosome]:
    """Одноточечное скрещивание: биты правее точки разреза меняются местами.

    Args:
        p1: Первый родитель.
        p2: Второй родитель.
        rng: Поток ГСЧ запуска.
        cut: Точка разреза из {1..n-1}; по умолчанию случайная.

    Returns:
        Пара потомков prefix(p1)+suffix(p2) и prefix(p2)+suffix(p1).

    Raises:
        LengthMismatch: Если родители разной длины.
    """
    n = len(p1)
    if n != len(p2):
        raise LengthMismatch(f"Родители длиной {n} и {len(p2)}")
    if n < 2:
        return p1, p2
    k = int(rng.integers(1, n)) if cut is None else cut
    if not 1 <= k < n:
        raise ValueError(f"Точка разреза {k} вне диапазона 1..{n - 1}")
    return (
        Chromosome(p1.bits[:k] + p2.bits[k:]),
        Chromosome(p2.bits[:k] + p1.bits[k:]),
    )


def mutate(c: Chromosome, rng: np.random.Generator) -> Chromosome:
    """Инвертирует один случайно выбранный бит."""
    if not len(c):
        raise ValueError("Пустая хромосома")
    i = int(rng.integers(0, len(c)))
    bits = list(c.bits)
    bits[i] ^= 1
    return Chromosome(tuple(bits))


def select_elitist(
    pop: Sequence[Chromosome],
    fitnesses: Sequence[float],
    cfg: GaConfig,
    rng: np.random.Generator,
) -> list[Chromosome]:
    """Элитарный отбор родителей следующего поколения.

    Первые ``elite_count`` мест занимают лучшие особи (ничьи в пользу
    меньшего значения хромосомы), остальные места заполняются рулеточным
    отбором по приспособленности. Если все приспособленности нулевые,
    отбор равновероятный.

    Raises:
        SizeMismatch: Если размеры не совпадают с population_size.
    """
    n = len(pop)
    if n != len(fitnesses) or n != cfg.population_size:
        raise SizeMismatch(
            f"Популяция {n}, приспособленностей {len(fitnesses)}, "
            f"ожидалось {cfg.population_size}"
        )
    order = sorted(range(n), key=lambda i: (-fitnesses[i], pop[i].value))
    elites = [pop[i] for i in order[:cfg.elite_count]]
    weights = np.asarray(fitnesses, dtype=float)
    total = weights.sum()
    probs = weights / total if total > 0 else None
    picks = rng.choice(n, size=n - cfg.elite_count, p=probs)
    return elites + [pop[int(i)] for i in picks]


def _breed(
    pool: Sequence[Chromosome],
    cfg: GaConfig,
    rng: np.random.Generator,
) -> list[Chromosome]:
    children: list[Chromosome] = []
    for i in range(0, len(pool) - 1, 2):
        a, b = pool[i], pool[i + 1]
        if rng.random() < cfg.crossover_prob:
            a, b = crossover(a, b, rng)
        children.extend((a, b))
    if len(pool) % 2:
        children.append(pool[-1])
    return [mutate(c, rng) if rng.random() < cfg.mutation_prob else c for c in children]


def run_ga(problem: SearchProblem, layout: Layout, cfg: GaConfig) -> RunReport:
    """Генетический алгоритм: начальная популяция, оценка, отбор, скрещивание, мутация.

    Элиты переносятся в следующее поколение вместе со своей оценкой, поэтому
    число вычислений равно P + G·(P − E). Пока ни одна особь не допустима,
    с ``reseed_infeasible`` места потомков занимают новые случайные хромосомы.

    Args:
        problem: Задача с методом ``evaluate``.
        layout: Раскладка хромосомы.
        cfg: Гиперпараметры.

    Returns:
        Отчёт о запуске; лучшая особь это максимум приспособленности за весь запуск.

    Raises:
        InvariantViolation: Если при элитизме лучшая приспособленность поколения упала.

    Example:
        >>> report = run_ga(problem, CASE1_LAYOUT, GaConfig(rng_seed=7))  # doctest: +SKIP
        >>> str(report.best_chromosome)  # doctest: +SKIP
        '11110000111110'
    """
    rng = np.random.default_rng(cfg.rng_seed)
    population = [
        problem.evaluate(random_chromosome(layout, rng), layout)
        for _ in range(cfg.population_size)
    ]
    evaluations = len(population)
    best = min(population, key=_rank_key)
    trace = [_trace_entry(0, population)]

    for generation in range(1, cfg.generations + 1):
        if cfg.reseed_infeasible and trace[-1].best_fitness == 0:
            children = [
                random_chromosome(layout, rng)
                for _ in range(cfg.population_size - cfg.elite_count)
            ]
        else:
            parents = select_elitist(
                [e.chromosome for e in population],
                [e.fitness for e in population],
                cfg,
                rng,
            )
            children = _breed(parents[cfg.elite_count:], cfg, rng)
        elites = sorted(population, key=_rank_key)[:cfg.elite_count]
        offspring = [problem.evaluate(c, layout) for c in children]
        evaluations += len(offspring)
        population = elites + offspring

        entry = _trace_entry(generation, population)
        if cfg.elite_count and entry.best_fitness < trace[-1].best_fitness:
            raise InvariantViolation(
                f"Поколение {generation}: лучшая приспособленность упала "
                f"{trace[-1].best_fitness} -> {entry.best_fitness}"
            )
        trace.append(entry)
        top = min(population, key=_rank_key)
        if _is_better(top, best):
            best = top

    logger.debug(
        "GA seed={}: {} E={:.4f} кВт·ч, вычислений {}",
        cfg.rng_seed, best.chromosome, best.energy_kwh, evaluations,
    )
    return RunReport(Algorithm.GA, best, evaluations, tuple(trace), cfg.model_dump(mode="json"))


def run_shc(
    problem: SearchProblem,
    layout: Layout,
    max_itr: int = 2000,
    rng_seed: int = 0,
    *,
    neighborhood: Neighborhood = Neighborhood.BIT_FLIP,
) -> RunReport:
    """Стохастический подъём: новое решение принимается при fitness ≥ текущей.

    Args:
        problem: Задача с методом ``evaluate``.
        layout: Раскладка хромосомы.
        max_itr: Число итераций.
        rng_seed: Зерно ГСЧ.
        neighborhood: Инверсия одного бита текущего решения или новое
            случайное решение.

    Returns:
        Отчёт с итоговым решением.
    """
    if max_itr < 0:
        raise ValueError("max_itr не может быть отрицательным")
    rng = np.random.default_rng(rng_seed)
    current = problem.evaluate(random_chromosome(layout, rng), layout)
    trace = [TraceEntry(0, current.fitness, current.fitness, current.energy_kwh)]
    for itr in range(1, max_itr + 1):
        if neighborhood is Neighborhood.BIT_FLIP:
            candidate = mutate(current.chromosome, rng)
        else:
            candidate = random_chromosome(layout, rng)
        evaluation = problem.evaluate(candidate, layout)
        previous = current.fitness
        if evaluation.fitness >= current.fitness:
            current = evaluation
        if current.fitness < previous:
            raise InvariantViolation(f"Итерация {itr}: приспособленность упала")
        trace.append(TraceEntry(itr, current.fitness, current.fitness, current.energy_kwh))

    logger.debug(
        "SHC seed={}: {} E={:.4f} кВт·ч", rng_seed, current.chromosome, current.energy_kwh
    )
    config = ShcConfig(max_itr=max_itr, neighborhood=neighborhood, rng_seed=rng_seed)
    return RunReport(
        Algorithm.SHC, current, max_itr + 1, tuple(trace), config.model_dump(mode="json")
    )


def run_exhaustive(
    problem: SearchProblem,
    layout: Layout,
    *,
    max_bits: int = DEFAULT_ENUMERATION_LIMIT,
) -> RunReport:
    """Полный перебор: точный оптимум дискретизированной задачи.

    Raises:
        SpaceTooLarge: Если раскладка превышает предел перебора.
    """
    best: Evaluation | None = None
    total = 0.0
    count = 0
    for chromosome in enumerate_all(layout, max_bits):
        evaluation = problem.evaluate(chromosome, layout)
        count += 1
        total += evaluation.fitness
        # перебор идёт по возрастанию значения, строгое сравнение сохраняет меньшее
        if best is None or evaluation.fitness > best.fitness:
            best = evaluation
    assert best is not None
    if not best.feasible:
        logger.warning("Полный перебор: все {} кандидатов недопустимы", count)
    trace = (TraceEntry(0, best.fitness, total / count, best.energy_kwh),)
    return RunReport(Algorithm.EXHAUSTIVE, best, count, trace, {"max_bits": max_bits})
