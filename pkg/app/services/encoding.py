"""Двоичное кодирование параметров цикла в хромосомы.

Поля упакованы слева направо, старший бит каждого поля идёт первым.
Декодирование поля даёт равномерную сетку в mph или mph/s:

- RATE4: 4 бита, r → 0.5·(r + 1) mph/s, диапазон [0.5, 8.0];
- SPEED6: 6 бит, s → V_hi·s/63 mph, диапазон [0, V_hi];
- SPEED4: 4 бита, s → V_lim·(s + 1)/16 mph, диапазон (0, V_lim].
"""

from __future__ import annotations

from collections.abc import Iterator
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

import numpy as np

from app.errors import GridValueError, LayoutMismatch, SpaceTooLarge
from app.models.cycle import CandidateParams, CaseId, CaseIIParams, CaseIParams
from app.services.units import mph_per_s_to_mps2, mph_to_mps, mps2_to_mph_per_s, mps_to_mph

# Полный перебор разрешён по умолчанию до 2^20 хромосом
DEFAULT_ENUMERATION_LIMIT = 20
# Жёсткий предел, который нельзя поднять
MAX_ENUMERATION_BITS = 34


class DecodeKind(StrEnum):
    """Вид сетки декодирования поля."""

    RATE4 = "rate4"
    SPEED6 = "speed6"
    SPEED4 = "speed4"

    @property
    def width(self) -> int:
        return 6 if self is DecodeKind.SPEED6 else 4


@dataclass(frozen=True, slots=True)
class FieldDecode:
    """Правило перевода индекса поля в значение (mph или mph/s).

    Attributes:
        kind: Вид сетки.
        upper: Верхняя граница скорости для SPEED6/SPEED4, mph.
    """

    kind: DecodeKind
    upper: float = 0.0

    def value(self, index: int) -> float:
        """Значение сетки для индекса поля."""
        if self.kind is DecodeKind.RATE4:
            return 0.5 * (index + 1)
        if self.kind is DecodeKind.SPEED6:
            return self.upper * index / 63
        return self.upper * (index + 1) / 16

    def index(self, value: float) -> int:
        """Индекс поля для значения на сетке.

        Raises:
            GridValueError: Если значение не лежит на сетке.
        """
        if self.kind is DecodeKind.RATE4:
            raw = value / 0.5 - 1
        elif self.kind is DecodeKind.SPEED6:
            raw = value * 63 / self.upper
        else:
            raw = value * 16 / self.upper - 1
        idx = round(raw)
        if abs(raw - idx) > 1e-6 or not 0 <= idx < 2**self.kind.width:
            raise GridValueError(f"{value} не лежит на сетке {self.kind.value}")
        return idx

    def grid(self) -> list[float]:
        """Все значения сетки по возрастанию индекса."""
        return [self.value(i) for i in range(2**self.kind.width)]


@dataclass(frozen=True, slots=True)
class LayoutField:
    """Поле хромосомы: имя, ширина в битах и правило декодирования."""

    name: str
    width: int
    decode: FieldDecode

    def __post_init__(self) -> None:
        if self.width != self.decode.kind.width:
            raise ValueError(
                f"Поле {self.name}: ширина {self.width} не совпадает с {self.decode.kind.value}"
            )


@dataclass(frozen=True, slots=True)
class Layout:
    """Раскладка полей хромосомы для одного сценария.

    Attributes:
        case: Сценарий, которому соответствует раскладка.
        fields: Поля в порядке упаковки.
    """

    case: CaseId
    fields: tuple[LayoutField, ...]

    @property
    def total_bits(self) -> int:
        return sum(f.width for f in self.fields)


@dataclass(frozen=True, slots=True)
class Chromosome:
    """Битовая строка фиксированной длины.

    Печатается как строка из 0/1 без разделителей, старший бит первым.

    Example:
        >>> str(Chromosome.from_int(0b11110000111110, 14))
        '11110000111110'
    """

    bits: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    @property
    def value(self) -> int:
        """Хромосома как беззнаковое целое (старший бит первым)."""
        return int(str(self), 2) if self.bits else 0

    @classmethod
    def from_string(cls, s: str) -> Chromosome:
        if any(ch not in "01" for ch in s):
            raise ValueError(f"Хромосома должна состоять из 0 и 1: {s!r}")
        return cls(tuple(int(ch) for ch in s))

    @classmethod
    def from_int(cls, value: int, n_bits: int) -> Chromosome:
        return cls(tuple((value >> (n_bits - 1 - i)) & 1 for i in range(n_bits)))


def _field(name: str, kind: DecodeKind, upper: float = 0.0) -> LayoutField:
    return LayoutField(name, kind.width, FieldDecode(kind, upper))


CASE1_LAYOUT = Layout(
    case=CaseId.CASE1,
    fields=(
        _field("alpha", DecodeKind.RATE4),
        _field("beta", DecodeKind.RATE4),
        _field("v", DecodeKind.SPEED6, 50.4),
    ),
)

CASE2_LAYOUT = Layout(
    case=CaseId.CASE2,
    fields=(
        _field("alpha1", DecodeKind.RATE4),
        _field("v1", DecodeKind.SPEED6, 75.0),
        _field("beta1", DecodeKind.RATE4),
        _field("v2", DecodeKind.SPEED4, 25.0),
        _field("alpha2", DecodeKind.RATE4),
        _field("v3", DecodeKind.SPEED6, 75.0),
        _field("beta2", DecodeKind.RATE4),
    ),
)

LAYOUTS: dict[CaseId, Layout] = {CaseId.CASE1: CASE1_LAYOUT, CaseId.CASE2: CASE2_LAYOUT}


def decode_fields(c: Chromosome, layout: Layout) -> dict[str, float]:
    """Значения полей хромосомы в mph и mph/s.

    Raises:
        LayoutMismatch: Если длина хромосомы не совпадает с раскладкой.
    """
    if len(c) != layout.total_bits:
        raise LayoutMismatch(f"Хромосома из {len(c)} бит, раскладка из {layout.total_bits}")
    values: dict[str, float] = {}
    pos = 0
    for f in layout.fields:
        idx = 0
        for bit in c.bits[pos:pos + f.width]:
            idx = (idx << 1) | bit
        values[f.name] = f.decode.value(idx)
        pos += f.width
    return values


def decode(c: Chromosome, layout: Layout) -> CandidateParams:
    """Декодирует хромосому в параметры цикла (СИ).

    Example:
        >>> decode(Chromosome.from_string("11110000111110"), CASE1_LAYOUT)  # doctest: +SKIP
        CaseIParams(alpha=3.57632, beta=0.22352, v=22.173184)
    """
    values = decode_fields(c, layout)
    si = {
        name: (mph_to_mps(v) if name.startswith("v") else mph_per_s_to_mps2(v))
        for name, v in values.items()
    }
    if layout.case is CaseId.CASE1:
        return CaseIParams(**si)
    return CaseIIParams(**si)


def encode(params: CandidateParams, layout: Layout) -> Chromosome:
    """Кодирует параметры цикла обратно в хромосому.

    Raises:
        GridValueError: Если какое-либо значение не лежит на сетке поля.
    """
    if (layout.case is CaseId.CASE1) != isinstance(params, CaseIParams):
        raise LayoutMismatch(f"Параметры {type(params).__name__} не подходят к {layout.case}")
    bits: list[int] = []
    for f in layout.fields:
        raw = getattr(params, f.name)
        value = mps_to_mph(raw) if f.name.startswith("v") else mps2_to_mph_per_s(raw)
        idx = f.decode.index(value)
        bits.extend((idx >> (f.width - 1 - i)) & 1 for i in range(f.width))
    return Chromosome(tuple(bits))


def random_chromosome(layout: Layout, rng: np.random.Generator) -> Chromosome:
    """Случайная хромосома: каждый бит независимо и равновероятно."""
    return Chromosome(tuple(int(b) for b in rng.integers(0, 2, size=layout.total_bits)))


def enumerate_all(
    layout: Layout,
    max_bits: int = DEFAULT_ENUMERATION_LIMIT,
) -> Iterator[Chromosome]:
    """Перебирает все 2^n хромосом в порядке возрастания значения.

    Raises:
        SpaceTooLarge: Если n больше ``max_bits`` или жёсткого предела 34.
    """
    n = layout.total_bits
    limit = min(max_bits, MAX_ENUMERATION_BITS)
    if n > limit:
        raise SpaceTooLarge(f"Перебор 2^{n} хромосом запрещён (предел 2^{limit})")
    return (Chromosome.from_int(i, n) for i in range(2**n))
