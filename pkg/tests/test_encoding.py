"""Тесты раскладок хромосом, декодирования и перебора."""

from __future__ import annotations

import numpy as np
import pytest

from app.errors import GridValueError, LayoutMismatch, SpaceTooLarge
from app.models.cycle import CaseId
from app.services.encoding import (
    CASE1_LAYOUT,
    CASE2_LAYOUT,
    Chromosome,
    DecodeKind,
    FieldDecode,
    Layout,
    LayoutField,
    decode,
    decode_fields,
    encode,
    enumerate_all,
    random_chromosome,
)

TOY_LAYOUT = Layout(CaseId.CASE1, ())


def test_layout_widths() -> None:
    assert CASE1_LAYOUT.total_bits == 14
    assert CASE2_LAYOUT.total_bits == 32


@pytest.mark.parametrize(
    ("bits", "expected"),
    [
        ("0" * 14, {"alpha": 0.5, "beta": 0.5, "v": 0.0}),
        ("1" * 14, {"alpha": 8.0, "beta": 8.0, "v": 50.4}),
        ("11110000111110", {"alpha": 8.0, "beta": 0.5, "v": 49.6}),
    ],
)
def test_decode_case1(bits: str, expected: dict[str, float]) -> None:
    values = decode_fields(Chromosome.from_string(bits), CASE1_LAYOUT)
    assert values == pytest.approx(expected)


def test_decode_returns_si() -> None:
    params = decode(Chromosome.from_string("11110000111110"), CASE1_LAYOUT)
    assert params.as_mph() == pytest.approx({"alpha": 8.0, "beta": 0.5, "v": 49.6})


def test_decode_layout_mismatch() -> None:
    with pytest.raises(LayoutMismatch):
        decode(Chromosome.from_string("0101"), CASE1_LAYOUT)


def test_decode_case2_field_order() -> None:
    # α1=8 | V1=75 | β1=0.5 | V2=25 | α2=2 | V3=75 | β2=1
    bits = "1111" + "111111" + "0000" + "1111" + "0011" + "111111" + "0001"
    values = decode_fields(Chromosome.from_string(bits), CASE2_LAYOUT)
    assert values == pytest.approx(
        {"alpha1": 8, "v1": 75, "beta1": 0.5, "v2": 25, "alpha2": 2, "v3": 75, "beta2": 1}
    )


def test_case2_grids_cover_reference_values() -> None:
    grids = {f.name: f.decode.grid() for f in CASE2_LAYOUT.fields}
    reference = {
        "alpha1": (8, 4.5),
        "v1": (75,),
        "beta1": (0.5,),
        "v2": (25,),
        "alpha2": (2, 0.5),
        "v3": (75,),
        "beta2": (1, 4.5),
    }
    for name, values in reference.items():
        for value in values:
            assert any(abs(g - value) < 1e-12 for g in grids[name]), (name, value)


def test_encode_round_trip_all_case1() -> None:
    for chromosome in enumerate_all(CASE1_LAYOUT):
        assert encode(decode(chromosome, CASE1_LAYOUT), CASE1_LAYOUT) == chromosome


def test_encode_off_grid() -> None:
    params = decode(Chromosome.from_string("11110000111110"), CASE1_LAYOUT)
    off_grid = type(params)(params.alpha, params.beta, params.v + 0.1)
    with pytest.raises(GridValueError):
        encode(off_grid, CASE1_LAYOUT)


def test_field_width_must_match_kind() -> None:
    with pytest.raises(ValueError):
        LayoutField("v", 4, FieldDecode(DecodeKind.SPEED6, 75.0))


class TestRandomChromosome:
    def test_reproducible(self) -> None:
        a = random_chromosome(CASE1_LAYOUT, np.random.default_rng(42))
        b = random_chromosome(CASE1_LAYOUT, np.random.default_rng(42))
        assert a == b
        assert len(a) == 14

    def test_case2_length(self) -> None:
        assert len(random_chromosome(CASE2_LAYOUT, np.random.default_rng(0))) == 32

    def test_bits_are_balanced(self) -> None:
        rng = np.random.default_rng(1)
        samples = np.array(
            [random_chromosome(CASE1_LAYOUT, rng).bits for _ in range(10_000)]
        )
        means = samples.mean(axis=0)
        assert np.all((means > 0.45) & (means < 0.55))


class TestEnumerateAll:
    def test_case1_size_and_order(self) -> None:
        values = [c.value for c in enumerate_all(CASE1_LAYOUT)]
        assert len(values) == 16_384
        assert values == sorted(values)

    def test_small_layouts(self) -> None:
        layout = Layout(CaseId.CASE1, (LayoutField("b", 4, FieldDecode(DecodeKind.RATE4)),))
        assert sum(1 for _ in enumerate_all(layout)) == 16
        assert [str(c) for c in enumerate_all(TOY_LAYOUT)] == [""]

    def test_case2_rejected_by_default(self) -> None:
        with pytest.raises(SpaceTooLarge):
            enumerate_all(CASE2_LAYOUT)

    def test_hard_ceiling(self) -> None:
        with pytest.raises(SpaceTooLarge):
            enumerate_all(Layout(CaseId.CASE2, CASE2_LAYOUT.fields * 2), max_bits=64)


def test_chromosome_string_and_value() -> None:
    c = Chromosome.from_int(5, 4)
    assert str(c) == "0101"
    assert c.value == 5
    with pytest.raises(ValueError):
        Chromosome.from_string("012")
