"""
FCRM 双模型测试
"""

import pytest

from core.errors import StructureError, UsageError
from core.patterns import PatternKind
from core.states import StateVector
from maps.fcrm import (
    StateBivector,
    TransposeMode,
    aligned_trace,
    bihidden_pattern,
    build_bimodel,
    combine_fcrms,
    special_transpose,
)
from maps.frm import Side
from tests.conftest import make_fcm, make_frm


def solve(bimodel, fcm_labels, frm_labels=(), side=Side.DOMAIN):
    seed = StateBivector.from_labels(bimodel, fcm_labels, frm_labels, side)
    return bihidden_pattern(bimodel, seed)


def bits(result):
    x, y = result.second.pair
    return result.first.final_state.bits(), x.bits(), y.bits()


def test_caretaker_bimodel(fixture_model):
    result = solve(fixture_model("ch6_caretaker_pwd_B"), ["poor_economy"], ["R1"], Side.RANGE)
    assert result.kind is PatternKind.FIXED_BIPOINT
    assert bits(result) == ("11111000011", "111110", "11111")
    assert result.iterations == 2


def test_special_bimodel(fixture_model):
    result = solve(fixture_model("ch6_special_pwd_N"), ["improper_clothing"], ["D4"], Side.DOMAIN)
    assert bits(result) == ("11100000010", "111110", "11111")


@pytest.mark.parametrize(
    "fcm_label, frm_label, expected",
    [
        ("poor_economy", "R1", ("00000011111", "000000000", "10000000000")),
        ("no_school_education", "R2", ("00000111111", "111001111", "01111001111")),
    ],
)
def test_ngo_public_bimodel(fixture_model, fcm_label, frm_label, expected):
    result = solve(fixture_model("ch6_ngo_public_C"), [fcm_label], [frm_label], Side.RANGE)
    assert result.kind is PatternKind.FIXED_BIPOINT
    assert bits(result) == expected


def test_relatives_bimodel(fixture_model):
    bimodel = fixture_model("ch6_relatives_V")
    assert bimodel.identify
    result = solve(bimodel, ["R1"], ["S1"], Side.RANGE)
    assert bits(result) == ("111011", "111011", "1111010")


def test_female_infanticide_bimodel(fixture_model):
    bimodel = fixture_model("ch3_female_infanticide")
    result = solve(bimodel, ["F1"], ["F3"], Side.DOMAIN)
    assert bits(result) == ("10100", "11111", "1111111")


def test_components_evolve_independently(fixture_model):
    bimodel = fixture_model("ch6_caretaker_pwd_B")
    joint = solve(bimodel, ["poor_economy"], ["R1"], Side.RANGE)
    fcm_only = solve(bimodel, ["poor_economy"])
    frm_only = solve(bimodel, [], ["R1"], Side.RANGE)

    assert joint.first.final_state == fcm_only.first.final_state
    assert joint.second.pair == frm_only.second.pair
    # 未播种的分量保持为零
    assert bits(fcm_only)[1:] == ("000000", "00000")
    assert bits(frm_only)[0] == "00000000000"


def test_zero_bivector_is_rejected(fixture_model):
    with pytest.raises(UsageError):
        solve(fixture_model("ch6_caretaker_pwd_B"), [])


def test_side_tag_must_match_the_component(fixture_model):
    bimodel = fixture_model("ch6_caretaker_pwd_B")
    first = StateVector.zeros(bimodel.first.space)
    second = bimodel.second.domain_seed("D1")
    with pytest.raises(StructureError):
        bihidden_pattern(bimodel, StateBivector(first, second, Side.RANGE))


def test_aligned_trace(fixture_model):
    result = solve(fixture_model("ch6_caretaker_pwd_B"), ["poor_economy"], ["R1"], Side.RANGE)
    steps = aligned_trace(result)
    assert len(steps) == 2
    assert tuple(s.bits() for s in steps[-1]) == ("11111000011", "111110", "11111")
    assert steps[0][1].bits() == "110100"


def test_identify_reports_the_first_difference():
    fcm = make_fcm(("a", "b", "c"), [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    frm = make_frm(("a", "x", "c"), ("y",), [[1], [0], [1]])
    with pytest.raises(StructureError, match="position 2: 'b' vs 'x'"):
        build_bimodel(fcm, frm, identify=True)
    assert not build_bimodel(fcm, frm).identify


def test_special_transpose(fixture_model):
    bimodel = fixture_model("ch6_caretaker_pwd_B")
    m1, m2 = bimodel.first.matrix, bimodel.second.matrix

    t1 = special_transpose(bimodel, TransposeMode.FIRST)
    assert t1 == (m1.transpose(), m2)

    t2 = special_transpose(bimodel, "t2")
    assert t2[0] == m1
    assert t2[1].shape == (5, 6)

    both = special_transpose(bimodel, "t")
    assert both[0].transpose() == m1
    assert both[1].transpose() == m2


def test_combine_fcrms(fixture_model):
    bimodel = fixture_model("ch3_female_infanticide")
    doubled = combine_fcrms([bimodel, bimodel], name="twice")
    assert doubled.identify
    assert doubled.first.matrix.rows()[0] == (0, 0, 2, 0, 0)
    assert doubled.second.matrix.rows()[2] == (2, 2, 2, 2, 2, 2, 0)

    with pytest.raises(UsageError):
        combine_fcrms([])


def test_bicyclic(fixture_model):
    assert fixture_model("ch6_caretaker_pwd_B").is_bicyclic()
    acyclic = build_bimodel(
        make_fcm(("a", "b"), [[0, 1], [0, 0]]), make_frm(("a", "b"), ("y",), [[1], [0]])
    )
    assert not acyclic.has_feedback()
