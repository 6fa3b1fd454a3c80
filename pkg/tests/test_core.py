"""
core 层测试：概念空间、整数矩阵、状态向量、重复检测、反馈环
"""

import numpy as np
import pytest

from core.errors import (
    IterationLimitError,
    MatrixKindError,
    ScoreOverflowError,
    StructureError,
    UnknownLabelError,
    UsageError,
)
from core.graph import build_digraph, find_cycle_in_adjacency, find_feedback_cycle
from core.matrices import ConnectionMatrix, MatrixKind, RelationalMatrix, add_matrices, transpose
from core.patterns import PatternKind, default_max_iters, find_recurrence, minimal_period, render_cycle
from core.spaces import ConceptSpace, require_same_space
from core.states import RawVector, StateVector, mul_state_matrix, threshold_update


D9 = ConceptSpace(tuple(f"D{i}" for i in range(1, 10)))


# ----------------------------------------------------------------------
# ConceptSpace
# ----------------------------------------------------------------------

def test_space_index_roundtrip():
    space = ConceptSpace(("poverty", "illiteracy", "migration"))
    assert space.dimension == 3
    assert space.index("illiteracy") == 1
    assert space.label(2) == "migration"
    assert "poverty" in space
    assert "wealth" not in space


@pytest.mark.parametrize("labels", [(), ("a", "a"), ("a b",), ("a:b",), ("",)])
def test_space_rejects_bad_labels(labels):
    with pytest.raises(StructureError):
        ConceptSpace(labels)


def test_unknown_label_is_a_key_error():
    space = ConceptSpace(("a", "b"))
    with pytest.raises(UnknownLabelError) as exc_info:
        space.index("c")
    assert isinstance(exc_info.value, KeyError)
    assert "'c'" in str(exc_info.value)


def test_first_difference():
    a = ConceptSpace(("x", "y", "z"))
    assert a.first_difference(ConceptSpace(("x", "y", "z"))) is None
    assert a.first_difference(ConceptSpace(("x", "q", "z"))) == 1
    assert a.first_difference(ConceptSpace(("x", "y"))) == 2


def test_require_same_space():
    with pytest.raises(StructureError, match="space mismatch"):
        require_same_space(ConceptSpace(("a",)), ConceptSpace(("b",)), "test")


# ----------------------------------------------------------------------
# 矩阵
# ----------------------------------------------------------------------

def test_simple_matrix_rejects_two():
    space = ConceptSpace(("a", "b"))
    with pytest.raises(MatrixKindError, match="kind=simple"):
        ConnectionMatrix(space, [[0, 2], [0, 0]])


def test_positive_matrix_rejects_negative():
    space = ConceptSpace(("a", "b"))
    with pytest.raises(MatrixKindError):
        ConnectionMatrix(space, [[0, -1], [0, 0]], MatrixKind.POSITIVE)


def test_diagonal_rule_and_override():
    space = ConceptSpace(("a", "b"))
    with pytest.raises(MatrixKindError, match="ALLOW_DIAGONAL"):
        ConnectionMatrix(space, [[1, 0], [0, 0]])
    matrix = ConnectionMatrix(space, [[1, 0], [0, 0]], allow_diagonal=True)
    assert matrix.row("a") == (1, 0)


def test_combined_accepts_any_integer_and_diagonal():
    space = ConceptSpace(("a", "b"))
    matrix = ConnectionMatrix(space, [[16, -3], [2, 0]], MatrixKind.COMBINED)
    assert matrix.rows() == ((16, -3), (2, 0))


def test_matrix_shape_mismatch():
    with pytest.raises(StructureError, match="shape"):
        ConnectionMatrix(ConceptSpace(("a", "b")), [[0, 1, 0], [0, 0, 0]])


def test_matrix_rejects_non_integer():
    with pytest.raises(StructureError, match="not an integer"):
        ConnectionMatrix(ConceptSpace(("a", "b")), [[0, 0.5], [0, 0]], MatrixKind.COMBINED)


def test_matrix_entries_are_read_only():
    matrix = ConnectionMatrix(ConceptSpace(("a", "b")), [[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        matrix.entries[0, 0] = 1


def test_relational_matrix_needs_disjoint_labels():
    with pytest.raises(StructureError, match="disjoint"):
        RelationalMatrix(ConceptSpace(("a", "b")), ConceptSpace(("b", "c")), [[0, 0], [0, 0]])


def test_transpose_is_an_involution(fixture_model):
    public = fixture_model("ch5_public_T").matrix
    t = transpose(public)
    assert t.shape == (11, 9)
    assert t.domain == public.range
    assert transpose(t) == public

    special = fixture_model("ch4_special_M").matrix
    assert special.transpose().transpose() == special


def test_add_matrices():
    space = ConceptSpace(("a", "b"))
    m1 = ConnectionMatrix(space, [[0, 1], [1, 0]])
    m2 = ConnectionMatrix(space, [[0, 1], [-1, 0]])
    total = add_matrices([m1, m2])
    assert total.kind is MatrixKind.COMBINED
    assert total.rows() == ((0, 2), (0, 0))


def test_add_matrices_errors():
    with pytest.raises(UsageError):
        add_matrices([])
    m1 = ConnectionMatrix(ConceptSpace(("a", "b")), [[0, 1], [0, 0]])
    m2 = ConnectionMatrix(ConceptSpace(("a", "c")), [[0, 1], [0, 0]])
    with pytest.raises(StructureError):
        add_matrices([m1, m2])
    rect = RelationalMatrix(ConceptSpace(("a", "b")), ConceptSpace(("x", "y")), [[0, 1], [0, 0]])
    with pytest.raises(StructureError):
        add_matrices([m1, rect])


def test_score_overflow_is_reported():
    space = ConceptSpace(("a", "b"))
    big = 2 ** 62
    with pytest.raises(ScoreOverflowError):
        ConnectionMatrix(space, [[big, 0], [big, 0]], MatrixKind.COMBINED)


# ----------------------------------------------------------------------
# 状态向量与阈值
# ----------------------------------------------------------------------

def test_threshold_update_boundary():
    raw = RawVector(D9, (3, 1, 2, -2, -2, 2, 0, 2, 0))
    assert threshold_update(raw).bits() == "111001010"
    # 0 和负数都记为0，钳制在阈值之后
    raw = RawVector(D9, (0, -1, 0, 0, 0, 0, 0, 0, 1))
    state = threshold_update(raw, {0})
    assert state.bits() == "100000001"
    assert state.clamped == frozenset({0})


def test_threshold_update_rejects_out_of_range_clamp():
    with pytest.raises(StructureError):
        threshold_update(RawVector(D9, (0,) * 9), {9})


def test_state_vector_validation():
    space = ConceptSpace(("a", "b", "c"))
    with pytest.raises(StructureError):
        StateVector(space, (1, 0))
    with pytest.raises(StructureError):
        StateVector(space, (2, 0, 0))
    with pytest.raises(StructureError, match="must be on"):
        StateVector(space, (0, 0, 0), frozenset({1}))


def test_state_vector_from_labels():
    space = ConceptSpace(("a", "b", "c"))
    seed = StateVector.from_labels(space, ["c", "a"])
    assert seed.bits() == "101"
    assert seed.on_labels() == ("a", "c")
    assert seed.clamped == frozenset({0, 2})
    with pytest.raises(UnknownLabelError):
        StateVector.from_labels(space, ["d"])


def test_as_seed_clamps_every_on_coordinate():
    space = ConceptSpace(("a", "b", "c"))
    state = StateVector.from_bits(space, "110")
    assert state.as_seed().clamped == frozenset({0, 1})


def test_mul_state_matrix(fixture_model):
    special = fixture_model("ch4_special_M")
    seed = special.seed("poor_economy")
    raw = mul_state_matrix(seed, special.matrix)
    assert raw.scores == (1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0)


def test_mul_state_matrix_space_mismatch(fixture_model):
    special = fixture_model("ch4_special_M")
    with pytest.raises(StructureError):
        mul_state_matrix(StateVector.zeros(D9), special.matrix)


# ----------------------------------------------------------------------
# 重复检测
# ----------------------------------------------------------------------

def test_find_recurrence_fixed_point():
    pattern = find_recurrence(0, lambda x: min(x + 1, 3), max_iters=10)
    assert pattern.kind is PatternKind.FIXED_POINT
    assert pattern.states == (3,)
    assert pattern.trace == (0, 1, 2, 3)
    assert pattern.iterations == 4
    assert pattern.final_state == 3


def test_find_recurrence_limit_cycle():
    pattern = find_recurrence(5, lambda x: x - 1 if x > 3 else (x + 1) % 3, max_iters=10)
    # 5 → 4 → 3 → 1 → 2 → 0 → 1
    assert pattern.kind is PatternKind.LIMIT_CYCLE
    assert pattern.trace == (5, 4, 3, 1, 2, 0)
    assert pattern.cycle_entry == 3
    assert pattern.states == (1, 2, 0)
    assert pattern.period == 3


def test_find_recurrence_iteration_limit():
    with pytest.raises(IterationLimitError) as exc_info:
        find_recurrence(0, lambda x: x + 1, max_iters=2)
    assert exc_info.value.max_iters == 2


def test_default_max_iters():
    assert default_max_iters(2 ** 11) == 2048
    assert default_max_iters(2 ** 40, cap=1000) == 1000


def test_minimal_period():
    assert minimal_period(("a", "b", "a", "b")) == 2
    assert minimal_period(("a", "a", "a")) == 1
    assert minimal_period(("a", "b", "c")) == 3


def test_render_cycle():
    assert render_cycle(["0110"]) == "0110"
    assert render_cycle(["01", "10"]) == "cycle[2]=01|10"


# ----------------------------------------------------------------------
# 反馈环
# ----------------------------------------------------------------------

def test_feedback_cycle_of_special_map(fixture_model):
    matrix = fixture_model("ch4_special_M").matrix
    cycle = find_feedback_cycle(matrix)
    assert cycle[0] == cycle[-1]
    for u, v in zip(cycle, cycle[1:]):
        assert matrix.entries[matrix.space.index(u), matrix.space.index(v)] != 0


def test_feedback_cycle_is_a_closed_walk():
    space = ConceptSpace(("a", "b", "c", "d"))
    matrix = ConnectionMatrix(space, [[0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1], [0, 1, 0, 0]])
    cycle = find_feedback_cycle(matrix)
    assert cycle[0] == cycle[-1]
    assert sorted(cycle[:-1]) == ["b", "c", "d"]


def test_upper_triangular_map_has_no_feedback():
    space = ConceptSpace(("a", "b", "c"))
    matrix = ConnectionMatrix(space, [[0, 1, -1], [0, 0, 1], [0, 0, 0]])
    assert find_feedback_cycle(matrix) is None


def test_self_loops_are_not_feedback():
    adjacency = np.array([[True, False], [False, True]])
    assert find_cycle_in_adjacency(("a", "b"), adjacency) is None
    assert build_digraph(("a", "b"), adjacency).number_of_edges() == 0
