"""
FCM 模型与隐藏模式求解

功能：
- FcmModel：以连接矩阵为动力系统的模糊认知映射
- hidden_pattern：X → threshold_update(X·M, 种子钳制) 反复迭代直到状态重复
"""

import logging

from core.errors import UsageError
from core.graph import find_feedback_cycle
from core.matrices import ConnectionMatrix, MatrixKind
from core.patterns import MAX_ITERS_CAP, HiddenPattern, find_recurrence
from core.spaces import ConceptSpace, require_same_space
from core.states import StateVector, mul_state_matrix, threshold_update
from maps.base import BaseMap


logger = logging.getLogger(__name__)


class FcmModel(BaseMap):
    """
    模糊认知映射

    使用示例:
        model = FcmModel(matrix, name="special_M")
        seed = StateVector.from_labels(model.space, ["poor_economy"])
        pattern = model.solve(seed)
        pattern.final_state.bits()   # "11100000010"
    """

    def __init__(self, matrix: ConnectionMatrix, name: str | None = None):
        super().__init__(name=name)
        self.matrix = matrix

    @property
    def space(self) -> ConceptSpace:
        return self.matrix.space

    @property
    def kind(self) -> MatrixKind:
        return self.matrix.kind

    @property
    def state_count(self) -> int:
        return 2 ** self.space.dimension

    def seed(self, *labels: str) -> StateVector:
        """按标签构造种子状态"""
        return StateVector.from_labels(self.space, labels)

    def step(self, state: StateVector) -> StateVector:
        """单步：阈值化 X·M 并保持钳制坐标开启"""
        return threshold_update(mul_state_matrix(state, self.matrix), state.clamped)

    def solve(self, seed: StateVector, max_iters: int | None = None) -> HiddenPattern[StateVector]:
        return hidden_pattern(self, seed, max_iters)

    def feedback_cycle(self) -> list[str] | None:
        return find_feedback_cycle(self.matrix)

    def has_feedback(self) -> bool:
        return self.feedback_cycle() is not None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FcmModel):
            return NotImplemented
        return self.matrix == other.matrix

    __hash__ = None

    def __repr__(self) -> str:
        return f"FcmModel(name={self.name}, n={self.space.dimension}, kind={self.kind.value})"


def solve_component(
    model: FcmModel,
    seed: StateVector,
    max_iters: int | None = None,
    cap: int = MAX_ITERS_CAP,
) -> HiddenPattern[StateVector]:
    """
    不检查种子是否为零的求解（FCRM 中未播种的分量保持为零向量）
    """
    require_same_space(model.space, seed.space, f"FCM '{model.name}' seed")
    seed = seed.as_seed()
    limit = model.resolve_max_iters(max_iters, cap)

    logger.debug(f"FCM '{model.name}' solving from seed {seed.bits()} (max_iters={limit})")
    pattern = find_recurrence(seed, model.step, limit, describe=StateVector.bits)
    logger.info(
        f"FCM '{model.name}' seed {seed.bits()} -> {pattern.kind.value} "
        f"(period={pattern.period}, iters={pattern.iterations})"
    )
    return pattern


def hidden_pattern(
    model: FcmModel,
    seed: StateVector,
    max_iters: int | None = None,
    cap: int = MAX_ITERS_CAP,
) -> HiddenPattern[StateVector]:
    """
    求 FCM 的隐藏模式

    Args:
        model: FCM 模型
        seed: 非零种子，所有开启坐标都会被钳制
        max_iters: 迭代上限，默认 min(2^n, cap)
        cap: 默认上限的绝对值

    Returns:
        不动点或极限环

    Raises:
        UsageError: 种子为零向量
        StructureError: 种子与模型的概念空间不一致
        IterationLimitError: 达到迭代上限
    """
    if seed.is_zero():
        raise UsageError("FCM seed must switch on at least one concept")
    return solve_component(model, seed, max_iters, cap)
