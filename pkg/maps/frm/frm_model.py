"""
FRM 模型与隐藏对求解

功能：
- FrmModel：定义域 D_1..D_n 与值域 R_1..R_m 之间的关系矩阵
- forward / backward：X·M 与 Y·Mᵗ
- hidden_pair：定义域与值域交替迭代，直到定义域状态重复
- combine_frms：多位专家关系矩阵的逐元素相加
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from core.errors import StructureError, UsageError
from core.matrices import MatrixKind, RelationalMatrix, add_matrices
from core.patterns import (
    MAX_ITERS_CAP,
    HiddenPattern,
    PatternKind,
    find_recurrence,
    minimal_period,
)
from core.spaces import ConceptSpace, require_same_space
from core.states import RawVector, StateVector, threshold_update
from maps.base import BaseMap


logger = logging.getLogger(__name__)


class Side(str, Enum):
    """种子所在的一侧"""
    DOMAIN = "domain"
    RANGE = "range"


@dataclass(frozen=True)
class HiddenPair:
    """
    FRM 的隐藏模式：定义域模式与值域模式成对出现

    range_pattern.trace[i] 由 domain_pattern.trace[i] 正向一步得到，
    因此报告的对是（最后的定义域状态，由它产生的值域状态）。
    """

    domain_pattern: HiddenPattern[StateVector]
    range_pattern: HiddenPattern[StateVector]
    seed_side: Side

    @property
    def kind(self) -> PatternKind:
        if self.domain_pattern.is_fixed_point:
            return PatternKind.FIXED_PAIR
        return PatternKind.LIMIT_CYCLE_PAIR

    @property
    def is_fixed(self) -> bool:
        return self.kind is PatternKind.FIXED_PAIR

    @property
    def period(self) -> int:
        return self.domain_pattern.period

    @property
    def iterations(self) -> int:
        return self.domain_pattern.iterations

    @property
    def period_mismatch(self) -> bool:
        """值域循环的最小周期与定义域不同（诊断用）"""
        return minimal_period(self.range_pattern.states) != self.domain_pattern.period

    @property
    def pair(self) -> tuple[StateVector, StateVector]:
        """不动对 (X*, Y*)；极限环时返回最后访问的一对"""
        if self.is_fixed:
            return self.domain_pattern.states[0], self.range_pattern.states[0]
        return self.domain_pattern.trace[-1], self.range_pattern.trace[-1]


class FrmModel(BaseMap):
    """
    模糊关系映射

    使用示例:
        model = FrmModel(matrix, name="public_T")
        pair = model.solve(model.domain_seed("D1"))
        pair.pair[1].bits()   # "01111001111"
    """

    def __init__(self, matrix: RelationalMatrix, name: str | None = None):
        super().__init__(name=name)
        self.matrix = matrix
        self._transposed = matrix.transpose()

    @property
    def domain(self) -> ConceptSpace:
        return self.matrix.domain

    @property
    def range(self) -> ConceptSpace:
        return self.matrix.range

    @property
    def kind(self) -> MatrixKind:
        return self.matrix.kind

    @property
    def state_count(self) -> int:
        # 重复检测在定义域状态上进行
        return 2 ** self.domain.dimension

    def domain_seed(self, *labels: str) -> StateVector:
        return StateVector.from_labels(self.domain, labels)

    def range_seed(self, *labels: str) -> StateVector:
        return StateVector.from_labels(self.range, labels)

    def side_of(self, state: StateVector) -> Side:
        """根据状态所在的概念空间判断它属于定义域还是值域"""
        if state.space == self.domain:
            return Side.DOMAIN
        if state.space == self.range:
            return Side.RANGE
        raise StructureError(
            f"FRM '{self.name}': state space {state.space.describe()} is neither the "
            f"domain {self.domain.describe()} nor the range {self.range.describe()}"
        )

    def solve(self, seed: StateVector, max_iters: int | None = None) -> HiddenPair:
        return hidden_pair(self, seed, max_iters)

    def has_feedback(self) -> bool:
        # 任意一条边 D→R 在交替迭代中都会回到 D
        return bool(self.matrix.entries.any())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FrmModel):
            return NotImplemented
        return self.matrix == other.matrix

    __hash__ = None

    def __repr__(self) -> str:
        n, m = self.matrix.shape
        return f"FrmModel(name={self.name}, {n}x{m}, kind={self.kind.value})"


def forward(model: FrmModel, x: StateVector) -> RawVector:
    """定义域状态乘关系矩阵：scores[j] = Σ_i x[i]·M[i][j]"""
    require_same_space(model.domain, x.space, f"FRM '{model.name}' forward")
    return RawVector.from_array(model.range, model.matrix.apply(x.as_array()))


def backward(model: FrmModel, y: StateVector) -> RawVector:
    """值域状态乘转置矩阵：scores[i] = Σ_j y[j]·M[i][j]"""
    require_same_space(model.range, y.space, f"FRM '{model.name}' backward")
    return RawVector.from_array(model.domain, model._transposed.apply(y.as_array()))


def solve_component(
    model: FrmModel,
    seed: StateVector,
    max_iters: int | None = None,
    cap: int = MAX_ITERS_CAP,
) -> HiddenPair:
    """
    不检查种子是否为零的求解（供 FCRM 使用）

    只钳制种子所在一侧；值域种子的第一步是反向乘法。
    """
    side = model.side_of(seed)
    seed = seed.as_seed()
    limit = model.resolve_max_iters(max_iters, cap)

    if side is Side.DOMAIN:
        domain_clamps, range_clamps = seed.clamped, frozenset()
        start = seed
    else:
        domain_clamps, range_clamps = frozenset(), seed.clamped
        start = threshold_update(backward(model, seed), domain_clamps)

    def produce(x: StateVector) -> StateVector:
        return threshold_update(forward(model, x), range_clamps)

    def step(x: StateVector) -> StateVector:
        return threshold_update(backward(model, produce(x)), domain_clamps)

    logger.debug(
        f"FRM '{model.name}' solving from {side.value} seed {seed.bits()} (max_iters={limit})"
    )
    domain_pattern = find_recurrence(start, step, limit, describe=StateVector.bits)

    range_trace = tuple(produce(x) for x in domain_pattern.trace)
    range_states = range_trace[domain_pattern.cycle_entry:]
    range_pattern = HiddenPattern(
        domain_pattern.kind, range_states, range_trace, domain_pattern.cycle_entry
    )

    result = HiddenPair(domain_pattern, range_pattern, side)
    if result.period_mismatch:
        logger.warning(
            f"FRM '{model.name}': range cycle period differs from domain period {result.period}"
        )

    x_star, y_star = result.pair
    logger.info(
        f"FRM '{model.name}' {side.value} seed {seed.bits()} -> {result.kind.value} "
        f"{{({x_star.bits()}), ({y_star.bits()})}} (iters={result.iterations})"
    )
    return result


def hidden_pair(
    model: FrmModel,
    seed: StateVector,
    max_iters: int | None = None,
    cap: int = MAX_ITERS_CAP,
) -> HiddenPair:
    """
    求 FRM 的隐藏对

    Args:
        model: FRM 模型
        seed: 定义域或值域上的非零种子
        max_iters: 定义域步数上限，默认 min(2^n, cap)

    Returns:
        不动对或成对的极限环

    Raises:
        UsageError: 种子为零向量
        StructureError: 种子既不在定义域也不在值域
        IterationLimitError: 达到迭代上限
    """
    if seed.is_zero():
        raise UsageError("FRM seed must switch on at least one concept")
    return solve_component(model, seed, max_iters, cap)


def combine_frms(models: Sequence[FrmModel], name: str | None = None) -> FrmModel:
    """合并多位专家的 FRM（关系矩阵逐元素相加，kind=combined）"""
    models = list(models)
    if not models:
        raise UsageError("combine_frms needs at least one model")
    matrix = add_matrices([m.matrix for m in models])
    return FrmModel(matrix, name=name or "combined")
