"""
FLCM / FLRM 模型

功能：
- FlcmModel：方阵语言矩阵上的模糊语言认知映射，隐藏模式由 compose 反复迭代得到
- FlrmModel：定义域 × 值域语言矩阵上的模糊语言关系映射，正向/反向交替迭代
- 两者的重复检测都复用 core.patterns.find_recurrence
"""

import logging
from typing import Mapping

import numpy as np

from core.errors import MatrixKindError, StructureError, UsageError
from core.graph import find_cycle_in_adjacency
from core.patterns import MAX_ITERS_CAP, HiddenPattern, find_recurrence
from core.spaces import ConceptSpace, require_same_space
from maps.base import BaseMap
from maps.frm import HiddenPair, Side
from maps.linguistic.algebra import (
    LinguisticMatrix,
    LinguisticState,
    clamp_state,
    compose,
    compose_raw,
)
from maps.linguistic.chain import CompositionOperator, LinguisticChain


logger = logging.getLogger(__name__)


class FlcmModel(BaseMap):
    """
    模糊语言认知映射

    使用示例:
        model = FlcmModel(matrix, name="ch7_flcm_M")
        pattern = model.solve(model.seed(P1="high"))
        pattern.final_state.render()
    """

    def __init__(
        self,
        matrix: LinguisticMatrix,
        name: str | None = None,
        allow_diagonal: bool = False,
        operator: CompositionOperator | str = CompositionOperator.MAX_MIN,
    ):
        super().__init__(name=name)
        if not matrix.is_square:
            raise StructureError(f"FLCM '{self.name}' needs a square linguistic matrix")
        if not allow_diagonal:
            diagonal = np.flatnonzero(np.diagonal(matrix.entries))
            if diagonal.size:
                label = matrix.rows.label(int(diagonal[0]))
                raise MatrixKindError(
                    f"FLCM '{self.name}' has a non-'0' diagonal entry at '{label}', "
                    f"set ALLOW_DIAGONAL to accept it"
                )
        self.matrix = matrix
        self.allow_diagonal = allow_diagonal
        self.operator = CompositionOperator(operator)

    @property
    def space(self) -> ConceptSpace:
        return self.matrix.rows

    @property
    def chain(self) -> LinguisticChain:
        return self.matrix.chain

    @property
    def state_count(self) -> int:
        return self.chain.size ** self.space.dimension

    def seed(self, assignments: Mapping[str, str] | None = None, **terms: str) -> LinguisticState:
        return LinguisticState.from_assignments(self.space, self.chain, {**(assignments or {}), **terms})

    def solve(
        self,
        seed: LinguisticState,
        max_iters: int | None = None,
        operator: CompositionOperator | str | None = None,
    ) -> HiddenPattern[LinguisticState]:
        return flcm_hidden_pattern(self, seed, operator or self.operator, max_iters)

    def has_feedback(self) -> bool:
        # 与 FCM 相同：非 "0" 的非对角元素构成的有向图中是否有环
        return find_cycle_in_adjacency(self.space.labels, self.matrix.entries != 0) is not None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FlcmModel):
            return NotImplemented
        return self.matrix == other.matrix and self.allow_diagonal == other.allow_diagonal

    __hash__ = None

    def __repr__(self) -> str:
        return f"FlcmModel(name={self.name}, n={self.space.dimension}, chain={self.chain.size})"


def flcm_hidden_pattern(
    model: FlcmModel,
    seed: LinguisticState,
    operator: CompositionOperator | str = CompositionOperator.MAX_MIN,
    max_iters: int | None = None,
    cap: int = MAX_ITERS_CAP,
) -> HiddenPattern[LinguisticState]:
    """
    求 FLCM 的隐藏模式

    Args:
        model: FLCM 模型
        seed: 至少有一个非 "0" 坐标的种子，非 "0" 坐标都会被钳制
        operator: 合成算子，默认 max-min
        max_iters: 迭代上限，默认 min(k^n, cap)

    Raises:
        UsageError: 种子全为 "0"
        StructureError: 种子空间与模型不一致
        IterationLimitError: 达到迭代上限
    """
    if seed.is_zero():
        raise UsageError("FLCM seed must set at least one concept above '0'")
    require_same_space(model.space, seed.space, f"FLCM '{model.name}' seed")
    operator = CompositionOperator(operator)
    seed = seed.as_seed()
    limit = model.resolve_max_iters(max_iters, cap)

    def step(state: LinguisticState) -> LinguisticState:
        return compose(state, model.matrix, operator)

    logger.debug(f"FLCM '{model.name}' solving from {seed} with {operator.value}")
    pattern = find_recurrence(seed, step, limit, describe=LinguisticState.render)
    logger.info(
        f"FLCM '{model.name}' seed {seed} -> {pattern.kind.value} "
        f"(period={pattern.period}, iters={pattern.iterations})"
    )
    return pattern


class FlrmModel(BaseMap):
    """
    模糊语言关系映射

    定义域与值域的标签必须互不相同。
    """

    def __init__(
        self,
        matrix: LinguisticMatrix,
        name: str | None = None,
        operator: CompositionOperator | str = CompositionOperator.MAX_MIN,
    ):
        super().__init__(name=name)
        shared = set(matrix.rows.labels) & set(matrix.columns.labels)
        if shared:
            raise StructureError(
                f"FLRM '{self.name}': domain and range labels must be disjoint; "
                f"shared: {', '.join(sorted(shared))}"
            )
        self.matrix = matrix
        self.operator = CompositionOperator(operator)
        self._transposed = matrix.transpose()

    @property
    def domain(self) -> ConceptSpace:
        return self.matrix.rows

    @property
    def range(self) -> ConceptSpace:
        return self.matrix.columns

    @property
    def chain(self) -> LinguisticChain:
        return self.matrix.chain

    @property
    def state_count(self) -> int:
        return self.chain.size ** self.domain.dimension

    def domain_seed(self, assignments: Mapping[str, str] | None = None, **terms: str) -> LinguisticState:
        return LinguisticState.from_assignments(self.domain, self.chain, {**(assignments or {}), **terms})

    def range_seed(self, assignments: Mapping[str, str] | None = None, **terms: str) -> LinguisticState:
        return LinguisticState.from_assignments(self.range, self.chain, {**(assignments or {}), **terms})

    def side_of(self, state: LinguisticState) -> Side:
        if state.space == self.domain:
            return Side.DOMAIN
        if state.space == self.range:
            return Side.RANGE
        raise StructureError(
            f"FLRM '{self.name}': state space {state.space.describe()} is neither the "
            f"domain nor the range"
        )

    def solve(
        self,
        seed: LinguisticState,
        max_iters: int | None = None,
        operator: CompositionOperator | str | None = None,
    ) -> HiddenPair:
        return flrm_hidden_pair(self, seed, operator or self.operator, max_iters)

    def has_feedback(self) -> bool:
        return bool(self.matrix.entries.any())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FlrmModel):
            return NotImplemented
        return self.matrix == other.matrix

    __hash__ = None

    def __repr__(self) -> str:
        n, m = self.matrix.shape
        return f"FlrmModel(name={self.name}, {n}x{m}, chain={self.chain.size})"


def flrm_forward(
    model: FlrmModel,
    x: LinguisticState,
    operator: CompositionOperator | str = CompositionOperator.MAX_MIN,
) -> LinguisticState:
    """定义域状态与关系矩阵合成：X∘M"""
    require_same_space(model.domain, x.space, f"FLRM '{model.name}' forward")
    return compose_raw(x, model.matrix, operator)


def flrm_backward(
    model: FlrmModel,
    y: LinguisticState,
    operator: CompositionOperator | str = CompositionOperator.MAX_MIN,
) -> LinguisticState:
    """值域状态与转置矩阵合成：Y∘Mᵗ"""
    require_same_space(model.range, y.space, f"FLRM '{model.name}' backward")
    return compose_raw(y, model._transposed, operator)


def flrm_hidden_pair(
    model: FlrmModel,
    seed: LinguisticState,
    operator: CompositionOperator | str = CompositionOperator.MAX_MIN,
    max_iters: int | None = None,
    cap: int = MAX_ITERS_CAP,
) -> HiddenPair:
    """
    求 FLRM 的隐藏对

    与 FRM 相同的调度：只钳制种子所在一侧；值域种子的第一步是反向合成；
    重复检测在定义域状态上进行。

    Raises:
        UsageError: 种子全为 "0"
        StructureError: 种子既不在定义域也不在值域
        IterationLimitError: 达到迭代上限
    """
    if seed.is_zero():
        raise UsageError("FLRM seed must set at least one concept above '0'")
    operator = CompositionOperator(operator)
    side = model.side_of(seed)
    seed = seed.as_seed()
    limit = model.resolve_max_iters(max_iters, cap)

    if side is Side.DOMAIN:
        domain_clamps, range_clamps = seed.clamped, ()
        start = seed
    else:
        domain_clamps, range_clamps = (), seed.clamped
        start = flrm_backward(model, seed, operator)

    def produce(x: LinguisticState) -> LinguisticState:
        return clamp_state(flrm_forward(model, x, operator), range_clamps)

    def step(x: LinguisticState) -> LinguisticState:
        return clamp_state(flrm_backward(model, produce(x), operator), domain_clamps)

    logger.debug(f"FLRM '{model.name}' solving from {side.value} seed {seed} with {operator.value}")
    domain_pattern = find_recurrence(start, step, limit, describe=LinguisticState.render)

    range_trace = tuple(produce(x) for x in domain_pattern.trace)
    range_pattern = HiddenPattern(
        domain_pattern.kind,
        range_trace[domain_pattern.cycle_entry:],
        range_trace,
        domain_pattern.cycle_entry,
    )
    result = HiddenPair(domain_pattern, range_pattern, side)

    x_star, y_star = result.pair
    logger.info(
        f"FLRM '{model.name}' {side.value} seed {seed} -> {result.kind.value} "
        f"{{{x_star}, {y_star}}} (iters={result.iterations})"
    )
    return result
