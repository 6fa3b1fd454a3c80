"""
FCRM 双模型

功能：
- FcrmBimodel：FCM 连接矩阵 M₁ 与 FRM 关系矩阵 M₂ 组成的 CR 双矩阵 M₁ ∪ M₂
- StateBivector：状态双向量 A₁ ∪ A₂
- bihidden_pattern：两个分量各自演化（AM = A₁M₁ ∪ A₂M₂，分量之间没有耦合）
- special_transpose：M^{t1}、M^{t2}、M^t 三种特殊转置
- combine_fcrms：多个双模型按分量相加
- aligned_trace：按步数对齐两个分量的轨迹
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from core.errors import StructureError, UsageError
from core.matrices import ConnectionMatrix, RelationalMatrix
from core.patterns import MAX_ITERS_CAP, HiddenPattern, PatternKind
from core.states import StateVector
from maps.fcm import FcmModel, combine_fcms
from maps.fcm import solve_component as solve_fcm_component
from maps.frm import FrmModel, HiddenPair, Side, combine_frms
from maps.frm import solve_component as solve_frm_component
from maps.base import BaseMap


logger = logging.getLogger(__name__)


class TransposeMode(str, Enum):
    """特殊转置方式"""
    FIRST = "t1"    # 只转置第一个分量
    SECOND = "t2"   # 只转置第二个分量
    BOTH = "t"      # 两个分量都转置


@dataclass(frozen=True)
class StateBivector:
    """
    状态双向量 A = A₁ ∪ A₂

    first 在 FCM 概念空间上；second 在 FRM 的定义域或值域上，由 side 标明。
    """

    first: StateVector
    second: StateVector
    side: Side

    @classmethod
    def from_labels(
        cls,
        bimodel: "FcrmBimodel",
        fcm_labels: Iterable[str] = (),
        frm_labels: Iterable[str] = (),
        side: Side = Side.DOMAIN,
    ) -> "StateBivector":
        """
        按标签构造种子双向量

        使用示例:
            seed = StateBivector.from_labels(b, ["poor_economy"], ["R1"], Side.RANGE)
        """
        side = Side(side)
        space = bimodel.second.domain if side is Side.DOMAIN else bimodel.second.range
        first = StateVector.from_labels(bimodel.first.space, fcm_labels)
        second = StateVector.from_labels(space, frm_labels)
        return cls(first, second, side)

    def describe(self) -> str:
        return f"({self.first.bits()}) ∪ {self.side.value}({self.second.bits()})"


@dataclass(frozen=True)
class BihiddenPattern:
    """
    隐藏双模式

    两个分量都是不动点时为 fixed_bipoint，否则为 limit_bicycle。
    """

    first: HiddenPattern[StateVector]
    second: HiddenPair

    @property
    def kind(self) -> PatternKind:
        if self.first.is_fixed_point and self.second.is_fixed:
            return PatternKind.FIXED_BIPOINT
        return PatternKind.LIMIT_BICYCLE

    @property
    def iterations(self) -> int:
        return max(self.first.iterations, self.second.iterations)


class FcrmBimodel(BaseMap):
    """
    FCRM 双模型

    identify=True 表示 FCM 的概念与 FRM 定义域的概念是同一批节点，
    此时两者必须逐个标签一致。

    使用示例:
        bimodel = build_bimodel(fcm, frm, identify=False)
        seed = StateBivector.from_labels(bimodel, ["poor_economy"], ["R1"], Side.RANGE)
        pattern = bimodel.solve(seed)
        pattern.kind   # PatternKind.FIXED_BIPOINT
    """

    def __init__(
        self,
        first: FcmModel,
        second: FrmModel,
        identify: bool = False,
        name: str | None = None,
    ):
        super().__init__(name=name)
        self.first = first
        self.second = second
        self.identify = identify

    @property
    def state_count(self) -> int:
        return max(self.first.state_count, self.second.state_count)

    def solve(self, seed: StateBivector, max_iters: int | None = None) -> BihiddenPattern:
        return bihidden_pattern(self, seed, max_iters)

    def has_feedback(self) -> bool:
        return self.is_bicyclic()

    def is_bicyclic(self) -> bool:
        """FCM 分量存在有向环且 FRM 分量至少有一条边时存在有向双环"""
        return self.first.has_feedback() and self.second.has_feedback()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FcrmBimodel):
            return NotImplemented
        return (
            self.first == other.first
            and self.second == other.second
            and self.identify == other.identify
        )

    __hash__ = None

    def __repr__(self) -> str:
        return (
            f"FcrmBimodel(name={self.name}, first={self.first!r}, "
            f"second={self.second!r}, identify={self.identify})"
        )


def build_bimodel(
    fcm: FcmModel,
    frm: FrmModel,
    identify: bool = False,
    name: str | None = None,
) -> FcrmBimodel:
    """
    构造并校验双模型

    Raises:
        StructureError: identify=True 但 FCM 概念与 FRM 定义域不一致（指出第一个不同的标签）
    """
    if identify:
        position = fcm.space.first_difference(frm.domain)
        if position is not None:
            fcm_label = fcm.space.labels[position] if position < fcm.space.dimension else "<none>"
            frm_label = frm.domain.labels[position] if position < frm.domain.dimension else "<none>"
            raise StructureError(
                f"IDENTIFY requires FCM concepts to equal the FRM domain; "
                f"first difference at position {position + 1}: "
                f"'{fcm_label}' vs '{frm_label}'"
            )

    bimodel = FcrmBimodel(fcm, frm, identify=identify, name=name)
    logger.info(f"Built bimodel {bimodel!r}")
    return bimodel


def special_transpose(
    bimodel: FcrmBimodel,
    mode: TransposeMode | str,
) -> tuple[ConnectionMatrix, RelationalMatrix]:
    """
    特殊转置

    Returns:
        t1 → (M₁ᵗ, M₂)；t2 → (M₁, M₂ᵗ)；t → (M₁ᵗ, M₂ᵗ)
    """
    mode = TransposeMode(mode)
    m1 = bimodel.first.matrix
    m2 = bimodel.second.matrix
    if mode is TransposeMode.FIRST:
        return m1.transpose(), m2
    if mode is TransposeMode.SECOND:
        return m1, m2.transpose()
    return m1.transpose(), m2.transpose()


def bihidden_pattern(
    bimodel: FcrmBimodel,
    seed: StateBivector,
    max_iters: int | None = None,
    cap: int = MAX_ITERS_CAP,
) -> BihiddenPattern:
    """
    求隐藏双模式

    两个分量独立求解，各自使用自己的钳制集合；全零分量保持为零。

    Raises:
        UsageError: 两个分量都为零
        StructureError: 分量维度与双模型不一致
        IterationLimitError: 任一分量达到迭代上限
    """
    if seed.first.is_zero() and seed.second.is_zero():
        raise UsageError("FCRM seed must switch on at least one concept")

    expected = bimodel.second.domain if seed.side is Side.DOMAIN else bimodel.second.range
    if seed.second.space != expected:
        raise StructureError(
            f"FCRM seed second component is tagged {seed.side.value} but does not "
            f"match the FRM {seed.side.value} {expected.describe()}"
        )

    logger.debug(f"FCRM '{bimodel.name}' solving from {seed.describe()}")
    first = solve_fcm_component(bimodel.first, seed.first, max_iters, cap)
    second = solve_frm_component(bimodel.second, seed.second, max_iters, cap)

    result = BihiddenPattern(first, second)
    logger.info(f"FCRM '{bimodel.name}' seed {seed.describe()} -> {result.kind.value}")
    return result


def _extend(pattern: HiddenPattern[StateVector], length: int) -> list[StateVector]:
    # 轨迹走完后沿着自身的循环继续（不动点即重复最后状态）
    states = list(pattern.trace)
    cycle = pattern.states
    position = 0
    while len(states) < length:
        states.append(cycle[position % len(cycle)])
        position += 1
    return states


def aligned_trace(pattern: BihiddenPattern) -> list[tuple[StateVector, StateVector, StateVector]]:
    """
    按步数对齐的轨迹：(FCM 状态, 定义域状态, 值域状态)

    较短的分量沿着自己的循环继续。
    """
    length = max(pattern.first.iterations, pattern.second.iterations)
    fcm_states = _extend(pattern.first, length)
    domain_states = _extend(pattern.second.domain_pattern, length)
    range_states = _extend(pattern.second.range_pattern, length)
    return list(zip(fcm_states, domain_states, range_states))


def combine_fcrms(bimodels: Sequence[FcrmBimodel], name: str | None = None) -> FcrmBimodel:
    """
    合并双模型：方阵分量与矩形分量分别相加

    Raises:
        UsageError: 列表为空
        StructureError: 阶数不一致
    """
    bimodels = list(bimodels)
    if not bimodels:
        raise UsageError("combine_fcrms needs at least one bimodel")

    first = combine_fcms([b.first for b in bimodels])
    second = combine_frms([b.second for b in bimodels])
    identify = all(b.identify for b in bimodels)
    return build_bimodel(first, second, identify=identify, name=name or "combined")
