"""
状态向量与阈值更新

功能：
- StateVector：二值状态向量，记录初始开启（被钳制）的坐标
- RawVector：阈值化之前的整数得分
- mul_state_matrix / threshold_update：所有清晰（crisp）引擎共用的单步语义
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from core.errors import StructureError
from core.matrices import ConnectionMatrix
from core.spaces import ConceptSpace, require_same_space


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StateVector:
    """
    瞬时状态向量 (a_1, ..., a_n)，a_i ∈ {0, 1}

    clamped 记录种子中开启的坐标，每一步更新后都会被强制置1。

    使用示例:
        seed = StateVector.from_labels(space, ["poor_economy"])
        seed.bits()        # "00000000010"
        seed.on_labels()   # ("poor_economy",)
    """

    space: ConceptSpace
    values: tuple[int, ...]
    clamped: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        clamped = frozenset(int(i) for i in self.clamped)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "clamped", clamped)

        if len(values) != self.space.dimension:
            raise StructureError(
                f"State has {len(values)} values for a space of dimension {self.space.dimension}"
            )
        if any(v not in (0, 1) for v in values):
            raise StructureError(f"State values must be 0 or 1, got {values}")
        for i in clamped:
            if not 0 <= i < len(values):
                raise StructureError(f"Clamped index {i} is out of range")
            if values[i] != 1:
                raise StructureError(
                    f"Clamped coordinate '{self.space.label(i)}' must be on"
                )

    @classmethod
    def zeros(cls, space: ConceptSpace) -> "StateVector":
        return cls(space, (0,) * space.dimension)

    @classmethod
    def from_labels(cls, space: ConceptSpace, labels: Iterable[str]) -> "StateVector":
        """按标签构造种子：给出的坐标开启并钳制"""
        on = {space.index(label) for label in labels}
        values = tuple(1 if i in on else 0 for i in range(space.dimension))
        return cls(space, values, frozenset(on))

    @classmethod
    def from_bits(cls, space: ConceptSpace, bits: str, clamped: Iterable[int] = ()) -> "StateVector":
        """从 "0110" 形式的字符串构造（主要用于测试和报告解析）"""
        return cls(space, tuple(int(ch) for ch in bits), frozenset(clamped))

    def as_seed(self) -> "StateVector":
        """种子中所有开启的坐标都被钳制"""
        on = frozenset(i for i, v in enumerate(self.values) if v)
        if on == self.clamped:
            return self
        return StateVector(self.space, self.values, on)

    def bits(self) -> str:
        return "".join(str(v) for v in self.values)

    def on_labels(self) -> tuple[str, ...]:
        return tuple(self.space.label(i) for i, v in enumerate(self.values) if v)

    def is_zero(self) -> bool:
        return not any(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.int64)

    def __str__(self) -> str:
        return self.bits()


@dataclass(frozen=True)
class RawVector:
    """阈值化之前的整数得分，例如 (3 1 2 -2 -2 2 0 2 0)"""

    space: ConceptSpace
    scores: tuple[int, ...]

    def __post_init__(self):
        scores = tuple(int(v) for v in self.scores)
        object.__setattr__(self, "scores", scores)
        if len(scores) != self.space.dimension:
            raise StructureError(
                f"Raw vector has {len(scores)} scores for a space of dimension {self.space.dimension}"
            )

    @classmethod
    def from_array(cls, space: ConceptSpace, array: np.ndarray) -> "RawVector":
        return cls(space, tuple(int(v) for v in array))

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.scores)


def mul_state_matrix(state: StateVector, matrix: ConnectionMatrix) -> RawVector:
    """
    状态向量乘连接矩阵

    Args:
        state: 当前状态
        matrix: 同一概念空间上的连接矩阵

    Returns:
        scores[j] = Σ_i values[i]·entries[i][j]

    Raises:
        StructureError: 概念空间不一致
    """
    require_same_space(matrix.space, state.space, "mul_state_matrix")
    return RawVector.from_array(state.space, matrix.apply(state.as_array()))


def threshold_update(raw: RawVector, clamped: Iterable[int] = ()) -> StateVector:
    """
    阈值化并更新

    得分 ≥ 1 记为1，其余（0和负数）记为0；随后钳制坐标强制为1。

    Args:
        raw: 原始得分
        clamped: 需要保持开启的坐标下标

    Returns:
        带有相同钳制集合的二值状态
    """
    clamped = frozenset(clamped)
    n = raw.space.dimension
    for i in clamped:
        if not 0 <= i < n:
            raise StructureError(f"Clamped index {i} is out of range for dimension {n}")

    values = [1 if score >= 1 else 0 for score in raw.scores]
    for i in clamped:
        values[i] = 1
    return StateVector(raw.space, tuple(values), clamped)
