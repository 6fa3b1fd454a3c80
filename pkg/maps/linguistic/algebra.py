"""
语言矩阵与语言状态

功能：
- LinguisticMatrix：元素为链中语言项的矩阵（内部按链中位置存储）
- LinguisticState：模糊状态语言向量，记录种子坐标及其初始语言项
- compose_raw / compose：T∘M 合成，compose 额外执行钳制（取链上较大者）
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from core.errors import StructureError
from core.spaces import ConceptSpace, require_same_space
from maps.linguistic.chain import BOTTOM, CompositionOperator, LinguisticChain


logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LinguisticMatrix:
    """
    语言矩阵（行空间 × 列空间）

    FLCM 的行列空间相同，FLRM 的行空间为定义域、列空间为值域。

    使用示例:
        m = LinguisticMatrix.from_terms(chain, rows, cols, [["0", "high"], ["low", "0"]])
        m.term_at(0, 1)   # "high"
    """

    chain: LinguisticChain
    rows: ConceptSpace
    columns: ConceptSpace
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.int64)
        shape = (self.rows.dimension, self.columns.dimension)
        if entries.shape != shape:
            raise StructureError(f"Linguistic matrix shape {entries.shape} does not match {shape}")
        if entries.size and (entries.min() < 0 or entries.max() >= self.chain.size):
            raise StructureError("Linguistic matrix entries must be positions in the chain")
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_terms(
        cls,
        chain: LinguisticChain,
        rows: ConceptSpace,
        columns: ConceptSpace,
        terms: Sequence[Sequence[str]],
    ) -> "LinguisticMatrix":
        """
        由语言项表格构造

        Raises:
            UnknownTermError: 某个元素不在链中
            StructureError: 形状不符
        """
        if len(terms) != rows.dimension or any(len(row) != columns.dimension for row in terms):
            raise StructureError(
                f"Linguistic matrix needs {rows.dimension} rows of {columns.dimension} terms"
            )
        positions = [[chain.position(t) for t in row] for row in terms]
        return cls(chain, rows, columns, np.array(positions, dtype=np.int64).reshape(
            rows.dimension, columns.dimension
        ))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows.dimension, self.columns.dimension

    @property
    def is_square(self) -> bool:
        return self.rows == self.columns

    def term_at(self, i: int, j: int) -> str:
        return self.chain.term(int(self.entries[i, j]))

    def term_rows(self) -> tuple[tuple[str, ...], ...]:
        return tuple(tuple(self.chain.term(int(v)) for v in row) for row in self.entries)

    def transpose(self) -> "LinguisticMatrix":
        return LinguisticMatrix(self.chain, self.columns, self.rows, self.entries.T.copy())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinguisticMatrix):
            return NotImplemented
        return (
            self.chain == other.chain
            and self.rows == other.rows
            and self.columns == other.columns
            and np.array_equal(self.entries, other.entries)
        )

    __hash__ = None

    def __repr__(self) -> str:
        n, m = self.shape
        return f"LinguisticMatrix({n}x{m}, chain={self.chain.size} terms)"


@dataclass(frozen=True)
class LinguisticState:
    """
    模糊状态语言向量 (s_1, ..., s_n)

    clamped 是 (下标, 种子语言项) 对，钳制时取链上 max(计算值, 种子项)。
    """

    space: ConceptSpace
    chain: LinguisticChain
    values: tuple[str, ...]
    clamped: tuple[tuple[int, str], ...] = field(default_factory=tuple)

    def __post_init__(self):
        values = tuple(self.values)
        clamped = tuple(sorted((int(i), t) for i, t in self.clamped))
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "clamped", clamped)

        if len(values) != self.space.dimension:
            raise StructureError(
                f"Linguistic state has {len(values)} values for a space of dimension "
                f"{self.space.dimension}"
            )
        for term in values:
            self.chain.position(term)
        for i, term in clamped:
            if not 0 <= i < len(values):
                raise StructureError(f"Clamped index {i} is out of range")
            if self.chain.position(values[i]) < self.chain.position(term):
                raise StructureError(
                    f"Clamped coordinate '{self.space.label(i)}' is below its seeded term '{term}'"
                )

    @classmethod
    def zeros(cls, space: ConceptSpace, chain: LinguisticChain) -> "LinguisticState":
        return cls(space, chain, (BOTTOM,) * space.dimension)

    @classmethod
    def from_assignments(
        cls,
        space: ConceptSpace,
        chain: LinguisticChain,
        assignments: Mapping[str, str],
    ) -> "LinguisticState":
        """
        按 {标签: 语言项} 构造种子，非 "0" 的赋值都会被钳制

        使用示例:
            seed = LinguisticState.from_assignments(space, chain, {"P1": "high"})
        """
        values = [BOTTOM] * space.dimension
        for label, term in assignments.items():
            chain.position(term)
            values[space.index(label)] = term
        clamped = tuple((i, t) for i, t in enumerate(values) if t != BOTTOM)
        return cls(space, chain, tuple(values), clamped)

    @classmethod
    def from_positions(
        cls,
        space: ConceptSpace,
        chain: LinguisticChain,
        positions: Iterable[int],
        clamped: Iterable[tuple[int, str]] = (),
    ) -> "LinguisticState":
        return cls(space, chain, tuple(chain.term(int(p)) for p in positions), tuple(clamped))

    def as_seed(self) -> "LinguisticState":
        clamped = tuple((i, t) for i, t in enumerate(self.values) if t != BOTTOM)
        if clamped == self.clamped:
            return self
        return LinguisticState(self.space, self.chain, self.values, clamped)

    def positions(self) -> np.ndarray:
        return self.chain.positions(self.values)

    def term(self, label: str) -> str:
        return self.values[self.space.index(label)]

    def is_zero(self) -> bool:
        return all(t == BOTTOM for t in self.values)

    def render(self) -> str:
        return ",".join(self.values)

    def __str__(self) -> str:
        return f"({', '.join(self.values)})"


def compose_raw(
    state: LinguisticState,
    matrix: LinguisticMatrix,
    op: CompositionOperator | str = CompositionOperator.MAX_MIN,
) -> LinguisticState:
    """
    不带钳制的合成：out[j] = outer_i( inner(state[i], matrix[i][j]) )

    Raises:
        StructureError: 状态空间与矩阵行空间不一致，或链不同
    """
    op = CompositionOperator(op)
    require_same_space(matrix.rows, state.space, "compose")
    if state.chain != matrix.chain:
        raise StructureError(
            f"compose: state chain ({state.chain.describe()}) differs from "
            f"matrix chain ({matrix.chain.describe()})"
        )

    paired = op.inner(state.positions()[:, None], matrix.entries)
    out = op.outer(paired, axis=0)
    return LinguisticState.from_positions(matrix.columns, matrix.chain, out)


def clamp_state(
    state: LinguisticState,
    clamped: Iterable[tuple[int, str]],
) -> LinguisticState:
    """钳制：每个种子坐标取链上 max(当前值, 种子项)"""
    clamped = tuple(clamped)
    values = list(state.values)
    for i, term in clamped:
        if not 0 <= i < len(values):
            raise StructureError(f"Clamped index {i} is out of range for dimension {len(values)}")
        values[i] = state.chain.max_term(values[i], term)
    return LinguisticState(state.space, state.chain, tuple(values), clamped)


def compose(
    state: LinguisticState,
    matrix: LinguisticMatrix,
    op: CompositionOperator | str = CompositionOperator.MAX_MIN,
) -> LinguisticState:
    """
    合成后钳制

    方阵时沿用状态自身的钳制集合；矩形矩阵的输出在另一个空间上，不做钳制。

    使用示例:
        x1 = compose(seed, flcm_matrix, "max-min")
        x1.render()   # "high,0,high,high,0,0,0,0,0,0,medium"
    """
    raw = compose_raw(state, matrix, op)
    if not matrix.is_square:
        return raw
    return clamp_state(raw, state.clamped)
