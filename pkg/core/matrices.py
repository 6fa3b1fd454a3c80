"""
整数矩阵

功能：
- ConnectionMatrix：概念空间上的方阵（FCM）
- RelationalMatrix：定义域 × 值域的矩形矩阵（FRM）
- 按类型（simple / positive / combined）校验元素范围和对角线
- 转置与逐元素相加（多位专家矩阵的合并）
- 64位得分溢出保护
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from core.errors import MatrixKindError, ScoreOverflowError, StructureError, UsageError
from core.spaces import ConceptSpace, require_same_space


logger = logging.getLogger(__name__)

INT64_MAX = int(np.iinfo(np.int64).max)


class MatrixKind(str, Enum):
    """矩阵类型"""
    SIMPLE = "simple"        # 元素取自 {-1, 0, 1}
    POSITIVE = "positive"    # 元素取自 {0, 1}
    COMBINED = "combined"    # 多个矩阵相加得到的任意整数


ALLOWED_ENTRIES = {
    MatrixKind.SIMPLE: {-1, 0, 1},
    MatrixKind.POSITIVE: {0, 1},
}


def _to_entries(rows: Sequence[Sequence[int]] | np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    """把输入转换成只读的 int64 数组，并检查形状和溢出"""
    try:
        raw = np.array(rows, dtype=object)
    except Exception as e:
        raise StructureError(f"Matrix entries are not a rectangular array: {e}") from e

    if raw.ndim != 2 or raw.shape != shape:
        raise StructureError(f"Matrix shape {raw.shape} does not match expected {shape}")

    for value in raw.flat:
        if isinstance(value, (bool, np.bool_)) or not isinstance(value, (int, np.integer)):
            raise StructureError(f"Matrix entry {value!r} is not an integer")

    # 用Python整数计算每列绝对值之和：二值状态向量乘矩阵的得分不会超过它
    column_bound = max((sum(abs(int(v)) for v in column) for column in raw.T), default=0)
    if column_bound > INT64_MAX:
        raise ScoreOverflowError(
            f"Matrix column magnitude {column_bound} exceeds the 64-bit score range"
        )

    entries = raw.astype(np.int64)
    entries.flags.writeable = False
    return entries


def _check_kind(entries: np.ndarray, kind: MatrixKind, what: str) -> None:
    allowed = ALLOWED_ENTRIES.get(kind)
    if allowed is None:
        return
    bad = np.argwhere(~np.isin(entries, list(allowed)))
    if bad.size:
        i, j = (int(x) for x in bad[0])
        raise MatrixKindError(
            f"{what}: entry ({i + 1},{j + 1}) = {int(entries[i, j])} "
            f"is outside {sorted(allowed)} required for kind={kind.value}"
        )


@dataclass(frozen=True, eq=False)
class ConnectionMatrix:
    """
    FCM 连接矩阵（n×n）

    simple/positive 类型要求对角线为0（概念不能直接影响自己），
    除非显式设置 allow_diagonal；combined 类型不检查对角线。

    使用示例:
        space = ConceptSpace(("a", "b"))
        m = ConnectionMatrix(space, [[0, 1], [-1, 0]])
        m.kind   # MatrixKind.SIMPLE
    """

    space: ConceptSpace
    entries: np.ndarray
    kind: MatrixKind = MatrixKind.SIMPLE
    allow_diagonal: bool = False

    def __post_init__(self):
        kind = MatrixKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is MatrixKind.COMBINED:
            # combined 矩阵本身允许对角线，开关没有意义
            object.__setattr__(self, "allow_diagonal", False)
        n = self.space.dimension
        entries = _to_entries(self.entries, (n, n))
        object.__setattr__(self, "entries", entries)

        _check_kind(entries, kind, "Connection matrix")

        if kind is not MatrixKind.COMBINED and not self.allow_diagonal:
            diagonal = np.flatnonzero(np.diagonal(entries))
            if diagonal.size:
                label = self.space.label(int(diagonal[0]))
                raise MatrixKindError(
                    f"Connection matrix has nonzero diagonal entry at '{label}'; "
                    f"a concept cannot cause itself (zero-diagonal rule), "
                    f"set ALLOW_DIAGONAL to accept it"
                )

    @property
    def dimension(self) -> int:
        return self.space.dimension

    def apply(self, vector: Sequence[int] | np.ndarray) -> np.ndarray:
        """行向量乘矩阵：result[j] = Σ_i vector[i]·entries[i][j]"""
        x = np.asarray(vector, dtype=np.int64)
        if x.shape != (self.dimension,):
            raise StructureError(
                f"Vector of length {x.shape} cannot multiply a {self.dimension}x{self.dimension} matrix"
            )
        return x @ self.entries

    def transpose(self) -> "ConnectionMatrix":
        return ConnectionMatrix(
            self.space, self.entries.T.copy(), self.kind, self.allow_diagonal
        )

    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in row) for row in self.entries)

    def row(self, label: str) -> tuple[int, ...]:
        return tuple(int(v) for v in self.entries[self.space.index(label)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConnectionMatrix):
            return NotImplemented
        return (
            self.space == other.space
            and self.kind == other.kind
            and self.allow_diagonal == other.allow_diagonal
            and np.array_equal(self.entries, other.entries)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"ConnectionMatrix(n={self.dimension}, kind={self.kind.value})"


@dataclass(frozen=True, eq=False)
class RelationalMatrix:
    """
    FRM 关系矩阵（n×m，定义域 × 值域）

    定义域与值域的标签必须互不相同，这样种子向量所在的一侧可以由标签唯一确定。
    """

    domain: ConceptSpace
    range: ConceptSpace
    entries: np.ndarray
    kind: MatrixKind = MatrixKind.SIMPLE

    def __post_init__(self):
        kind = MatrixKind(self.kind)
        object.__setattr__(self, "kind", kind)
        entries = _to_entries(self.entries, (self.domain.dimension, self.range.dimension))
        object.__setattr__(self, "entries", entries)
        _check_kind(entries, kind, "Relational matrix")

        shared = set(self.domain.labels) & set(self.range.labels)
        if shared:
            raise StructureError(
                f"Domain and range labels must be disjoint; shared: {', '.join(sorted(shared))}"
            )

    @property
    def shape(self) -> tuple[int, int]:
        return self.domain.dimension, self.range.dimension

    def apply(self, vector: Sequence[int] | np.ndarray) -> np.ndarray:
        """定义域向量乘矩阵，得到值域上的原始得分"""
        x = np.asarray(vector, dtype=np.int64)
        if x.shape != (self.domain.dimension,):
            raise StructureError(
                f"Vector of length {x.shape} cannot multiply a {self.shape[0]}x{self.shape[1]} matrix"
            )
        return x @ self.entries

    def transpose(self) -> "RelationalMatrix":
        return RelationalMatrix(self.range, self.domain, self.entries.T.copy(), self.kind)

    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in row) for row in self.entries)

    def column(self, label: str) -> tuple[int, ...]:
        return tuple(int(v) for v in self.entries[:, self.range.index(label)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RelationalMatrix):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.range == other.range
            and self.kind == other.kind
            and np.array_equal(self.entries, other.entries)
        )

    __hash__ = None

    def __repr__(self) -> str:
        n, m = self.shape
        return f"RelationalMatrix({n}x{m}, kind={self.kind.value})"


def transpose(matrix: ConnectionMatrix | RelationalMatrix) -> ConnectionMatrix | RelationalMatrix:
    """转置；矩形矩阵同时交换定义域和值域"""
    return matrix.transpose()


def _sum_entries(matrices: Sequence[ConnectionMatrix | RelationalMatrix]) -> list[list[int]]:
    # 用Python整数累加，溢出在构造结果矩阵时统一检查
    total = np.zeros(matrices[0].entries.shape, dtype=object)
    for matrix in matrices:
        total = total + matrix.entries.astype(object)
    return total.tolist()


def add_matrices(
    matrices: Sequence[ConnectionMatrix] | Sequence[RelationalMatrix],
) -> ConnectionMatrix | RelationalMatrix:
    """
    逐元素相加，结果类型为 combined

    Args:
        matrices: 非空矩阵列表，全部为方阵或全部为矩形矩阵，且概念空间一致

    Returns:
        combined 类型的矩阵

    Raises:
        UsageError: 列表为空
        StructureError: 类型混杂或概念空间不一致
    """
    matrices = list(matrices)
    if not matrices:
        raise UsageError("add_matrices needs at least one matrix")

    first = matrices[0]
    for i, matrix in enumerate(matrices[1:], start=2):
        if type(matrix) is not type(first):
            raise StructureError(
                f"Cannot add a {type(matrix).__name__} to a {type(first).__name__} (input {i})"
            )
        if isinstance(first, ConnectionMatrix):
            require_same_space(first.space, matrix.space, f"add_matrices input {i}")
        else:
            require_same_space(first.domain, matrix.domain, f"add_matrices input {i} domain")
            require_same_space(first.range, matrix.range, f"add_matrices input {i} range")

    total = _sum_entries(matrices)

    if len(matrices) > 1:
        cancelled = sum(
            1
            for idx, value in np.ndenumerate(np.array(total, dtype=object))
            if value == 0 and any(m.entries[idx] != 0 for m in matrices)
        )
        if cancelled:
            logger.warning(
                f"Adding {len(matrices)} matrices cancelled {cancelled} nonzero entries to zero"
            )

    if isinstance(first, ConnectionMatrix):
        result = ConnectionMatrix(first.space, total, MatrixKind.COMBINED)
    else:
        result = RelationalMatrix(first.domain, first.range, total, MatrixKind.COMBINED)

    logger.info(f"Combined {len(matrices)} matrices into {result!r}")
    return result
