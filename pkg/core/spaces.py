"""
概念空间

功能：
- 有序、唯一的概念标签集合
- 标签与下标的双向查找
- 标签合法性校验（非空、无空白、无保留分隔符）
"""

import re
from dataclasses import dataclass, field

from core.errors import StructureError, UnknownLabelError


# 标签与语言项共用的字符规则：不能包含空白和文件格式中使用的分隔符
TOKEN_PATTERN = re.compile(r"[^\s<,;=|:#]+")


def is_valid_token(token: str) -> bool:
    """检查标签/语言项是否可以安全地写入模型文件"""
    return bool(TOKEN_PATTERN.fullmatch(token))


@dataclass(frozen=True)
class ConceptSpace:
    """
    概念空间（FCM 的节点集合，或 FRM 的定义域/值域）

    使用示例:
        space = ConceptSpace(("poverty", "illiteracy", "migration"))
        space.index("illiteracy")   # 1
        space.dimension             # 3
    """

    labels: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)

        if not labels:
            raise StructureError("Concept space must contain at least one label")

        for label in labels:
            if not isinstance(label, str) or not is_valid_token(label):
                raise StructureError(f"Invalid concept label: {label!r}")

        seen: set[str] = set()
        for label in labels:
            if label in seen:
                raise StructureError(f"Duplicate concept label: {label}")
            seen.add(label)

        object.__setattr__(self, "_index", {label: i for i, label in enumerate(labels)})

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def index(self, label: str) -> int:
        """
        根据标签获取下标

        Raises:
            UnknownLabelError: 标签不存在
        """
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabelError(
                f"Unknown concept label '{label}' (known: {', '.join(self.labels)})"
            ) from None

    def label(self, index: int) -> str:
        return self.labels[index]

    def describe(self) -> str:
        """用于错误消息的简短描述"""
        if len(self.labels) <= 4:
            return f"[{' '.join(self.labels)}]"
        return f"[{self.labels[0]} ... {self.labels[-1]}] (n={len(self.labels)})"

    def first_difference(self, other: "ConceptSpace") -> int | None:
        """
        返回与另一个空间第一个不一致的位置

        Returns:
            第一个不同标签的下标；维度不同时返回较短长度；完全一致返回None
        """
        for i, (a, b) in enumerate(zip(self.labels, other.labels)):
            if a != b:
                return i
        if len(self.labels) != len(other.labels):
            return min(len(self.labels), len(other.labels))
        return None


def require_same_space(expected: ConceptSpace, actual: ConceptSpace, what: str) -> None:
    """两个概念空间必须完全一致，否则抛出 StructureError"""
    if expected != actual:
        raise StructureError(
            f"{what}: space mismatch, expected {expected.describe()} "
            f"but got {actual.describe()}"
        )
