"""
语言项链与合成算子

功能：
- LinguisticChain：以 "0" 为最小元的全序语言项集合
- compare_terms：按链中位置比较两个语言项
- CompositionOperator：max-min / min-min / max-max / min-max 四种合成方式
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

import numpy as np

from core.errors import StructureError, UnknownTermError
from core.spaces import is_valid_token


# 链的最小元，所有链都必须以它开头
BOTTOM = "0"


class CompositionOperator(str, Enum):
    """
    合成算子：外层聚合-内层配对

    max-min 是常规的模糊合成；min-min 给出最坏情况，max-max 给出最好情况。
    """
    MAX_MIN = "max-min"
    MIN_MIN = "min-min"
    MAX_MAX = "max-max"
    MIN_MAX = "min-max"

    @property
    def outer(self):
        return np.max if self.value.startswith("max") else np.min

    @property
    def inner(self):
        return np.minimum if self.value.endswith("min") else np.maximum


@dataclass(frozen=True)
class LinguisticChain:
    """
    全序语言项链

    使用示例:
        chain = LinguisticChain.parse("0 < low < medium < high")
        chain.position("medium")         # 2
        chain.max_term("0", "low")       # "low"
    """

    terms: tuple[str, ...]
    _positions: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)

        if not terms or terms[0] != BOTTOM:
            raise StructureError(f"Linguistic chain must start with '{BOTTOM}', got {terms}")
        for term in terms:
            if not isinstance(term, str) or not is_valid_token(term):
                raise StructureError(f"Invalid linguistic term: {term!r}")
        if len(set(terms)) != len(terms):
            raise StructureError(f"Linguistic chain has duplicate terms: {terms}")

        object.__setattr__(self, "_positions", {term: i for i, term in enumerate(terms)})

    @classmethod
    def parse(cls, text: str) -> "LinguisticChain":
        """解析 "0 < a < b" 形式的链声明"""
        return cls(tuple(part.strip() for part in text.split("<")))

    @property
    def size(self) -> int:
        return len(self.terms)

    @property
    def bottom(self) -> str:
        return BOTTOM

    @property
    def top(self) -> str:
        return self.terms[-1]

    def __contains__(self, term: object) -> bool:
        return term in self._positions

    def position(self, term: str) -> int:
        try:
            return self._positions[term]
        except KeyError:
            raise UnknownTermError(
                f"Unknown linguistic term '{term}' (chain: {self.describe()})"
            ) from None

    def positions(self, terms: Iterable[str]) -> np.ndarray:
        return np.array([self.position(t) for t in terms], dtype=np.int64)

    def term(self, position: int) -> str:
        return self.terms[position]

    def max_term(self, a: str, b: str) -> str:
        return a if self.position(a) >= self.position(b) else b

    def min_term(self, a: str, b: str) -> str:
        return a if self.position(a) <= self.position(b) else b

    def describe(self) -> str:
        return " < ".join(self.terms)


def compare_terms(chain: LinguisticChain, a: str, b: str) -> int:
    """
    比较两个语言项

    Returns:
        a 在链中低于、等于、高于 b 时分别返回 -1、0、1

    Raises:
        UnknownTermError: 任一项不在链中
    """
    pa, pb = chain.position(a), chain.position(b)
    return (pa > pb) - (pa < pb)
