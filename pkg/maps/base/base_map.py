"""
基础映射抽象类

所有推理模型（FCM / FRM / FCRM / FLCM / FLRM）的公共基类
"""

from abc import ABC, abstractmethod
from typing import Any

from core.errors import UsageError
from core.patterns import MAX_ITERS_CAP, default_max_iters


class BaseMap(ABC):
    """
    推理模型基类

    子类实现 state_count（状态空间大小，用于默认迭代上限）、
    solve（从种子求隐藏模式）和 has_feedback（图中是否存在反馈环）。

    使用示例:
        class MyMap(BaseMap):
            @property
            def state_count(self) -> int:
                return 2 ** 3

            def solve(self, seed, max_iters=None):
                ...

            def has_feedback(self) -> bool:
                return False
    """

    def __init__(self, name: str | None = None):
        """
        初始化模型

        Args:
            name: 模型名称（可选，仅用于日志和报告）
        """
        self.name = name or self.__class__.__name__

    @property
    @abstractmethod
    def state_count(self) -> int:
        """可达状态空间的大小上界"""
        pass

    @abstractmethod
    def solve(self, seed: Any, max_iters: int | None = None) -> Any:
        """
        从种子出发求隐藏模式

        Args:
            seed: 种子状态
            max_iters: 迭代上限（None 表示使用默认值）

        Returns:
            对应模型的隐藏模式
        """
        pass

    @abstractmethod
    def has_feedback(self) -> bool:
        """模型的有向图是否含有反馈环"""
        pass

    def default_max_iters(self, cap: int = MAX_ITERS_CAP) -> int:
        return default_max_iters(self.state_count, cap)

    def resolve_max_iters(self, max_iters: int | None, cap: int = MAX_ITERS_CAP) -> int:
        """显式给出的上限优先，否则使用 min(状态空间, cap)"""
        if max_iters is None:
            return self.default_max_iters(cap)
        if max_iters < 1:
            raise UsageError(f"max_iters must be positive, got {max_iters}")
        return max_iters

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name={self.name})"
