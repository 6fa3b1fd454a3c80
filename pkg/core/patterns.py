"""
隐藏模式与重复检测

功能：
- HiddenPattern：不动点或最小极限环，附带完整轨迹
- find_recurrence：基于已访问状态表的迭代驱动（所有引擎共用）
- default_max_iters：默认迭代上限 min(状态空间大小, 上限)
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Generic, Hashable, Sequence, TypeVar

from core.errors import IterationLimitError, StructureError


logger = logging.getLogger(__name__)

S = TypeVar("S", bound=Hashable)

# 默认迭代上限，状态空间更小时以状态空间大小为准
MAX_ITERS_CAP = 1_000_000


class PatternKind(str, Enum):
    """隐藏模式类型（报告中使用的名称）"""
    FIXED_POINT = "fixed_point"
    LIMIT_CYCLE = "limit_cycle"
    FIXED_PAIR = "fixed_pair"
    LIMIT_CYCLE_PAIR = "limit_cycle_pair"
    FIXED_BIPOINT = "fixed_bipoint"
    LIMIT_BICYCLE = "limit_bicycle"


def default_max_iters(state_count: int, cap: int = MAX_ITERS_CAP) -> int:
    """
    默认迭代上限

    Args:
        state_count: 状态空间大小（如 2^n）
        cap: 绝对上限

    Returns:
        min(state_count, cap)，至少为1
    """
    return max(1, min(state_count, cap))


@dataclass(frozen=True)
class HiddenPattern(Generic[S]):
    """
    迭代的平衡态

    Attributes:
        kind: fixed_point 或 limit_cycle
        states: 不动点（长度1）或最小循环（按访问顺序）
        trace: 从种子开始依次访问过的互不相同的状态
        cycle_entry: 循环在 trace 中开始的位置
    """

    kind: PatternKind
    states: tuple[S, ...]
    trace: tuple[S, ...]
    cycle_entry: int

    def __post_init__(self):
        if not self.states:
            raise StructureError("Hidden pattern needs at least one state")
        if tuple(self.trace[self.cycle_entry:]) != tuple(self.states):
            raise StructureError("Hidden pattern states must be the tail of its trace")

    @property
    def period(self) -> int:
        return len(self.states)

    @property
    def iterations(self) -> int:
        """应用迭代步的次数（最后一步产生了重复状态）"""
        return len(self.trace)

    @property
    def is_fixed_point(self) -> bool:
        return self.kind is PatternKind.FIXED_POINT

    @property
    def final_state(self) -> S:
        return self.states[0] if self.is_fixed_point else self.trace[-1]


def find_recurrence(
    seed: S,
    step: Callable[[S], S],
    max_iters: int,
    describe: Callable[[S], str] = str,
) -> HiddenPattern[S]:
    """
    从种子开始反复应用 step，直到某个状态再次出现

    使用已访问状态表（状态 → 首次出现位置），因此只要状态空间有限就一定终止。

    Args:
        seed: 初始状态（必须可哈希）
        step: 单步更新函数
        max_iters: 允许的最大步数
        describe: 调试日志中状态的显示方式

    Returns:
        HiddenPattern，kind 由循环长度决定

    Raises:
        IterationLimitError: 在 max_iters 步内没有出现重复
    """
    if max_iters < 1:
        raise IterationLimitError(max_iters, "max_iters must be positive")

    trace: list[S] = [seed]
    visited: dict[S, int] = {seed: 0}
    current = seed

    for iteration in range(1, max_iters + 1):
        current = step(current)
        logger.debug(f"step {iteration}: {describe(current)}")

        if current in visited:
            entry = visited[current]
            states = tuple(trace[entry:])
            kind = PatternKind.FIXED_POINT if len(states) == 1 else PatternKind.LIMIT_CYCLE
            return HiddenPattern(kind, states, tuple(trace), entry)

        visited[current] = len(trace)
        trace.append(current)

    raise IterationLimitError(max_iters, f"last state {describe(current)}")


def minimal_period(sequence: Sequence[Hashable]) -> int:
    """循环序列的最小周期（例如 a b a b → 2）"""
    n = len(sequence)
    for p in range(1, n + 1):
        if n % p == 0 and all(sequence[i] == sequence[i % p] for i in range(n)):
            return p
    return n


def render_cycle(states: Sequence[str]) -> str:
    """不动点直接输出状态；极限环输出 cycle[k]=s1|s2|…"""
    if len(states) == 1:
        return states[0]
    return f"cycle[{len(states)}]=" + "|".join(states)
