"""
错误类型定义

功能：
- 统一的异常层次结构（根类 FuzzyMapError）
- 每个异常同时继承对应的内置异常，调用方可以按 ValueError / KeyError 捕获
- ParseError 携带行号和列号
"""


class FuzzyMapError(Exception):
    """所有模糊认知映射相关错误的基类"""

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:
        # KeyError 默认会给消息加引号，这里统一返回原始消息
        return self.message


class StructureError(FuzzyMapError, ValueError):
    """维度或概念空间不匹配"""


class MatrixKindError(StructureError):
    """矩阵元素超出其类型允许的范围，或对角线非零"""


class UsageError(FuzzyMapError, ValueError):
    """调用方式错误（空列表、空种子、互斥参数等）"""


class ParseError(FuzzyMapError, ValueError):
    """
    模型/场景文本解析错误

    Attributes:
        line: 出错行号（从1开始）
        column: 出错列号（从1开始）
        source: 来源名称（文件路径或 fixture id）
    """

    def __init__(self, reason: str, line: int, column: int = 1, source: str = "<text>"):
        self.reason = reason
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{source}:{line}:{column}: {reason}")


class UnknownLabelError(FuzzyMapError, KeyError):
    """概念标签不存在"""


class UnknownTermError(FuzzyMapError, KeyError):
    """语言项不在链中"""


class UnknownFixtureError(FuzzyMapError, KeyError):
    """内置 fixture 不存在"""


class IterationLimitError(FuzzyMapError, RuntimeError):
    """在达到 max_iters 之前没有出现重复状态"""

    def __init__(self, max_iters: int, detail: str = ""):
        self.max_iters = max_iters
        suffix = f" ({detail})" if detail else ""
        super().__init__(f"No recurrence within max_iters={max_iters}{suffix}")


class ProfileUndefinedError(FuzzyMapError, ValueError):
    """隐藏模式是极限环时无法给出得分剖面"""

    def __init__(self, period: int):
        self.period = period
        super().__init__(
            f"Score profile is undefined for a limit cycle of length {period}"
        )


class ScoreOverflowError(FuzzyMapError, OverflowError):
    """整数得分超出 64 位有符号范围"""
