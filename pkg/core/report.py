"""
运行报告

功能：
- RunReport：一次求解的可输出记录（场景名、模式类型、渲染结果、迭代次数、可选轨迹/得分）
- make_report：把任意引擎的结果转换成 RunReport
- format_reports：tsv（每行一条记录，无表头）或 md（带表头的管道表格）

渲染规则：
- 清晰状态为 0/1 字符串，语言状态为逗号分隔的语言项
- FRM：domain=...;range=...；FCRM：fcm=...;domain=...;range=...
- 极限环：cycle[k]=s1|s2|…（按访问顺序）
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Sequence

from core.patterns import HiddenPattern, render_cycle
from maps.fcrm import aligned_trace


class ReportFormat(str, Enum):
    """报告格式"""
    TSV = "tsv"
    MD = "md"


@dataclass(frozen=True)
class RunReport:
    """
    一条报告记录

    Attributes:
        name: 场景名或 sweep 中被播种的概念
        kind: 模式类型（fixed_point、fixed_pair、fixed_bipoint 等）
        rendering: 无损的模式渲染
        iterations: 迭代次数
        scores: 得分剖面（仅 run --scores）
        trace: 轨迹（仅 run --trace）
    """

    name: str
    kind: str
    rendering: str
    iterations: int
    scores: str | None = None
    trace: str | None = None

    def fields(self) -> list[str]:
        values = [self.name, self.kind, self.rendering, f"iters={self.iterations}"]
        if self.scores is not None:
            values.append(f"scores={self.scores}")
        if self.trace is not None:
            values.append(f"trace={self.trace}")
        return values


def render_state(state: Any) -> str:
    # StateVector 用 bits()，LinguisticState 用 render()
    render = getattr(state, "render", None)
    return render() if callable(render) else state.bits()


def _render_pattern(pattern: HiddenPattern) -> str:
    return render_cycle([render_state(s) for s in pattern.states])


def _render_pair(pair: Any) -> str:
    return f"domain={_render_pattern(pair.domain_pattern)};range={_render_pattern(pair.range_pattern)}"


def render_result(result: Any) -> str:
    """渲染 HiddenPattern / HiddenPair / BihiddenPattern"""
    if isinstance(result, HiddenPattern):
        return _render_pattern(result)
    if hasattr(result, "domain_pattern"):
        return _render_pair(result)
    return f"fcm={_render_pattern(result.first)};{_render_pair(result.second)}"


def render_trace(result: Any) -> str:
    """
    轨迹渲染：状态之间用 ">" 连接

    FRM 每一步写成 x/y；FCRM 每一步写成 a/x/y（按步数对齐）
    """
    if isinstance(result, HiddenPattern):
        steps = [render_state(s) for s in result.trace]
    elif hasattr(result, "domain_pattern"):
        steps = [
            f"{render_state(x)}/{render_state(y)}"
            for x, y in zip(result.domain_pattern.trace, result.range_pattern.trace)
        ]
    else:
        steps = ["/".join(render_state(s) for s in step) for step in aligned_trace(result)]
    return ">".join(steps)


def make_report(
    name: str,
    result: Any,
    trace: bool = False,
    scores: str | None = None,
) -> RunReport:
    return RunReport(
        name=name,
        kind=result.kind.value,
        rendering=render_result(result),
        iterations=result.iterations,
        scores=scores,
        trace=render_trace(result) if trace else None,
    )


def format_reports(reports: Sequence[RunReport], fmt: ReportFormat | str = ReportFormat.TSV) -> str:
    """
    格式化报告

    Returns:
        以换行结尾的文本；空列表返回空字符串（md 仍输出表头）
    """
    fmt = ReportFormat(fmt)
    if fmt is ReportFormat.TSV:
        return "".join("\t".join(r.fields()) + "\n" for r in reports)

    with_scores = any(r.scores is not None for r in reports)
    with_trace = any(r.trace is not None for r in reports)
    header = ["name", "kind", "pattern", "iters"]
    if with_scores:
        header.append("scores")
    if with_trace:
        header.append("trace")

    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    for r in reports:
        cells = [r.name, r.kind, r.rendering, str(r.iterations)]
        if with_scores:
            cells.append(r.scores or "")
        if with_trace:
            cells.append(r.trace or "")
        # 渲染中的 "|" 在表格里需要转义
        lines.append("| " + " | ".join(c.replace("|", "\\|") for c in cells) + " |")
    return "\n".join(lines) + "\n"
