"""
求解调度

功能：
- solve_seed：按模型类型把种子分派给对应引擎
- sweep_seeds：为 sweep 生成单概念种子（按概念声明顺序）
- SweepRunner：线程池并行求解，结果按声明顺序汇总
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any

from core.errors import UsageError
from core.patterns import MAX_ITERS_CAP
from core.report import RunReport, make_report
from core.states import StateVector
from maps.fcm import FcmModel, hidden_pattern
from maps.fcrm import FcrmBimodel, StateBivector, bihidden_pattern
from maps.frm import FrmModel, Side, hidden_pair
from maps.linguistic import (
    CompositionOperator,
    FlcmModel,
    FlrmModel,
    LinguisticState,
    flcm_hidden_pattern,
    flrm_hidden_pair,
)
from modelio.parser import ModelDocument


logger = logging.getLogger(__name__)


def solve_seed(
    document: ModelDocument,
    seed: Any,
    operator: CompositionOperator | str = CompositionOperator.MAX_MIN,
    max_iters: int | None = None,
    cap: int = MAX_ITERS_CAP,
) -> Any:
    """
    求解一个种子

    Returns:
        HiddenPattern（FCM/FLCM）、HiddenPair（FRM/FLRM）或 BihiddenPattern（FCRM）
    """
    model = document.model
    if isinstance(model, FcmModel):
        return hidden_pattern(model, seed, max_iters, cap)
    if isinstance(model, FrmModel):
        return hidden_pair(model, seed, max_iters, cap)
    if isinstance(model, FcrmBimodel):
        return bihidden_pattern(model, seed, max_iters, cap)
    if isinstance(model, FlcmModel):
        return flcm_hidden_pattern(model, seed, operator, max_iters, cap)
    if isinstance(model, FlrmModel):
        return flrm_hidden_pair(model, seed, operator, max_iters, cap)
    raise UsageError(f"Cannot solve a {type(model).__name__}")


def sweep_seeds(document: ModelDocument, value: str | None = None) -> list[tuple[str, Any]]:
    """
    每个概念单独开启时的种子列表

    Args:
        document: 模型
        value: 语言模型中每个概念被设置的语言项（语言模型必填）

    Returns:
        [(记录名, 种子)]，FRM 先定义域后值域；FCRM 依次为 fcm:、frm.domain:、frm.range:

    Raises:
        UsageError: 语言模型缺少 value，或清晰模型给出了 value
        UnknownTermError: value 不在链中
    """
    model = document.model

    if document.kind.is_linguistic:
        if value is None:
            raise UsageError(f"sweep over a {document.kind.value} model needs --value TERM")
        model.chain.position(value)
        if isinstance(model, FlcmModel):
            return [(label, model.seed({label: value})) for label in model.space.labels]
        return [
            *[(label, model.domain_seed({label: value})) for label in model.domain.labels],
            *[(label, model.range_seed({label: value})) for label in model.range.labels],
        ]

    if value is not None:
        raise UsageError("--value applies only to linguistic models")

    if isinstance(model, FcmModel):
        return [(label, model.seed(label)) for label in model.space.labels]
    if isinstance(model, FrmModel):
        return [
            *[(label, model.domain_seed(label)) for label in model.domain.labels],
            *[(label, model.range_seed(label)) for label in model.range.labels],
        ]

    seeds = []
    for label in model.first.space.labels:
        seeds.append((f"fcm:{label}", StateBivector.from_labels(model, [label], [], Side.DOMAIN)))
    for label in model.second.domain.labels:
        seeds.append((f"frm.domain:{label}", StateBivector.from_labels(model, [], [label], Side.DOMAIN)))
    for label in model.second.range.labels:
        seeds.append((f"frm.range:{label}", StateBivector.from_labels(model, [], [label], Side.RANGE)))
    return seeds


class SweepRunner:
    """
    sweep 调度器

    使用示例:
        runner = SweepRunner(max_workers=4)
        reports = runner.run(load_fixture("ch4_special_M"))
        [r.rendering for r in reports][9]   # "11100000010"
    """

    def __init__(
        self,
        max_workers: int = 4,
        cap: int = MAX_ITERS_CAP,
        operator: CompositionOperator | str = CompositionOperator.MAX_MIN,
    ):
        """
        初始化调度器

        Args:
            max_workers: 线程池大小
            cap: 默认迭代上限中的 cap
            operator: 语言模型的合成算子
        """
        if max_workers < 1:
            raise UsageError(f"max_workers must be positive, got {max_workers}")
        self.max_workers = max_workers
        self.cap = cap
        self.operator = CompositionOperator(operator)

    def _solve_one(self, document: ModelDocument, name: str, seed: StateVector | LinguisticState | StateBivector) -> RunReport:
        result = solve_seed(document, seed, self.operator, None, self.cap)
        return make_report(name, result)

    def run(self, document: ModelDocument, value: str | None = None) -> list[RunReport]:
        """
        对每个概念求解一次

        Returns:
            按概念声明顺序排列的报告（与完成顺序无关）

        Raises:
            IterationLimitError: 任一种子达到迭代上限
        """
        seeds = sweep_seeds(document, value)
        logger.info(
            f"Sweeping {len(seeds)} seeds over '{document.name}' with {self.max_workers} workers"
        )

        if self.max_workers == 1 or len(seeds) <= 1:
            return [self._solve_one(document, name, seed) for name, seed in seeds]

        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            futures = [
                executor.submit(self._solve_one, document, name, seed) for name, seed in seeds
            ]
            # 按提交顺序取结果，保证输出顺序确定
            return [future.result() for future in futures]
