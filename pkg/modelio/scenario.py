"""
场景文件解析

功能：
- SCENARIO / ON / SET / OPERATOR / MAXITERS 指令
- FCRM 标签使用 fcm: / frm.domain: / frm.range: 前缀
- 依据目标模型校验标签与语言项，错误定位到行和列
- build_seed：把场景转换成对应模型的种子（状态向量、语言状态或状态双向量）

文件格式示例:
    SCENARIO poverty_only
    ON poor_economy
    MAXITERS 50
"""

import logging
import re
from enum import Enum

from pydantic import BaseModel, Field, field_validator

from core.errors import ParseError, UsageError
from core.spaces import ConceptSpace, is_valid_token
from core.states import StateVector
from maps.fcm import FcmModel
from maps.fcrm import FcrmBimodel, StateBivector
from maps.frm import FrmModel, Side
from maps.linguistic import CompositionOperator, FlcmModel, FlrmModel, LinguisticState
from modelio.parser import BOM, ModelDocument, ModelFormat


logger = logging.getLogger(__name__)

_WORD = re.compile(r"\S+")

AnySeed = StateVector | LinguisticState | StateBivector


class SeedComponent(str, Enum):
    """FCRM 种子的分量限定符"""
    FCM = "fcm"
    FRM_DOMAIN = "frm.domain"
    FRM_RANGE = "frm.range"


class SeedAssignment(BaseModel):
    """一条 ON / SET 指令"""
    label: str = Field(..., description="概念标签（不含分量前缀）")
    term: str = Field(default="1", description="语言项；清晰模型为 1")
    component: SeedComponent | None = Field(default=None, description="FCRM 分量")
    side: Side | None = Field(default=None, description="FRM/FLRM 种子所在的一侧")
    line: int = Field(default=0, ge=0, description="所在行号")

    @field_validator("label", "term")
    @classmethod
    def validate_token(cls, v: str) -> str:
        if not is_valid_token(v):
            raise ValueError(f"invalid token: {v!r}")
        return v

    class Config:
        use_enum_values = True


class Scenario(BaseModel):
    """
    场景

    operator 只对语言模型有意义；max_iters 为空时使用模型默认上限。
    """
    name: str = Field(..., min_length=1)
    assignments: list[SeedAssignment] = Field(default_factory=list)
    operator: CompositionOperator | None = Field(default=None)
    max_iters: int | None = Field(default=None, ge=1)

    class Config:
        use_enum_values = True

    def resolved_operator(self, default: CompositionOperator | str = CompositionOperator.MAX_MIN) -> CompositionOperator:
        return CompositionOperator(self.operator or default)


class _ScenarioParser:
    def __init__(self, document: ModelDocument, source: str):
        self.document = document
        self.source = source

    def error(self, reason: str, line: int, column: int = 1) -> ParseError:
        return ParseError(reason, line, column, self.source)

    def parse(self, text: str) -> Scenario:
        name: str | None = None
        assignments: list[SeedAssignment] = []
        operator: str | None = None
        max_iters: int | None = None
        seen: set[str] = set()
        last_line = 1

        for number, raw in enumerate(text.splitlines(), start=1):
            content = raw.split("#", 1)[0].rstrip()
            tokens = [(m.group(0), m.start() + 1) for m in _WORD.finditer(content)]
            if not tokens:
                continue
            last_line = number
            keyword, column = tokens[0]
            args = tokens[1:]

            if name is None and keyword != "SCENARIO":
                raise self.error(f"expected SCENARIO directive, found '{keyword}'", number, column)
            if keyword in ("SCENARIO", "OPERATOR", "MAXITERS"):
                if keyword in seen:
                    raise self.error(f"duplicate {keyword} directive", number, column)
                seen.add(keyword)
                if len(args) != 1:
                    raise self.error(f"{keyword} takes exactly one argument", number, column)

            if keyword == "SCENARIO":
                name = args[0][0]
            elif keyword == "ON":
                if len(args) != 1:
                    raise self.error("ON takes exactly one label", number, column)
                if self.document.kind.is_linguistic:
                    raise self.error(
                        "ON is not valid for linguistic models; use SET label=term", number, column
                    )
                assignments.append(self._assignment(args[0][0], "1", number, args[0][1]))
            elif keyword == "SET":
                if len(args) != 1 or "=" not in args[0][0]:
                    raise self.error("SET takes one label=term argument", number, column)
                label, term = args[0][0].split("=", 1)
                assignments.append(self._assignment(label, term, number, args[0][1]))
            elif keyword == "OPERATOR":
                if not self.document.kind.is_linguistic:
                    raise self.error("OPERATOR applies only to linguistic models", number, column)
                try:
                    operator = CompositionOperator(args[0][0]).value
                except ValueError:
                    raise self.error(f"unknown operator '{args[0][0]}'", number, args[0][1]) from None
            elif keyword == "MAXITERS":
                value = args[0][0]
                if not re.fullmatch(r"\d+", value, re.ASCII) or int(value) < 1:
                    raise self.error(f"MAXITERS needs a positive integer, got '{value}'", number, args[0][1])
                max_iters = int(value)
            else:
                raise self.error(f"unknown directive '{keyword}'", number, column)

        if name is None:
            raise self.error("empty scenario: expected SCENARIO directive", 1)
        if not assignments:
            raise self.error(f"scenario '{name}' switches on no concept", last_line)
        self._check_sides(assignments)

        return Scenario(name=name, assignments=assignments, operator=operator, max_iters=max_iters)

    def _assignment(self, label: str, term: str, line: int, column: int) -> SeedAssignment:
        document = self.document
        model = document.model
        component: SeedComponent | None = None
        side: Side | None = None

        if document.kind is ModelFormat.FCRM:
            prefix, sep, bare = label.partition(":")
            if not sep:
                raise self.error(
                    f"FCRM label '{label}' needs a fcm:, frm.domain: or frm.range: prefix",
                    line,
                    column,
                )
            try:
                component = SeedComponent(prefix)
            except ValueError:
                raise self.error(f"unknown component prefix '{prefix}:'", line, column) from None
            label = bare
            column += len(prefix) + 1
            space = {
                SeedComponent.FCM: model.first.space,
                SeedComponent.FRM_DOMAIN: model.second.domain,
                SeedComponent.FRM_RANGE: model.second.range,
            }[component]
            if component is not SeedComponent.FCM:
                side = Side.DOMAIN if component is SeedComponent.FRM_DOMAIN else Side.RANGE
        elif isinstance(model, (FcmModel, FlcmModel)):
            space = model.space
        else:
            if label in model.domain:
                space, side = model.domain, Side.DOMAIN
            else:
                space, side = model.range, Side.RANGE

        self._check_label(space, label, line, column)

        if document.kind.is_linguistic:
            if term not in model.chain:
                raise self.error(
                    f"term '{term}' is not in the chain {model.chain.describe()}",
                    line,
                    column + len(label) + 1,
                )
        elif term != "1":
            raise self.error(
                f"crisp models only accept the value 1, got '{term}'", line, column + len(label) + 1
            )

        return SeedAssignment(label=label, term=term, component=component, side=side, line=line)

    def _check_label(self, space: ConceptSpace, label: str, line: int, column: int) -> None:
        if label not in space:
            raise self.error(f"unknown label '{label}'", line, column)

    def _check_sides(self, assignments: list[SeedAssignment]) -> None:
        sides = {}
        for assignment in assignments:
            if assignment.side is not None:
                sides.setdefault(assignment.side, assignment.line)
        if len(sides) > 1:
            raise self.error(
                "seeds must all lie on one side (domain or range) of the relational map",
                max(sides.values()),
            )


def parse_scenario(text: str, document: ModelDocument, source: str = "<scenario>") -> Scenario:
    """
    解析场景文本并针对模型校验

    Raises:
        ParseError: 语法错误、未知标签、语言项不在链中、混合两侧的种子等

    使用示例:
        scenario = parse_scenario("SCENARIO s\\nON poor_economy\\n", doc)
        seed = build_seed(scenario, doc)
    """
    scenario = _ScenarioParser(document, source).parse(text.removeprefix(BOM))
    logger.debug(f"Parsed scenario '{scenario.name}' with {len(scenario.assignments)} seeds")
    return scenario


def build_seed(scenario: Scenario, document: ModelDocument) -> AnySeed:
    """
    场景 → 模型种子

    Raises:
        UsageError: 场景与模型类型不匹配
    """
    model = document.model
    labels = [a.label for a in scenario.assignments]

    if isinstance(model, FcmModel):
        return StateVector.from_labels(model.space, labels)

    if isinstance(model, FrmModel):
        space = model.domain if scenario.assignments[0].side == Side.DOMAIN.value else model.range
        return StateVector.from_labels(space, labels)

    if isinstance(model, FcrmBimodel):
        fcm_labels = [a.label for a in scenario.assignments if a.component == SeedComponent.FCM.value]
        frm = [a for a in scenario.assignments if a.component != SeedComponent.FCM.value]
        side = Side(frm[0].side) if frm else Side.DOMAIN
        return StateBivector.from_labels(model, fcm_labels, [a.label for a in frm], side)

    terms = {a.label: a.term for a in scenario.assignments}
    if isinstance(model, FlcmModel):
        return model.seed(terms)
    if isinstance(model, FlrmModel):
        side = Side(scenario.assignments[0].side)
        return model.domain_seed(terms) if side is Side.DOMAIN else model.range_seed(terms)

    raise UsageError(f"Scenario '{scenario.name}' cannot seed a {type(model).__name__}")
