"""
模型文件解析器

功能：
- 解析 MODEL FCM|FRM|FCRM|FLCM|FLRM 行式文本格式
- 逐行、逐列定位的错误诊断（ParseError 携带行号和列号）
- 完整校验：元素范围、维度、语言项是否在链中、零对角线规则
- 返回 ModelDocument（格式类型 + 已校验的模型 + 行号信息）

文件格式示例:
    # 注释
    MODEL FCM
    KIND positive
    CONCEPTS a b c
    ROW a: 0 1 0
    ROW b: 0 0 1
    ROW c: 1 0 0
"""

import codecs
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from core.errors import FuzzyMapError, ParseError
from core.matrices import ALLOWED_ENTRIES, ConnectionMatrix, MatrixKind, RelationalMatrix
from core.spaces import ConceptSpace, is_valid_token
from maps.fcm import FcmModel
from maps.fcrm import FcrmBimodel, build_bimodel
from maps.frm import FrmModel
from maps.linguistic import FlcmModel, FlrmModel, LinguisticChain, LinguisticMatrix


logger = logging.getLogger(__name__)

_INTEGER = re.compile(r"[+-]?\d+", re.ASCII)
BOM = "\ufeff"
_WORD = re.compile(r"\S+")

AnyModel = FcmModel | FrmModel | FcrmBimodel | FlcmModel | FlrmModel


class ModelFormat(str, Enum):
    """模型文件中 MODEL 指令的取值"""
    FCM = "FCM"
    FRM = "FRM"
    FCRM = "FCRM"
    FLCM = "FLCM"
    FLRM = "FLRM"

    @property
    def is_linguistic(self) -> bool:
        return self in (ModelFormat.FLCM, ModelFormat.FLRM)

    @property
    def is_square(self) -> bool:
        return self in (ModelFormat.FCM, ModelFormat.FLCM)


@dataclass
class ModelDocument:
    """
    解析结果

    Attributes:
        kind: 模型格式
        model: 已校验的模型对象
        source: 来源（文件路径或 fixture:<id>）
        positions: 行号索引，例如 "MODEL"、"ROW a"、"fcm:ROW a"
    """

    kind: ModelFormat
    model: AnyModel
    source: str = "<text>"
    positions: dict[str, int] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.model.name

    def summary(self) -> str:
        """check 命令输出的校验摘要"""
        model = self.model
        if isinstance(model, (FcmModel, FlcmModel)):
            return f"kind={self.kind.value} n={model.space.dimension}"
        if isinstance(model, (FrmModel, FlrmModel)):
            return f"kind={self.kind.value} n={model.domain.dimension} m={model.range.dimension}"
        return (
            f"kind={self.kind.value} n={model.first.space.dimension} "
            f"p={model.second.domain.dimension} m={model.second.range.dimension}"
        )


@dataclass(frozen=True)
class _Token:
    text: str
    column: int


@dataclass
class _Line:
    number: int
    text: str
    tokens: list[_Token]

    @property
    def keyword(self) -> str:
        return self.tokens[0].text

    @property
    def args(self) -> list[_Token]:
        return self.tokens[1:]


@dataclass
class _Row:
    line: _Line
    label: _Token
    entries: list[_Token]


@dataclass
class _Block:
    """一个模型（或 FCRM 中的一个分量）在解析过程中收集到的内容"""

    kind: ModelFormat
    start: _Line
    matrix_kind: MatrixKind = MatrixKind.SIMPLE
    allow_diagonal: bool = False
    chain: LinguisticChain | None = None
    spaces: dict[str, tuple[_Line, ConceptSpace]] = field(default_factory=dict)
    rows: dict[str, _Row] = field(default_factory=dict)
    seen: set[str] = field(default_factory=set)


def _tokenize(text: str) -> list[_Token]:
    return [_Token(m.group(0), m.start() + 1) for m in _WORD.finditer(text)]


def _split_lines(text: str) -> list[_Line]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        # "#" 之后是注释
        content = raw.split("#", 1)[0].rstrip()
        tokens = _tokenize(content)
        if tokens:
            lines.append(_Line(number, content, tokens))
    return lines


class _ModelParser:
    """逐行解析器，维护来源名称以生成带位置的错误"""

    def __init__(self, source: str, name: str):
        self.source = source
        self.name = name

    def error(self, reason: str, line: _Line | int, column: int | None = None) -> ParseError:
        if isinstance(line, _Line):
            number = line.number
            column = column if column is not None else line.tokens[0].column
        else:
            number = line
        return ParseError(reason, number, column or 1, self.source)

    # ------------------------------------------------------------------
    # 文档级别
    # ------------------------------------------------------------------

    def parse(self, text: str) -> ModelDocument:
        lines = _split_lines(text)
        if not lines:
            raise self.error("empty model document: expected MODEL directive", 1)

        header = lines[0]
        if header.keyword != "MODEL":
            raise self.error(f"expected MODEL directive, found '{header.keyword}'", header)
        if len(header.args) != 1:
            raise self.error("MODEL takes exactly one of FCM, FRM, FCRM, FLCM, FLRM", header)
        try:
            kind = ModelFormat(header.args[0].text)
        except ValueError:
            raise self.error(
                f"unknown model kind '{header.args[0].text}'", header, header.args[0].column
            ) from None

        positions = {"MODEL": header.number}
        body = lines[1:]
        for line in body:
            if line.keyword == "MODEL":
                raise self.error("duplicate MODEL directive", line)

        if kind is ModelFormat.FCRM:
            model = self._parse_bimodel(header, body, positions)
        else:
            block = _Block(kind, header)
            for line in body:
                if line.keyword in ("BEGIN", "END", "IDENTIFY"):
                    raise self.error(f"{line.keyword} is only valid in FCRM models", line)
                self._feed(block, line)
            model = self._build(block, self.name, positions, prefix="")

        logger.debug(f"Parsed {kind.value} model '{self.name}' from {self.source}")
        return ModelDocument(kind, model, self.source, positions)

    def _parse_bimodel(self, header: _Line, body: list[_Line], positions: dict[str, int]) -> FcrmBimodel:
        blocks: dict[str, _Block] = {}
        current: _Block | None = None
        identify_line: _Line | None = None

        for line in body:
            keyword = line.keyword
            if current is None:
                if keyword == "IDENTIFY":
                    if identify_line is not None:
                        raise self.error("duplicate IDENTIFY directive", line)
                    if line.args:
                        raise self.error("IDENTIFY takes no arguments", line, line.args[0].column)
                    identify_line = line
                    positions["IDENTIFY"] = line.number
                elif keyword == "BEGIN":
                    if len(line.args) != 1 or line.args[0].text not in ("FCM", "FRM"):
                        raise self.error("expected 'BEGIN FCM' or 'BEGIN FRM'", line)
                    component = line.args[0].text
                    if component in blocks:
                        raise self.error(f"duplicate BEGIN {component} block", line)
                    current = _Block(ModelFormat(component), line)
                    blocks[component] = current
                elif keyword == "END":
                    raise self.error("END without a matching BEGIN", line)
                else:
                    raise self.error(
                        f"{keyword} must appear inside a BEGIN FCM or BEGIN FRM block", line
                    )
            elif keyword == "END":
                if line.args:
                    raise self.error("END takes no arguments", line, line.args[0].column)
                current = None
            elif keyword in ("BEGIN", "IDENTIFY"):
                raise self.error(f"{keyword} is not allowed inside a BEGIN block", line)
            else:
                self._feed(current, line)

        if current is not None:
            raise self.error(f"unterminated BEGIN {current.kind.value} block", current.start)
        for component in ("FCM", "FRM"):
            if component not in blocks:
                raise self.error(f"FCRM model is missing its BEGIN {component} block", header)

        fcm = self._build(blocks["FCM"], f"{self.name}.fcm", positions, prefix="fcm:")
        frm = self._build(blocks["FRM"], f"{self.name}.frm", positions, prefix="frm:")
        try:
            return build_bimodel(fcm, frm, identify=identify_line is not None, name=self.name)
        except FuzzyMapError as e:
            raise self.error(e.message, identify_line or header) from e

    # ------------------------------------------------------------------
    # 单个模型块
    # ------------------------------------------------------------------

    def _feed(self, block: _Block, line: _Line) -> None:
        keyword = line.keyword
        if keyword != "ROW":
            if keyword in block.seen:
                raise self.error(f"duplicate {keyword} directive", line)
            block.seen.add(keyword)

        if keyword == "KIND":
            if block.kind.is_linguistic:
                raise self.error("KIND applies only to crisp models", line)
            if len(line.args) != 1:
                raise self.error("KIND takes one of simple, positive, combined", line)
            try:
                block.matrix_kind = MatrixKind(line.args[0].text)
            except ValueError:
                raise self.error(
                    f"unknown matrix kind '{line.args[0].text}'", line, line.args[0].column
                ) from None
        elif keyword == "ALLOW_DIAGONAL":
            if not block.kind.is_square:
                raise self.error("ALLOW_DIAGONAL applies only to square maps", line)
            if line.args:
                raise self.error("ALLOW_DIAGONAL takes no arguments", line, line.args[0].column)
            block.allow_diagonal = True
        elif keyword == "CHAIN":
            self._parse_chain(block, line)
        elif keyword in ("CONCEPTS", "DOMAIN", "RANGE"):
            self._parse_space(block, line)
        elif keyword == "ROW":
            self._parse_row(block, line)
        else:
            raise self.error(f"unknown directive '{keyword}'", line)

    def _parse_chain(self, block: _Block, line: _Line) -> None:
        if not block.kind.is_linguistic:
            raise self.error("CHAIN applies only to FLCM and FLRM models", line)
        if block.spaces:
            raise self.error("CHAIN must come before CONCEPTS, DOMAIN and RANGE", line)

        rest_start = line.tokens[0].column - 1 + len("CHAIN")
        parts = line.text[rest_start:].split("<")
        terms = []
        offset = rest_start
        for part in parts:
            term = part.strip()
            column = offset + (len(part) - len(part.lstrip())) + 1
            if not term or not is_valid_token(term):
                raise self.error(f"invalid chain term '{term}'", line, column)
            if term in terms:
                raise self.error(f"duplicate chain term '{term}'", line, column)
            terms.append(term)
            offset += len(part) + 1
        if terms[0] != "0":
            raise self.error("CHAIN must start with '0'", line, line.args[0].column)
        block.chain = LinguisticChain(tuple(terms))

    def _parse_space(self, block: _Block, line: _Line) -> None:
        keyword = line.keyword
        expected = ("CONCEPTS",) if block.kind.is_square else ("DOMAIN", "RANGE")
        if keyword not in expected:
            raise self.error(
                f"{keyword} is not valid in a {block.kind.value} model "
                f"(expected {' and '.join(expected)})",
                line,
            )
        if block.kind.is_linguistic and block.chain is None:
            raise self.error(f"missing CHAIN directive before {keyword}", line)
        if block.rows:
            raise self.error(f"{keyword} must come before the ROW lines", line)
        if not line.args:
            raise self.error(f"{keyword} needs at least one label", line)

        other = {"DOMAIN": "RANGE", "RANGE": "DOMAIN"}.get(keyword)
        other_labels = set(block.spaces[other][1].labels) if other in block.spaces else set()

        seen: set[str] = set()
        for token in line.args:
            if not is_valid_token(token.text):
                raise self.error(f"invalid label '{token.text}'", line, token.column)
            if token.text in seen:
                raise self.error(f"duplicate label '{token.text}'", line, token.column)
            if token.text in other_labels:
                raise self.error(
                    f"label '{token.text}' appears in both DOMAIN and RANGE", line, token.column
                )
            seen.add(token.text)

        block.spaces[keyword] = (line, ConceptSpace(tuple(t.text for t in line.args)))

    def _parse_row(self, block: _Block, line: _Line) -> None:
        row_key = "CONCEPTS" if block.kind.is_square else "DOMAIN"
        if row_key not in block.spaces or (not block.kind.is_square and "RANGE" not in block.spaces):
            needed = "CONCEPTS" if block.kind.is_square else "DOMAIN and RANGE"
            raise self.error(f"ROW before {needed}", line)

        rest_start = line.tokens[0].column - 1 + len("ROW")
        rest = line.text[rest_start:]
        colon = rest.find(":")
        if colon < 0:
            raise self.error("ROW needs 'label:' before its entries", line)

        label_text = rest[:colon].strip()
        label_column = rest_start + (len(rest[:colon]) - len(rest[:colon].lstrip())) + 1
        if not label_text:
            raise self.error("ROW is missing its label", line, rest_start + colon + 1)

        space = block.spaces[row_key][1]
        if label_text not in space:
            raise self.error(f"ROW for unknown label '{label_text}'", line, label_column)
        if label_text in block.rows:
            raise self.error(f"duplicate ROW for '{label_text}'", line, label_column)

        entry_offset = rest_start + colon + 1
        entries = [
            _Token(t.text, t.column + entry_offset) for t in _tokenize(rest[colon + 1:])
        ]
        block.rows[label_text] = _Row(line, _Token(label_text, label_column), entries)

    def _build(self, block: _Block, name: str, positions: dict[str, int], prefix: str) -> AnyModel:
        if block.kind.is_linguistic and block.chain is None:
            raise self.error("missing CHAIN directive", block.start)

        if block.kind.is_square:
            if "CONCEPTS" not in block.spaces:
                raise self.error("missing CONCEPTS directive", block.start)
            rows_line, rows_space = block.spaces["CONCEPTS"]
            columns_space = rows_space
        else:
            for keyword in ("DOMAIN", "RANGE"):
                if keyword not in block.spaces:
                    raise self.error(f"missing {keyword} directive", block.start)
            rows_line, rows_space = block.spaces["DOMAIN"]
            columns_space = block.spaces["RANGE"][1]

        for label in rows_space.labels:
            if label not in block.rows:
                raise self.error(f"missing ROW for '{label}'", rows_line)

        width = columns_space.dimension
        table: list[list] = []
        for i, label in enumerate(rows_space.labels):
            row = block.rows[label]
            positions[f"{prefix}ROW {label}"] = row.line.number
            if len(row.entries) != width:
                column = row.entries[width].column if len(row.entries) > width else row.label.column
                raise self.error(
                    f"row '{label}' has {len(row.entries)} entries, expected {width}",
                    row.line,
                    column,
                )
            if block.kind.is_linguistic:
                table.append(self._term_entries(block, row))
            else:
                table.append(self._integer_entries(block, row, i))

        try:
            if block.kind is ModelFormat.FCM:
                matrix = ConnectionMatrix(
                    rows_space, table, block.matrix_kind, block.allow_diagonal
                )
                return FcmModel(matrix, name=name)
            if block.kind is ModelFormat.FRM:
                matrix = RelationalMatrix(rows_space, columns_space, table, block.matrix_kind)
                return FrmModel(matrix, name=name)
            matrix = LinguisticMatrix(
                block.chain, rows_space, columns_space, np.array(table, dtype=np.int64)
            )
            if block.kind is ModelFormat.FLCM:
                return FlcmModel(matrix, name=name, allow_diagonal=block.allow_diagonal)
            return FlrmModel(matrix, name=name)
        except FuzzyMapError as e:
            raise self.error(e.message, block.start) from e

    def _integer_entries(self, block: _Block, row: _Row, index: int) -> list[int]:
        allowed = ALLOWED_ENTRIES.get(block.matrix_kind)
        values = []
        for j, token in enumerate(row.entries):
            if not _INTEGER.fullmatch(token.text):
                raise self.error(f"entry '{token.text}' is not an integer", row.line, token.column)
            value = int(token.text)
            if allowed is not None and value not in allowed:
                raise self.error(
                    f"entry {value} is outside {sorted(allowed)} required for "
                    f"KIND {block.matrix_kind.value}",
                    row.line,
                    token.column,
                )
            if (
                block.kind is ModelFormat.FCM
                and j == index
                and value != 0
                and block.matrix_kind is not MatrixKind.COMBINED
                and not block.allow_diagonal
            ):
                raise self.error(
                    f"nonzero diagonal entry for '{row.label.text}': a concept cannot cause "
                    f"itself (zero-diagonal rule); add ALLOW_DIAGONAL to accept it",
                    row.line,
                    token.column,
                )
            values.append(value)
        return values

    def _term_entries(self, block: _Block, row: _Row) -> list[int]:
        chain = block.chain
        positions = []
        for token in row.entries:
            if token.text not in chain:
                raise self.error(
                    f"term '{token.text}' is not in the chain {chain.describe()}",
                    row.line,
                    token.column,
                )
            positions.append(chain.position(token.text))
        return positions


def parse_model(text: str, source: str = "<text>", name: str | None = None) -> ModelDocument:
    """
    解析模型文本

    Args:
        text: UTF-8 模型文本
        source: 错误消息中显示的来源
        name: 模型名称，默认使用 source

    Returns:
        ModelDocument

    Raises:
        ParseError: 任何语法或校验错误（带行号和列号）

    使用示例:
        doc = parse_model(read_source_text(path), source=str(path), name=path.stem)
        doc.summary()   # "kind=FCM n=11"
    """
    return _ModelParser(source, name or source).parse(text.removeprefix(BOM))


def read_source_text(path: Path, source: str | None = None) -> str:
    """
    按 UTF-8 读取模型或场景文件，允许开头的 BOM

    Args:
        path: 文件路径
        source: 错误消息中显示的来源，默认使用路径

    Returns:
        去掉 BOM 的文本

    Raises:
        ParseError: 文件含有无法按 UTF-8 解码的字节，定位到该字节所在的行和列
    """
    data = path.read_bytes().removeprefix(codecs.BOM_UTF8)
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line_start = data.rfind(b"\n", 0, e.start) + 1
        line = data.count(b"\n", 0, e.start) + 1
        column = len(data[line_start:e.start].decode("utf-8", errors="replace")) + 1
        raise ParseError(
            f"invalid UTF-8 byte 0x{data[e.start]:02x}", line, column, source or str(path)
        ) from e
