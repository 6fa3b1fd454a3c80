"""
内置 fixture

功能：
- 随包提供的模型文件（modelio/fixtures/*.model），文件首行注释为来源说明
- load_fixture / list_fixtures
- load_model：文件路径或 fixture:<id> 统一入口（CLI 使用）
"""

import logging
from dataclasses import dataclass
from pathlib import Path

from core.errors import UnknownFixtureError
from modelio.parser import ModelDocument, parse_model, read_source_text


logger = logging.getLogger(__name__)

FIXTURE_DIR = Path(__file__).parent / "fixtures"
FIXTURE_PREFIX = "fixture:"


@dataclass(frozen=True)
class FixtureInfo:
    """fixture 的编号、模型格式和来源说明"""
    fixture_id: str
    kind: str
    provenance: str


def _fixture_path(fixture_id: str) -> Path:
    path = FIXTURE_DIR / f"{fixture_id}.model"
    if not fixture_id or "/" in fixture_id or not path.is_file():
        known = ", ".join(sorted(p.stem for p in FIXTURE_DIR.glob("*.model")))
        raise UnknownFixtureError(f"Unknown fixture '{fixture_id}' (known: {known})")
    return path


def _describe(path: Path) -> FixtureInfo:
    provenance = ""
    kind = "?"
    for line in path.read_text(encoding="utf-8").splitlines():
        stripped = line.strip()
        if stripped.startswith("#") and not provenance:
            provenance = stripped.lstrip("#").strip()
        elif stripped.startswith("MODEL"):
            kind = stripped.split()[-1]
            break
    return FixtureInfo(path.stem, kind, provenance)


def list_fixtures() -> list[FixtureInfo]:
    """按编号排序的全部内置 fixture"""
    return [_describe(path) for path in sorted(FIXTURE_DIR.glob("*.model"))]


def load_fixture(fixture_id: str) -> ModelDocument:
    """
    加载内置 fixture

    Args:
        fixture_id: 例如 "ch4_special_M"

    Returns:
        ModelDocument，模型名称即 fixture 编号

    Raises:
        UnknownFixtureError: 编号不存在

    使用示例:
        doc = load_fixture("ch5_public_T")
        doc.summary()   # "kind=FRM n=9 m=11"
    """
    path = _fixture_path(fixture_id)
    document = parse_model(
        path.read_text(encoding="utf-8"),
        source=f"{FIXTURE_PREFIX}{fixture_id}",
        name=fixture_id,
    )
    logger.info(f"Loaded fixture {fixture_id} ({document.summary()})")
    return document


def load_model(reference: str | Path) -> ModelDocument:
    """
    加载模型文件或 fixture

    Args:
        reference: 文件路径，或 "fixture:<id>"

    Raises:
        FileNotFoundError: 文件不存在
        ParseError: 文件内容无效
        UnknownFixtureError: fixture 不存在
    """
    reference = str(reference)
    if reference.startswith(FIXTURE_PREFIX):
        return load_fixture(reference[len(FIXTURE_PREFIX):])

    path = Path(reference)
    if not path.exists():
        raise FileNotFoundError(f"Model file not found: {path}")
    return parse_model(read_source_text(path), source=str(path), name=path.stem)
