"""
模型序列化

按规范顺序输出：MODEL、KIND、ALLOW_DIAGONAL、CHAIN、CONCEPTS | DOMAIN + RANGE、ROW（按概念顺序），
元素之间用单个空格分隔。parse_model(serialize_model(m)) 与 m 结构相同。
"""

from core.matrices import MatrixKind
from maps.fcm import FcmModel
from maps.fcrm import FcrmBimodel
from maps.frm import FrmModel
from maps.linguistic import FlcmModel, FlrmModel
from modelio.parser import AnyModel, ModelDocument


def _rows(labels, table) -> list[str]:
    return [f"ROW {label}: {' '.join(str(v) for v in row)}" for label, row in zip(labels, table)]


def _fcm_lines(model: FcmModel) -> list[str]:
    lines = []
    if model.kind is not MatrixKind.SIMPLE:
        lines.append(f"KIND {model.kind.value}")
    if model.matrix.allow_diagonal:
        lines.append("ALLOW_DIAGONAL")
    lines.append(f"CONCEPTS {' '.join(model.space.labels)}")
    lines.extend(_rows(model.space.labels, model.matrix.rows()))
    return lines


def _frm_lines(model: FrmModel) -> list[str]:
    lines = []
    if model.kind is not MatrixKind.SIMPLE:
        lines.append(f"KIND {model.kind.value}")
    lines.append(f"DOMAIN {' '.join(model.domain.labels)}")
    lines.append(f"RANGE {' '.join(model.range.labels)}")
    lines.extend(_rows(model.domain.labels, model.matrix.rows()))
    return lines


def serialize_model(model: AnyModel | ModelDocument) -> str:
    """
    模型 → 规范文本

    Args:
        model: 任意模型对象或 ModelDocument

    Returns:
        以换行结尾的模型文本
    """
    if isinstance(model, ModelDocument):
        model = model.model

    if isinstance(model, FcmModel):
        lines = ["MODEL FCM", *_fcm_lines(model)]
    elif isinstance(model, FrmModel):
        lines = ["MODEL FRM", *_frm_lines(model)]
    elif isinstance(model, FcrmBimodel):
        lines = ["MODEL FCRM"]
        if model.identify:
            lines.append("IDENTIFY")
        lines += ["BEGIN FCM", *_fcm_lines(model.first), "END"]
        lines += ["BEGIN FRM", *_frm_lines(model.second), "END"]
    elif isinstance(model, FlcmModel):
        lines = ["MODEL FLCM"]
        if model.allow_diagonal:
            lines.append("ALLOW_DIAGONAL")
        lines.append(f"CHAIN {model.chain.describe()}")
        lines.append(f"CONCEPTS {' '.join(model.space.labels)}")
        lines.extend(_rows(model.space.labels, model.matrix.term_rows()))
    elif isinstance(model, FlrmModel):
        lines = [
            "MODEL FLRM",
            f"CHAIN {model.chain.describe()}",
            f"DOMAIN {' '.join(model.domain.labels)}",
            f"RANGE {' '.join(model.range.labels)}",
        ]
        lines.extend(_rows(model.domain.labels, model.matrix.term_rows()))
    else:
        raise TypeError(f"Cannot serialize {type(model).__name__}")

    return "\n".join(lines) + "\n"
