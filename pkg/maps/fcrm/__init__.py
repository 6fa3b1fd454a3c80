"""
FCRM模块

FCM 与 FRM 组成的双模型，在状态双向量上按分量演化
"""

from maps.fcrm.bimodel import (
    BihiddenPattern,
    FcrmBimodel,
    StateBivector,
    TransposeMode,
    aligned_trace,
    bihidden_pattern,
    build_bimodel,
    combine_fcrms,
    special_transpose,
)

__all__ = [
    "BihiddenPattern",
    "FcrmBimodel",
    "StateBivector",
    "TransposeMode",
    "aligned_trace",
    "bihidden_pattern",
    "build_bimodel",
    "combine_fcrms",
    "special_transpose",
]
