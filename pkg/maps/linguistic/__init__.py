"""
模糊语言模块

语言项链、四种合成算子以及 FLCM / FLRM 的隐藏模式求解
"""

from maps.linguistic.algebra import (
    LinguisticMatrix,
    LinguisticState,
    clamp_state,
    compose,
    compose_raw,
)
from maps.linguistic.chain import (
    BOTTOM,
    CompositionOperator,
    LinguisticChain,
    compare_terms,
)
from maps.linguistic.models import (
    FlcmModel,
    FlrmModel,
    flcm_hidden_pattern,
    flrm_backward,
    flrm_forward,
    flrm_hidden_pair,
)

__all__ = [
    "BOTTOM",
    "CompositionOperator",
    "FlcmModel",
    "FlrmModel",
    "LinguisticChain",
    "LinguisticMatrix",
    "LinguisticState",
    "clamp_state",
    "compare_terms",
    "compose",
    "compose_raw",
    "flcm_hidden_pattern",
    "flrm_backward",
    "flrm_forward",
    "flrm_hidden_pair",
]
