"""
FRM模块

提供模糊关系映射的正向/反向乘法与隐藏对求解
"""

from maps.frm.frm_model import (
    FrmModel,
    HiddenPair,
    Side,
    backward,
    combine_frms,
    forward,
    hidden_pair,
    solve_component,
)

__all__ = [
    "FrmModel",
    "HiddenPair",
    "Side",
    "backward",
    "combine_frms",
    "forward",
    "hidden_pair",
    "solve_component",
]
