"""
FCM模块

提供模糊认知映射的隐藏模式求解以及多专家矩阵的合并
"""

from maps.fcm.aggregation import ScoreProfile, combine_fcms, score_profile, special_fcm
from maps.fcm.fcm_model import FcmModel, hidden_pattern, solve_component

__all__ = [
    "FcmModel",
    "ScoreProfile",
    "combine_fcms",
    "hidden_pattern",
    "score_profile",
    "solve_component",
    "special_fcm",
]
