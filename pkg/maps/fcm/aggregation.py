"""
多专家 FCM 的合并

功能：
- combine_fcms：逐元素相加得到 combined FCM
- special_fcm：p 个 positive 矩阵的平均值 ≥ 0.5 记为1（只用整数运算）
- score_profile：在 combined FCM 的不动点上读取未阈值化的得分并排序
"""

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from core.errors import MatrixKindError, ProfileUndefinedError, UsageError
from core.matrices import ConnectionMatrix, MatrixKind, add_matrices
from core.patterns import MAX_ITERS_CAP
from core.spaces import require_same_space
from core.states import RawVector, StateVector, mul_state_matrix
from maps.fcm.fcm_model import FcmModel, hidden_pattern


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScoreProfile:
    """
    combined FCM 不动点上的得分剖面

    Attributes:
        final_state: 不动点
        raw_scores: 不动点乘 combined 矩阵的原始得分
        ranking: 按得分降序排列的下标，得分相同按下标升序
    """

    final_state: StateVector
    raw_scores: RawVector
    ranking: tuple[int, ...]

    def ranked_labels(self) -> tuple[str, ...]:
        return tuple(self.final_state.space.label(i) for i in self.ranking)

    def top(self) -> tuple[str, int]:
        """得分最高的概念及其得分"""
        index = self.ranking[0]
        return self.final_state.space.label(index), self.raw_scores.scores[index]


def _require_models(models: Sequence[FcmModel], what: str) -> list[FcmModel]:
    models = list(models)
    if not models:
        raise UsageError(f"{what} needs at least one model")
    for i, model in enumerate(models[1:], start=2):
        require_same_space(models[0].space, model.space, f"{what} input {i}")
    return models


def combine_fcms(models: Sequence[FcmModel], name: str | None = None) -> FcmModel:
    """
    合并多位专家的 FCM（矩阵逐元素相加）

    Args:
        models: 共享同一概念空间的模型列表
        name: 结果模型名称

    Returns:
        kind=combined 的 FCM
    """
    models = _require_models(models, "combine_fcms")
    matrix = add_matrices([m.matrix for m in models])
    return FcmModel(matrix, name=name or "combined")


def special_fcm(models: Sequence[FcmModel], name: str | None = None) -> FcmModel:
    """
    构造特殊 FCM（positive special connection matrix）

    元素为1当且仅当 2·(各矩阵该元素之和) ≥ p，即平均值 ≥ 0.5。

    Args:
        models: p 个 positive FCM

    Returns:
        kind=positive 的 FCM

    Raises:
        MatrixKindError: 任一输入含有 {0, 1} 以外的元素
    """
    models = _require_models(models, "special_fcm")
    for i, model in enumerate(models, start=1):
        entries = model.matrix.entries
        if model.kind is not MatrixKind.POSITIVE and not np.isin(entries, (0, 1)).all():
            raise MatrixKindError(
                f"special_fcm input {i} ('{model.name}') has entries outside {{0, 1}}"
            )

    p = len(models)
    total = np.sum([m.matrix.entries for m in models], axis=0)
    entries = (2 * total >= p).astype(np.int64)

    # 平均后对角线元素只可能来自允许对角线的输入
    allow_diagonal = any(m.matrix.allow_diagonal for m in models)
    matrix = ConnectionMatrix(models[0].space, entries, MatrixKind.POSITIVE, allow_diagonal)

    logger.info(f"Built special FCM from {p} positive matrices ({int(entries.sum())} edges)")
    return FcmModel(matrix, name=name or "special")


def score_profile(
    model: FcmModel,
    seed: StateVector,
    max_iters: int | None = None,
    cap: int = MAX_ITERS_CAP,
) -> ScoreProfile:
    """
    在不动点上读取得分剖面（用于判断 combined FCM 中各节点的重要程度）

    Raises:
        ProfileUndefinedError: 隐藏模式是极限环
    """
    pattern = hidden_pattern(model, seed, max_iters, cap)
    if not pattern.is_fixed_point:
        raise ProfileUndefinedError(pattern.period)

    final_state = pattern.final_state
    raw = mul_state_matrix(final_state, model.matrix)
    ranking = tuple(sorted(range(len(raw.scores)), key=lambda i: (-raw.scores[i], i)))

    logger.info(
        f"Score profile for '{model.name}': top concept "
        f"'{final_state.space.label(ranking[0])}' with score {raw.scores[ranking[0]]}"
    )
    return ScoreProfile(final_state, raw, ranking)
