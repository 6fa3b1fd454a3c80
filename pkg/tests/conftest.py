"""
测试公共夹具

内置 fixture 在一次测试会话中只解析一次
"""

import pytest

from core.matrices import ConnectionMatrix, MatrixKind, RelationalMatrix
from core.spaces import ConceptSpace
from maps.fcm import FcmModel
from maps.frm import FrmModel
from modelio import load_fixture


CH4_LABELS = (
    "no_proper_healthcare",
    "poor_nutrition",
    "improper_clothing",
    "no_proper_shelter",
    "no_recreation",
    "no_school_education",
    "no_employment",
    "no_sshg_information",
    "welfare_not_reaching",
    "poor_economy",
    "marriage_question_mark",
)


def make_fcm(labels, rows, kind=MatrixKind.SIMPLE, allow_diagonal=False, name=None) -> FcmModel:
    space = ConceptSpace(tuple(labels))
    return FcmModel(ConnectionMatrix(space, rows, kind, allow_diagonal), name=name)


def make_frm(domain, range_, rows, kind=MatrixKind.SIMPLE, name=None) -> FrmModel:
    matrix = RelationalMatrix(ConceptSpace(tuple(domain)), ConceptSpace(tuple(range_)), rows, kind)
    return FrmModel(matrix, name=name)


@pytest.fixture(scope="session")
def fixture_model():
    """按编号取内置 fixture 的模型对象"""
    cache = {}

    def get(fixture_id: str):
        if fixture_id not in cache:
            cache[fixture_id] = load_fixture(fixture_id)
        return cache[fixture_id].model

    return get


@pytest.fixture
def oscillator() -> FcmModel:
    """a→b→c，c 抑制 b：从 a 出发得到长度为4的极限环"""
    return make_fcm(
        ("a", "b", "c"),
        [[0, 1, 0], [0, 0, 1], [0, -1, 0]],
        name="oscillator",
    )
