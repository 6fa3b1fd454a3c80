"""
模型输入输出模块

模型/场景文本格式的解析与序列化，以及随包提供的 fixture
"""

from modelio.fixtures import FixtureInfo, list_fixtures, load_fixture, load_model
from modelio.parser import ModelDocument, ModelFormat, parse_model, read_source_text
from modelio.scenario import Scenario, SeedAssignment, SeedComponent, build_seed, parse_scenario
from modelio.serializer import serialize_model

__all__ = [
    "FixtureInfo",
    "ModelDocument",
    "ModelFormat",
    "Scenario",
    "SeedAssignment",
    "SeedComponent",
    "build_seed",
    "list_fixtures",
    "load_fixture",
    "load_model",
    "parse_model",
    "parse_scenario",
    "read_source_text",
    "serialize_model",
]
