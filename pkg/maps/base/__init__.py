"""
基础映射模块

提供所有推理模型的基础抽象类
"""

from maps.base.base_map import BaseMap

__all__ = [
    "BaseMap",
]
