"""
有向图反馈分析

连接矩阵的非零非对角元素视为有向边，寻找一个有向环（反馈）。
"""

from typing import Sequence

import networkx as nx
import numpy as np

from core.matrices import ConnectionMatrix


def build_digraph(labels: Sequence[str], adjacency: np.ndarray) -> nx.DiGraph:
    """
    由布尔邻接矩阵构造有向图，自环不计入

    Args:
        labels: 节点标签，顺序与矩阵行列一致
        adjacency: n×n 布尔矩阵

    Returns:
        nx.DiGraph，节点为全部标签
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(labels)
    rows, cols = np.nonzero(adjacency)
    graph.add_edges_from(
        (labels[i], labels[j]) for i, j in zip(rows.tolist(), cols.tolist()) if i != j
    )
    return graph


def find_cycle_in_adjacency(labels: Sequence[str], adjacency: np.ndarray) -> list[str] | None:
    """
    在布尔邻接矩阵上寻找一个有向环（忽略自环）

    Returns:
        环上的标签，首个标签在末尾重复；无环时返回None
    """
    try:
        edges = nx.find_cycle(build_digraph(labels, adjacency))
    except nx.NetworkXNoCycle:
        return None
    return [u for u, _ in edges] + [edges[-1][1]]


def find_feedback_cycle(matrix: ConnectionMatrix) -> list[str] | None:
    """
    连接矩阵的有向环

    使用示例:
        find_feedback_cycle(m)   # ["a", "b", "a"]
    """
    return find_cycle_in_adjacency(matrix.space.labels, matrix.entries != 0)
