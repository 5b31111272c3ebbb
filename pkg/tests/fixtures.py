"""Shared test graphs, built in code so tests do not depend on data files.

fig1: the 14-vertex three-node graph with |H| = 36 and p_g = 7.
exmc: the 6-vertex two-node graph whose splice system is
      z1^2 + z2^2 + z3 z4^2, z3^2 + z4^3 + z1 z2.
"""

import os

from splicegenus import ResolutionGraph

GRAPHS_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "graphs")


def fig1() -> ResolutionGraph:
    vs = [("w1", -2), ("u2", -2), ("v1", -1), ("u4", -16), ("v0", -2),
          ("u6", -4), ("u7", -2), ("v2", -2), ("u9", -2), ("w5", -2),
          ("w2", -4), ("w3", -2), ("a1", -2), ("w4", -2)]
    es = [("w1", "u2"), ("u2", "v1"), ("v1", "u4"), ("u4", "v0"),
          ("v0", "u6"), ("u6", "u7"), ("u7", "v2"), ("v2", "u9"),
          ("u9", "w5"), ("v1", "w2"), ("v0", "w3"), ("v2", "a1"),
          ("a1", "w4")]
    return ResolutionGraph(vs, es)


def exmc() -> ResolutionGraph:
    vs = [("E1", -2), ("E2", -2), ("E3", -2), ("E4", -3), ("E5", -2),
          ("E6", -2)]
    es = [("E1", "E5"), ("E2", "E5"), ("E5", "E6"), ("E3", "E6"),
          ("E4", "E6")]
    return ResolutionGraph(vs, es)


def d4() -> ResolutionGraph:
    return ResolutionGraph(
        [("c", -2), ("l1", -2), ("l2", -2), ("l3", -2)],
        [("c", "l1"), ("c", "l2"), ("c", "l3")])


def e8() -> ResolutionGraph:
    vs = [(f"e{i}", -2) for i in range(1, 9)]
    es = [("e1", "e2"), ("e2", "e3"), ("e3", "e4"), ("e4", "e5"),
          ("e5", "e6"), ("e6", "e7"), ("e3", "e8")]
    return ResolutionGraph(vs, es)


def a_chain(n, weight=-2) -> ResolutionGraph:
    vs = [(f"a{i}", weight) for i in range(1, n + 1)]
    es = [(f"a{i}", f"a{i + 1}") for i in range(1, n)]
    return ResolutionGraph(vs, es)


def single(weight=-2) -> ResolutionGraph:
    return ResolutionGraph([("e", weight)], [])


def graph_file(name) -> str:
    return os.path.join(GRAPHS_DIR, name)
