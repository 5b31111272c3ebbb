"""Weighted resolution graphs, dual cycles, and basic cycle computations.

A resolution graph is a tree of rational curves E_v with self-intersection
weights; the intersection matrix I has the weights on the diagonal and 1 for
each edge.  All linear algebra is exact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import exact
from .errors import (
    GraphInputError,
    GraphSyntaxError,
    NotATree,
    NotNegativeDefinite,
)


class QCycle:
    """A formal rational combination of the vertices E_v.

    Missing keys mean coefficient zero.  Immutable in spirit: all operations
    return new cycles.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {}
        if coeffs:
            for k, v in dict(coeffs).items():
                v = Fraction(v)
                if v != 0:
                    self.coeffs[k] = v

    def __getitem__(self, v):
        return self.coeffs.get(v, Fraction(0))

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return QCycle(out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) - v
        return QCycle(out)

    def __neg__(self):
        return QCycle({k: -v for k, v in self.coeffs.items()})

    def scale(self, c):
        c = Fraction(c)
        return QCycle({k: c * v for k, v in self.coeffs.items()})

    def floor(self):
        """Coefficientwise integral part [D]."""
        return QCycle({k: Fraction(math.floor(v)) for k, v in self.coeffs.items()})

    def is_zero(self):
        return not self.coeffs

    def is_integral(self):
        return all(v.denominator == 1 for v in self.coeffs.values())

    def is_effective(self):
        return all(v >= 0 for v in self.coeffs.values())

    def support(self):
        return set(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, QCycle) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        if not self.coeffs:
            return "QCycle(0)"
        parts = [f"{v}*E[{k}]" for k, v in sorted(self.coeffs.items())]
        return "QCycle(" + " + ".join(parts) + ")"

    def to_json(self):
        return {k: str(v) for k, v in sorted(self.coeffs.items())}


def unit_cycle(v):
    return QCycle({v: 1})


@dataclass
class ValidationReport:
    valid: bool
    is_tree: bool
    negative_definite: bool
    is_chain: bool
    nodes: list
    ends: list
    error: str | None = None
    warnings: list = field(default_factory=list)


@dataclass
class DualData:
    """Entries of -I^{-1}, |det I|, and the dual cycles E*_v."""

    inverse: dict          # (v, w) -> Fraction a_vw, all positive
    det_abs: int
    dual_cycles: dict      # v -> QCycle E*_v


@dataclass
class NodeWeights:
    v: str
    ell: dict              # w -> l_vw = |det I| * a_vw
    e: int                 # e_v
    m: dict                # w -> m_vw = e_v * a_vw
    a_v: int               # e_v * m_vv


@dataclass
class Branch:
    """A connected component of E - E_v, as a standalone graph.

    Vertex ids are shared with the parent graph.
    """

    parent: "ResolutionGraph"
    node: str
    attach: str            # the branch vertex adjacent to the node
    subgraph: "ResolutionGraph"

    @property
    def vertex_ids(self):
        return self.subgraph.ids


class ResolutionGraph:
    """Weighted tree of rational curves.  Vertex order is the input order."""

    def __init__(self, vertices, edges):
        self.ids = []
        self.weight = {}
        for vid, w in vertices:
            if vid in self.weight:
                raise GraphInputError(f"duplicate vertex id {vid!r}")
            if int(w) != w:
                raise GraphInputError(f"weight of {vid!r} is not an integer")
            self.ids.append(vid)
            self.weight[vid] = int(w)
        self.adj = {v: set() for v in self.ids}
        self.edges = []
        seen = set()
        for a, b in edges:
            if a not in self.weight or b not in self.weight:
                missing = a if a not in self.weight else b
                raise GraphInputError(f"edge references unknown vertex {missing!r}")
            if a == b:
                raise GraphInputError(f"self-loop at {a!r}")
            key = frozenset((a, b))
            if key in seen:
                continue
            seen.add(key)
            self.edges.append(tuple(sorted((a, b))))
            self.adj[a].add(b)
            self.adj[b].add(a)
        self.edges.sort()
        self._cache = {}

    # -- basic queries ----------------------------------------------------

    def __len__(self):
        return len(self.ids)

    def index(self, v):
        return self.ids.index(v)

    def degree(self, v):
        return len(self.adj[v])

    def nodes(self):
        return [v for v in self.ids if self.degree(v) >= 3]

    def ends(self):
        return [v for v in self.ids if self.degree(v) <= 1]

    def is_chain(self):
        return not self.nodes()

    def intersection_matrix(self):
        n = len(self.ids)
        pos = {v: i for i, v in enumerate(self.ids)}
        I = [[0] * n for _ in range(n)]
        for i, v in enumerate(self.ids):
            I[i][i] = self.weight[v]
        for a, b in self.edges:
            I[pos[a]][pos[b]] = 1
            I[pos[b]][pos[a]] = 1
        return I

    def intersect(self, x: QCycle, y: QCycle):
        """Intersection number x . y via the intersection form."""
        total = Fraction(0)
        for v, cv in x.coeffs.items():
            total += cv * self.weight[v] * y[v]
            for u in self.adj[v]:
                total += cv * y[u]
        return total

    def fingerprint(self):
        """Deterministic identity of the weighted graph (ids included)."""
        key = "fingerprint"
        if key not in self._cache:
            vs = ";".join(f"{v}:{self.weight[v]}" for v in sorted(self.ids))
            es = ";".join(f"{a}-{b}" for a, b in self.edges)
            self._cache[key] = vs + "|" + es
        return self._cache[key]

    # -- validation -------------------------------------------------------

    def validate(self) -> ValidationReport:
        n = len(self.ids)
        is_tree = n >= 1 and len(self.edges) == n - 1 and self._connected()
        if not is_tree:
            return ValidationReport(False, False, False, False, [], [],
                                    error="graph is not a tree")
        bad = exact.negative_definite_violation(self.intersection_matrix())
        if bad is not None:
            return ValidationReport(False, True, False, False, [], [],
                                    error=f"not negative definite (minor {bad})")
        chain = self.is_chain()
        warnings = []
        if chain:
            warnings.append(
                "chain (cyclic quotient): excluded by Assumption 2.1 at top level"
            )
        for v in self.ids:
            if self.weight[v] > -1:
                return ValidationReport(False, True, True, chain, [], [],
                                        error=f"weight of {v!r} must be <= -1")
        return ValidationReport(True, True, True, chain,
                                self.nodes(), self.ends(), warnings=warnings)

    def _connected(self):
        if not self.ids:
            return False
        seen = {self.ids[0]}
        stack = [self.ids[0]]
        while stack:
            for u in self.adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(self.ids)

    def require_valid(self):
        key = "validated"
        if key not in self._cache:
            rep = self.validate()
            if not rep.valid:
                if not rep.is_tree:
                    raise NotATree(rep.error)
                if not rep.negative_definite:
                    bad = exact.negative_definite_violation(self.intersection_matrix())
                    raise NotNegativeDefinite(bad)
                raise GraphInputError(rep.error)
            self._cache[key] = rep
        return self._cache[key]

    # -- dual cycles and weights ------------------------------------------

    def dual_data(self) -> DualData:
        key = "dual"
        if key in self._cache:
            return self._cache[key]
        self.require_valid()
        I = self.intersection_matrix()
        det = exact.det_bareiss(I)
        det_abs = abs(det)
        inv = exact.inverse(exact.frac_matrix(I))
        a = {}
        for i, v in enumerate(self.ids):
            for j, w in enumerate(self.ids):
                val = -inv[i][j]
                assert val > 0, "entries of -I^{-1} must be positive"
                a[(v, w)] = val
        duals = {}
        for v in self.ids:
            duals[v] = QCycle({w: a[(v, w)] for w in self.ids})
        # E*_v . E_w = -delta_vw, checked exactly
        for v in self.ids:
            for w in self.ids:
                expect = Fraction(-1 if v == w else 0)
                assert self.intersect(duals[v], unit_cycle(w)) == expect
        data = DualData(inverse=a, det_abs=det_abs, dual_cycles=duals)
        self._cache[key] = data
        return data

    def dual_cycle(self, v) -> QCycle:
        return self.dual_data().dual_cycles[v]

    def node_weights(self, v) -> NodeWeights:
        key = ("nw", v)
        if key in self._cache:
            return self._cache[key]
        dd = self.dual_data()
        det = dd.det_abs
        ell = {}
        for w in self.ids:
            l = det * dd.inverse[(v, w)]
            assert l.denominator == 1 and l > 0
            ell[w] = int(l)
        e = det // math.gcd(*ell.values())
        m = {}
        for w in self.ids:
            mv = e * dd.inverse[(v, w)]
            assert mv.denominator == 1, f"m_vw not integral at ({v},{w})"
            m[w] = int(mv)
        assert math.gcd(*m.values()) == 1, f"gcd of m_{v}w weights is not 1"
        a_v = e * m[v]
        nw = NodeWeights(v=v, ell=ell, e=e, m=m, a_v=a_v)
        self._cache[key] = nw
        return nw

    # -- canonical and fundamental cycles ---------------------------------

    def canonical_cycle(self):
        """c_1(K): the QCycle with K . E_w = -E_w^2 - 2 for every w.

        Returns (K, numerically_gorenstein).
        """
        key = "canonical"
        if key in self._cache:
            return self._cache[key]
        self.require_valid()
        I = self.intersection_matrix()
        rhs = [Fraction(-self.weight[v] - 2) for v in self.ids]
        sol = exact.solve(exact.frac_matrix(I), rhs)
        K = QCycle(dict(zip(self.ids, sol)))
        for w in self.ids:
            assert self.intersect(K, unit_cycle(w)) == -self.weight[w] - 2
        result = (K, K.is_integral())
        self._cache[key] = result
        return result

    def fundamental_cycle(self):
        """Artin's fundamental cycle Z by Laufer's increment loop.

        Returns (Z, p_a(Z)) with p_a(Z) = 1 + Z.(Z+K)/2.
        """
        key = "fundamental"
        if key in self._cache:
            return self._cache[key]
        self.require_valid()
        Z = QCycle({v: 1 for v in self.ids})
        while True:
            for w in self.ids:
                if self.intersect(Z, unit_cycle(w)) > 0:
                    Z = Z + unit_cycle(w)
                    break
            else:
                break
        K, _ = self.canonical_cycle()
        pa = 1 + self.intersect(Z, Z + K) / 2
        assert pa.denominator == 1
        result = (Z, int(pa))
        self._cache[key] = result
        return result

    # -- branches ----------------------------------------------------------

    def subgraph(self, vertex_ids):
        keep = set(vertex_ids)
        vs = [(v, self.weight[v]) for v in self.ids if v in keep]
        es = [(a, b) for a, b in self.edges if a in keep and b in keep]
        return ResolutionGraph(vs, es)

    def branches(self, v):
        """Connected components of E - E_v, ordered by attaching-vertex id."""
        self.require_valid()
        out = []
        for u in sorted(self.adj[v]):
            comp = {u}
            stack = [u]
            while stack:
                for x in self.adj[stack.pop()]:
                    if x != v and x not in comp:
                        comp.add(x)
                        stack.append(x)
            out.append(Branch(parent=self, node=v, attach=u,
                              subgraph=self.subgraph(comp)))
        return out

    # -- serialization -----------------------------------------------------

    def dump(self, fmt="json"):
        if fmt == "json":
            return json.dumps(
                {"vertices": [{"id": v, "weight": self.weight[v]} for v in self.ids],
                 "edges": [[a, b] for a, b in self.edges]},
                separators=(",", ":"))
        if fmt == "dsl":
            lines = [f"vertex {v} {self.weight[v]}" for v in self.ids]
            lines += [f"edge {a} {b}" for a, b in self.edges]
            return "\n".join(lines) + "\n"
        raise ValueError(f"unknown format {fmt!r}")


def parse_graph(text: str) -> ResolutionGraph:
    """Parse a graph from the JSON schema or the line-oriented DSL."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_json(text)
    return _parse_dsl(text)


def _parse_json(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphSyntaxError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or "vertices" not in data:
        raise GraphSyntaxError("expected an object with a 'vertices' list")
    vertices = []
    for item in data["vertices"]:
        try:
            vertices.append((str(item["id"]), int(item["weight"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphSyntaxError(f"bad vertex entry {item!r}") from exc
    edges = []
    for pair in data.get("edges", []):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise GraphSyntaxError(f"bad edge entry {pair!r}")
        edges.append((str(pair[0]), str(pair[1])))
    return ResolutionGraph(vertices, edges)


def _parse_dsl(text):
    vertices = []
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex" and len(parts) == 3:
            try:
                vertices.append((parts[1], int(parts[2])))
            except ValueError:
                raise GraphSyntaxError(f"bad weight {parts[2]!r}", line=lineno)
        elif parts[0] == "edge" and len(parts) == 3:
            edges.append((parts[1], parts[2]))
        else:
            raise GraphSyntaxError(f"unrecognized directive {line!r}", line=lineno)
    return ResolutionGraph(vertices, edges)
