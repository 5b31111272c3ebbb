"""The monomial condition and splice diagram equations.

A monomial cycle is a nonnegative integer combination D of the end duals
E*_w.  D is admissible for (node v, branch C) when D - E*_v is an effective
integral cycle supported on C.  The monomial condition asks for one such D
per branch per node; the emitted system takes delta_v - 2 generic linear
combinations of the delta_v admissible monomials at each node.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateCoefficients
from .graph import QCycle, ResolutionGraph
from .molien import group_data


@dataclass
class MonomialCycle:
    exponents: dict            # end-id -> nonnegative int
    cycle: QCycle              # sum alpha_w E*_w

    def total(self):
        return sum(self.exponents.values())


@dataclass
class AdmissibilityWitness:
    node: str
    attach: str                # identifies the branch
    monomial: MonomialCycle
    residual: QCycle           # = cycle - E*_v


@dataclass
class NodeSystem:
    node: str
    monomials: list            # one MonomialCycle per branch, branch order
    v_degree: int
    coefficients: list         # (delta-2) x delta rows of Fractions
    equations: list            # per row: list of (coeff, exponents dict)


@dataclass
class SpliceSystem:
    nodes: list                # list of NodeSystem
    seed: int

    def to_json(self):
        return {
            "seed": self.seed,
            "nodes": [
                {"node": ns.node,
                 "vDegree": ns.v_degree,
                 "monomials": [dict(m.exponents) for m in ns.monomials],
                 "equations": [
                     [{"coefficient": str(c), "exponents": dict(e)}
                      for c, e in eq]
                     for eq in ns.equations]}
                for ns in self.nodes],
        }


def monomial_cycle(g: ResolutionGraph, exponents) -> MonomialCycle:
    dd = g.dual_data()
    cycle = QCycle()
    exps = {}
    for w, a in exponents.items():
        a = int(a)
        assert a >= 0
        if a:
            exps[w] = a
            cycle = cycle + dd.dual_cycles[w].scale(a)
    return MonomialCycle(exponents=exps, cycle=cycle)


def v_degree(g: ResolutionGraph, v, exponents) -> int:
    """Sum of alpha_w m_vw; equals -e_v D.E*_v = e_v (coefficient of D at v)."""
    nw = g.node_weights(v)
    deg = sum(int(a) * nw.m[w] for w, a in exponents.items())
    D = monomial_cycle(g, exponents).cycle
    check = nw.e * D[v]
    assert check == deg, f"v-degree identity fails: {deg} != {check}"
    return deg


def validate_witness(g: ResolutionGraph, v, branch, exponents):
    """Independent check of admissibility; returns the witness or None.

    Deliberately a separate code path from the search: recomputes the cycle
    and residual from scratch and checks every invariant exactly.
    """
    ends = set(g.ends())
    if any(w not in ends or int(a) < 0 for w, a in exponents.items()):
        return None
    branch_vs = set(branch.subgraph.ids)
    # only ends on the branch may carry exponents
    if any(a and w not in branch_vs for w, a in exponents.items()):
        return None
    mono = monomial_cycle(g, exponents)
    residual = mono.cycle - g.dual_cycle(v)
    if not residual.is_integral():
        return None
    if not residual.is_effective():
        return None
    if not residual.support() <= branch_vs:
        return None
    return AdmissibilityWitness(node=v, attach=branch.attach,
                                monomial=mono, residual=residual)


def _rref(rows, rhs):
    """Row-reduce [rows | rhs]; returns (pivot cols, reduced rows, reduced rhs)."""
    rows = [[Fraction(x) for x in r] for r in rows]
    rhs = [Fraction(x) for x in rhs]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        rhs[r], rhs[pivot] = rhs[pivot], rhs[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        rhs[r] = rhs[r] * inv
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
                rhs[i] = rhs[i] - f * rhs[r]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    # inconsistent system: a zero row with nonzero rhs
    for i in range(r, len(rows)):
        if rhs[i] != 0:
            return None
    return pivots, rows[:r], rhs[:r]


def find_admissible_monomial(g: ResolutionGraph, v, branch, bound=64):
    """Search for an admissible monomial for (v, branch).

    The support constraints (D - E*_v vanishes outside the branch) cut out
    an affine subspace of the exponent space; its free coordinates are
    enumerated over [0, bound] in lexicographic order and every candidate
    is validated by the independent path.  Among the solutions found, the
    one with the smallest total exponent (ties by lex order) is returned;
    None means not found within the bound.
    """
    g.require_valid()
    dd = g.dual_data()
    ends = g.ends()
    branch_vs = set(branch.subgraph.ids)
    outside = [u for u in g.ids if u not in branch_vs]
    rows = [[dd.inverse[(w, u)] for w in ends] for u in outside]
    rhs = [dd.inverse[(v, u)] for u in outside]
    red = _rref(rows, rhs)
    if red is None:
        return None
    pivots, rrows, rrhs = red
    free = [c for c in range(len(ends)) if c not in pivots]
    best = None
    for vals in itertools.product(range(bound + 1), repeat=len(free)):
        alpha = [Fraction(0)] * len(ends)
        for c, val in zip(free, vals):
            alpha[c] = Fraction(val)
        ok = True
        for prow, row, b in zip(pivots, rrows, rrhs):
            val = b - sum(row[c] * alpha[c] for c in free)
            if val.denominator != 1 or val < 0 or val > bound:
                ok = False
                break
            alpha[prow] = val
        if not ok:
            continue
        exps = {w: int(a) for w, a in zip(ends, alpha) if a}
        wit = validate_witness(g, v, branch, exps)
        if wit is None:
            continue
        key = (wit.monomial.total(), tuple(int(alpha[i]) for i in range(len(ends))))
        if best is None or key < best[0]:
            best = (key, wit)
    return best[1] if best else None


@dataclass
class MonomialConditionReport:
    verdict: str               # "satisfied" or "unknown"
    witnesses: dict            # (node, attach) -> AdmissibilityWitness or None
    bound: int

    def to_json(self):
        return {
            "verdict": self.verdict,
            "bound": self.bound,
            "branches": [
                {"node": v, "attach": u,
                 "found": w is not None,
                 "exponents": dict(w.monomial.exponents) if w else None}
                for (v, u), w in sorted(self.witnesses.items())],
        }


def check_monomial_condition(g: ResolutionGraph, bound=64) -> MonomialConditionReport:
    g.require_valid()
    witnesses = {}
    verdict = "satisfied"
    for v in g.nodes():
        for br in g.branches(v):
            wit = find_admissible_monomial(g, v, br, bound=bound)
            witnesses[(v, br.attach)] = wit
            if wit is None:
                verdict = "unknown"
    return MonomialConditionReport(verdict=verdict, witnesses=witnesses,
                                   bound=bound)


def _draw_coefficients(rng, nrows, ncols):
    return [[Fraction(rng.randint(1, 997)) for _ in range(ncols)]
            for _ in range(nrows)]


def _det_frac(M):
    M = [list(row) for row in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        inv = 1 / M[c][c]
        for r in range(c + 1, n):
            if M[r][c] != 0:
                f = M[r][c] * inv
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return det


def _all_maximal_minors_nonzero(F, nrows, ncols):
    for cols in itertools.combinations(range(ncols), nrows):
        sub = [[F[i][c] for c in cols] for i in range(nrows)]
        if _det_frac(sub) == 0:
            return False
    return True


def emit_splice_system(g: ResolutionGraph, seed=0, bound=64) -> SpliceSystem:
    """One admissible monomial per branch per node, with generic coefficients.

    Coefficient rows are drawn from a seeded generator and redrawn until
    every maximal minor is nonzero (checked exactly).
    """
    report = check_monomial_condition(g, bound=bound)
    assert report.verdict == "satisfied", "monomial condition not established"
    rng = random.Random(seed)
    out = []
    for v in g.nodes():
        monos = [report.witnesses[(v, br.attach)].monomial
                 for br in g.branches(v)]
        degs = {v_degree(g, v, m.exponents) for m in monos}
        assert len(degs) == 1, f"monomials at {v} are not quasihomogeneous"
        delta = len(monos)
        nrows = delta - 2
        F = None
        if nrows > 0:
            for _ in range(200):
                cand = _draw_coefficients(rng, nrows, delta)
                if _all_maximal_minors_nonzero(cand, nrows, delta):
                    F = cand
                    break
            if F is None:
                raise DegenerateCoefficients(
                    f"no generic coefficient matrix found at node {v}")
        else:
            F = []
        equations = [[(row[j], dict(monos[j].exponents)) for j in range(delta)]
                     for row in F]
        out.append(NodeSystem(node=v, monomials=monos, v_degree=degs.pop(),
                              coefficients=F, equations=equations))
    return SpliceSystem(nodes=out, seed=seed)


def verify_equivariance(g: ResolutionGraph, system: SpliceSystem, cap=100):
    """Check theta(h, D) = theta(h, E*_v) for every monomial of the system.

    Returns (True, None) or (False, (h, node, exponents)).  For |H| > cap
    only the generators of H are checked (bilinearity extends the result).
    """
    gd = group_data(g)
    if gd.order <= cap:
        test_elems = list(gd.elements())
    else:
        from .discgroup import HElement
        test_elems = [HElement(tuple(int(i == k) for i in range(gd.rank)))
                      for k in range(gd.rank)]
    for ns in system.nodes:
        target = gd.dual.dual_cycles[ns.node]
        for mono in ns.monomials:
            for h in test_elems:
                lhs = gd.pair(h, mono.cycle)
                rhs = gd.pair(h, target)
                if lhs != rhs:
                    return False, (h, ns.node, dict(mono.exponents))
    return True, None
