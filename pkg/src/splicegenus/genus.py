"""Geometric genus and eigensheaf cohomology by node/branch recursion.

The central recursion: pick a node v, then

    h1(L_chi) = c_v^chi + sum_i [ h1(branch_i, psi_i(chi)) - chi(O_{D_i}(-L_chi)) ]

where D_i = -[phi_i(c_1(L_chi))] is effective and the Euler characteristic
is Riemann-Roch on the branch.  Chains contribute 0 for every character
(their universal abelian covers are smooth).  p_g(X) is the value at the
trivial character and p_g of the universal abelian cover is the sum over
all characters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .discgroup import Character, phi_branch
from .errors import CycleOutOfRange, InternalCheckError, NegativeH1, NonEffective
from .graph import QCycle, ResolutionGraph, unit_cycle
from .molien import P_chi, c_v_chi, group_data


def euler_char_on_cycle(g: ResolutionGraph, D: QCycle, Ldeg=None):
    """chi(L (x) O_D) = -D.(D+K)/2 + L.D by Riemann-Roch.

    Ldeg maps a vertex w to the degree L.E_w of the twisting bundle on E_w
    (default 0).  The result is an exact rational, an integer whenever the
    inputs are integral classes.
    """
    if not D.is_effective():
        raise NonEffective(f"cycle is not effective: {D!r}")
    if D.is_zero():
        return Fraction(0)
    K, _ = g.canonical_cycle()
    val = -g.intersect(D, D + K) / 2
    if Ldeg is not None:
        for w, c in D.coeffs.items():
            val += c * Fraction(Ldeg[w] if not callable(Ldeg) else Ldeg(w))
    return val


@dataclass
class NefCorrection:
    cycle: QCycle
    iterations: int


def minimal_nef_correction(g: ResolutionGraph, v, chi: Character, n: int,
                           order=None) -> NefCorrection:
    """Smallest D >= 0 making -L_chi + [c_1(L_chi) - (n/e_v)E_v] - D nef.

    Laufer-style loop: while some E_w has negative intersection with the
    corrected class, add E_w to D.  The order of processing violations does
    not affect the result; ``order`` permutes the scan for testing that.
    """
    gd = group_data(g)
    e_v = g.node_weights(v).e
    c1 = gd.fractional_representative(chi)
    base = (c1 - unit_cycle(v).scale(Fraction(n, e_v))).floor() - c1
    scan = list(order) if order is not None else list(g.ids)
    D = QCycle()
    iterations = 0
    while True:
        for w in scan:
            if g.intersect(base - D, unit_cycle(w)) < 0:
                D = D + unit_cycle(w)
                iterations += 1
                break
        else:
            break
    assert D.is_integral() and D.is_effective()
    return NefCorrection(cycle=D, iterations=iterations)


# memo shared across recursion roots; keyed by graph identity, not object
_h1_memo: dict = {}


def _branches(g, v):
    key = ("branches", v)
    if key not in g._cache:
        g._cache[key] = g.branches(v)
    return g._cache[key]


def h1_eigensheaf(g: ResolutionGraph, chi: Character, root=None, trace=None) -> int:
    """h1(L_chi) by the node/branch recursion; chains return 0."""
    g.require_valid()
    if g.is_chain():
        return 0
    nodes = sorted(g.nodes())
    v = root if root is not None else nodes[0]
    assert v in nodes, f"{v!r} is not a node"
    key = (g.fingerprint(), v, chi.coords)
    if trace is None and key in _h1_memo:
        return _h1_memo[key]
    gd = group_data(g)
    c_v = c_v_chi(g, v, chi)
    c1 = gd.fractional_representative(chi)
    total = Fraction(c_v)
    steps = []
    for br in _branches(g, v):
        sub = br.subgraph
        phi = phi_branch(g, br, c1)
        D = -(phi.floor())
        assert D.is_integral() and D.is_effective()
        # degree of -L_chi on E_w inside the branch is -c_1(L_chi).E_w,
        # computed in the parent; equals (-phi).E_w in the branch
        ldeg = {w: -g.intersect(c1, unit_cycle(w)) for w in sub.ids}
        e_term = euler_char_on_cycle(sub, D, ldeg)
        if sub.is_chain():
            h1_br = 0
            psi_coords = None
        else:
            sub_gd = group_data(sub)
            psi = sub_gd.theta(sub_gd.class_of(phi))
            psi_coords = psi.coords
            h1_br = h1_eigensheaf(sub, psi, trace=trace)
        total += h1_br - e_term
        steps.append({"attach": br.attach, "psi": psi_coords,
                      "h1": h1_br, "euler": str(e_term)})
    if total.denominator != 1 or total < 0:
        raise NegativeH1(
            f"h1 = {total} at node {v}, chi {chi.coords} (c_v = {c_v})",
            trace={"node": v, "chi": list(chi.coords), "c_v": str(c_v),
                   "branches": steps})
    value = int(total)
    if trace is not None:
        trace.append({"graph": g.fingerprint(), "node": v,
                      "chi": list(chi.coords), "c_v": str(c_v),
                      "branches": steps, "h1": value})
    _h1_memo[key] = value
    # node-independence across memoized roots
    for other in nodes:
        prev = _h1_memo.get((g.fingerprint(), other, chi.coords))
        if prev is not None and prev != value:
            raise InternalCheckError(
                f"h1 depends on the root node: {prev} at {other}, "
                f"{value} at {v} (chi {chi.coords})")
    return value


def pg(g: ResolutionGraph, root=None) -> int:
    """Geometric genus p_g(X) = h1 at the trivial character."""
    g.require_valid()
    if g.is_chain():
        return 0
    gd = group_data(g)
    return h1_eigensheaf(g, gd.trivial_character, root=root)


def pg_uac(g: ResolutionGraph, root=None) -> int:
    """p_g of the universal abelian cover: sum of h1(L_chi) over all chi."""
    g.require_valid()
    if g.is_chain():
        return 0
    gd = group_data(g)
    return sum(h1_eigensheaf(g, chi, root=root) for chi in gd.characters())


def h1_twisted(g: ResolutionGraph, v, chi: Character, n: int, D: QCycle):
    """(h0drop, h1) for the degree-n twist along node v.

    h0drop = P^chi(n) is the codimension of sections vanishing to v-order n;
    h1 uses Riemann-Roch on D' = D - [c_1(L_chi) - (n/e_v)E_v], which is
    effective, and requires 0 <= D <= D_{chi,n}.
    """
    gd = group_data(g)
    if not (D.is_integral() and D.is_effective()):
        raise CycleOutOfRange(f"cycle must be integral and effective: {D!r}")
    bound = minimal_nef_correction(g, v, chi, n).cycle
    if any(D[w] > bound[w] for w in g.ids):
        raise CycleOutOfRange(
            f"cycle exceeds the minimal nef correction {bound!r}")
    e_v = g.node_weights(v).e
    c1 = gd.fractional_representative(chi)
    D_prime = D - (c1 - unit_cycle(v).scale(Fraction(n, e_v))).floor()
    assert D_prime.is_effective()
    h0drop = P_chi(g, v, chi, n)
    ldeg = {w: -g.intersect(c1, unit_cycle(w)) for w in g.ids}
    val = euler_char_on_cycle(g, D_prime, ldeg) - h0drop + h1_eigensheaf(g, chi)
    assert Fraction(val).denominator == 1
    return h0drop, int(val)


@dataclass
class GenusReport:
    pg: int
    per_character_h1: dict          # Character -> int
    pg_uac: int
    trace: list = field(default_factory=list)

    def to_json(self):
        return {
            "pg": self.pg,
            "pgUAC": self.pg_uac,
            "h1": [{"char": list(chi.coords), "value": h}
                   for chi, h in sorted(self.per_character_h1.items(),
                                        key=lambda kv: kv[0].coords)],
            "trace": self.trace,
        }


def genus_report(g: ResolutionGraph, root=None, with_trace=False) -> GenusReport:
    g.require_valid()
    gd = group_data(g)
    trace = [] if with_trace else None
    table = {}
    for chi in gd.characters():
        if g.is_chain():
            table[chi] = 0
        else:
            table[chi] = h1_eigensheaf(g, chi, root=root, trace=trace)
    pg_val = table[gd.trivial_character]
    total = sum(table.values())
    return GenusReport(pg=pg_val, per_character_h1=table, pg_uac=total,
                       trace=trace or [])
