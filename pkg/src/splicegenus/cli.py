"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 violated internal consistency
check, 3 Unknown verdict (monomial-condition search hit its bound).
Reports go to standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .discgroup import Character
from .errors import GraphInputError, InternalCheckError
from .genus import genus_report, h1_eigensheaf, pg
from .graph import parse_graph
from .molien import (
    a_invariant,
    c_v_chi_routes,
    group_data,
    hilbert_data,
    molien_closed,
    truncation_m,
)
from .oracle import oracle_verify
from .series import render_poly
from .splice import check_monomial_condition, emit_splice_system, verify_equivariance

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2
EXIT_UNKNOWN = 3


def _build_parser():
    p = argparse.ArgumentParser(
        prog="splicegenus",
        description="Invariants of splice-quotient surface singularities "
                    "from weighted resolution graphs.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, **kw):
        c = sub.add_parser(name, **kw)
        c.add_argument("--input", required=True, help="graph file (JSON or DSL)")
        c.add_argument("--format", choices=["text", "json"], default="text")
        return c

    cmd("validate", help="check tree-ness and negative definiteness")
    cmd("invariants", help="determinant, group, node weights, canonical cycle")
    c = cmd("hilbert", help="eigenspace Hilbert series at a node")
    c.add_argument("--node")
    c.add_argument("--char")
    c.add_argument("--max-degree", type=int)
    c = cmd("cv", help="the constant c_v^chi by both routes")
    c.add_argument("--node")
    c.add_argument("--char")
    c = cmd("pg", help="geometric genus p_g(X)")
    c.add_argument("--all-nodes", action="store_true")
    c = cmd("pg-uac", help="p_g of the universal abelian cover")
    c.add_argument("--all-nodes", action="store_true")
    c = cmd("h1", help="h1(L_chi) for one character")
    c.add_argument("--char", required=True)
    c = cmd("monomial-check", help="search admissible monomials per node/branch")
    c.add_argument("--bound", type=int, default=64)
    c = cmd("emit-equations", help="emit a generic splice equation system")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--bound", type=int, default=64)
    c = cmd("oracle-verify", help="brute-force check of the Molien dimensions")
    c.add_argument("--max-degree", type=int, default=10)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--bound", type=int, default=64)
    cmd("fundamental-cycle", help="Artin's fundamental cycle and p_a(Z)")
    return p


def _load_graph(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise GraphInputError(f"cannot read {path}: {exc}") from exc
    return parse_graph(text)


def _parse_char(g, text) -> Character:
    gd = group_data(g)
    if text is None:
        return gd.trivial_character
    try:
        coords = [int(x) for x in text.split(",")] if text.strip() else []
    except ValueError:
        raise GraphInputError(f"bad character {text!r}: expected integers")
    if len(coords) != gd.rank:
        raise GraphInputError(
            f"character needs {gd.rank} coordinates (invariant factors "
            f"{gd.invariant_factors}), got {len(coords)}")
    for c, d in zip(coords, gd.invariant_factors):
        if not 0 <= c < d:
            raise GraphInputError(f"coordinate {c} out of range [0,{d})")
    return Character(tuple(coords))


def _pick_node(g, node):
    nodes = sorted(g.nodes())
    if not nodes:
        raise GraphInputError("graph is a chain: no node to compute at")
    if node is None:
        return nodes[0]
    if node not in nodes:
        raise GraphInputError(f"{node!r} is not a node of the graph "
                              f"(nodes: {nodes})")
    return node


def _emit(args, payload, text_lines):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        for line in text_lines:
            print(line)


def _wrap(g, body):
    return {"version": __version__, "fingerprint": g.fingerprint(), **body}


# -- command implementations ----------------------------------------------


def _run_validate(args):
    g = _load_graph(args.input)
    rep = g.validate()
    for w in rep.warnings:
        print(f"warning: {w}", file=sys.stderr)
    payload = _wrap(g, {
        "valid": rep.valid, "isTree": rep.is_tree,
        "negativeDefinite": rep.negative_definite, "isChain": rep.is_chain,
        "nodes": rep.nodes, "ends": rep.ends,
        "error": rep.error, "warnings": rep.warnings})
    lines = [f"valid: {rep.valid}", f"tree: {rep.is_tree}",
             f"negative definite: {rep.negative_definite}",
             f"chain: {rep.is_chain}",
             f"nodes: {' '.join(rep.nodes) or '-'}",
             f"ends: {' '.join(rep.ends) or '-'}"]
    if rep.error:
        lines.append(f"error: {rep.error}")
    _emit(args, payload, lines)
    return EXIT_OK if rep.valid else EXIT_INPUT


def _run_invariants(args):
    g = _load_graph(args.input)
    g.require_valid()
    gd = group_data(g)
    K, gor = g.canonical_cycle()
    nodes = {}
    for v in g.nodes():
        nw = g.node_weights(v)
        nodes[v] = {"e": nw.e, "aV": nw.a_v, "aInvariant": a_invariant(g, v),
                    "m": {w: nw.m[w] for w in g.ids}}
    payload = _wrap(g, {
        "detAbs": gd.dual.det_abs,
        "groupOrder": gd.order,
        "invariantFactors": gd.invariant_factors,
        "numericallyGorenstein": gor,
        "canonicalCycle": K.to_json(),
        "nodes": nodes})
    lines = [f"|det I| = {gd.dual.det_abs}",
             f"|H| = {gd.order}  invariant factors {gd.invariant_factors}",
             f"numerically Gorenstein: {gor}"]
    for v, info in sorted(nodes.items()):
        lines.append(f"node {v}: e={info['e']} a_v={info['aV']} "
                     f"a(G)={info['aInvariant']}")
    _emit(args, payload, lines)
    return EXIT_OK


def _run_hilbert(args):
    g = _load_graph(args.input)
    g.require_valid()
    v = _pick_node(g, args.node)
    chi = _parse_char(g, args.char)
    up_to = args.max_degree
    if up_to is None:
        up_to = truncation_m(g, v) * g.node_weights(v).a_v
    data = hilbert_data(g, v, up_to, closed_for=[chi])
    closed = data.closed_forms[chi]
    payload = _wrap(g, {
        "node": v,
        "aInvariant": data.a_invariant,
        "maxDegree": up_to,
        "coefficients": [{"char": list(c.coords), "dims": tab}
                         for c, tab in sorted(data.coefficients.items(),
                                              key=lambda kv: kv[0].coords)],
        "closedForm": {"char": list(chi.coords), **closed.to_json()}})
    lines = [f"node {v}: a(G) = {data.a_invariant}",
             f"H^{list(chi.coords)}(t) = ({render_poly(closed.num)}) / "
             f"({render_poly(closed.den)})"]
    for c, tab in sorted(data.coefficients.items(), key=lambda kv: kv[0].coords):
        lines.append(f"chi {list(c.coords)}: {tab}")
    _emit(args, payload, lines)
    return EXIT_OK


def _run_cv(args):
    g = _load_graph(args.input)
    g.require_valid()
    v = _pick_node(g, args.node)
    chi = _parse_char(g, args.char)
    route_a, route_b = c_v_chi_routes(g, v, chi)
    agree = route_a == route_b
    if not agree:
        print(f"warning: routes disagree for chi {list(chi.coords)}: "
              f"A={route_a} B={route_b}", file=sys.stderr)
    payload = _wrap(g, {
        "node": v, "char": list(chi.coords),
        "routeA": str(route_a), "routeB": str(route_b),
        "routesAgree": agree})
    _emit(args, payload,
          [f"c_{v}^chi = {route_a} (Route A), {route_b} (Route B), "
           f"agree: {agree}"])
    return EXIT_OK


def _run_pg(args, uac):
    g = _load_graph(args.input)
    rep = g.require_valid()
    for w in rep.warnings:
        print(f"warning: {w}", file=sys.stderr)
    roots = sorted(g.nodes()) if args.all_nodes and not g.is_chain() else [None]
    reports = [genus_report(g, root=r) for r in roots]
    first = reports[0]
    for r, root in zip(reports[1:], roots[1:]):
        if (r.pg != first.pg or r.pg_uac != first.pg_uac
                or r.per_character_h1 != first.per_character_h1):
            raise InternalCheckError(
                f"results differ between root nodes {roots[0]} and {root}")
    body = first.to_json()
    body.pop("trace")
    if args.all_nodes:
        body["rootsChecked"] = roots
    payload = _wrap(g, body)
    if uac:
        lines = [f"pg_uac = {first.pg_uac}"]
        lines += [f"chi {e['char']}: h1 = {e['value']}" for e in body["h1"]]
    else:
        lines = [f"pg = {first.pg}"]
    _emit(args, payload, lines)
    return EXIT_OK


def _run_h1(args):
    g = _load_graph(args.input)
    rep = g.require_valid()
    for w in rep.warnings:
        print(f"warning: {w}", file=sys.stderr)
    chi = _parse_char(g, args.char)
    value = 0 if g.is_chain() else h1_eigensheaf(g, chi)
    payload = _wrap(g, {"char": list(chi.coords), "h1": value})
    _emit(args, payload, [f"h1(L_chi) = {value}"])
    return EXIT_OK


def _run_monomial_check(args):
    g = _load_graph(args.input)
    g.require_valid()
    report = check_monomial_condition(g, bound=args.bound)
    payload = _wrap(g, report.to_json())
    lines = [f"verdict: {report.verdict}"]
    for (v, u), wit in sorted(report.witnesses.items()):
        if wit is None:
            lines.append(f"node {v}, branch at {u}: not found within bound")
        else:
            lines.append(f"node {v}, branch at {u}: "
                         f"{dict(wit.monomial.exponents)}")
    _emit(args, payload, lines)
    return EXIT_OK if report.verdict == "satisfied" else EXIT_UNKNOWN


def _render_equation(eq):
    parts = []
    for c, exps in eq:
        mono = "*".join(f"z({w})^{a}" if a > 1 else f"z({w})"
                        for w, a in sorted(exps.items()))
        parts.append(f"{c}*{mono}" if mono else str(c))
    return " + ".join(parts)


def _run_emit_equations(args):
    g = _load_graph(args.input)
    g.require_valid()
    system = emit_splice_system(g, seed=args.seed, bound=args.bound)
    ok, offender = verify_equivariance(g, system)
    assert ok, f"emitted system is not equivariant: {offender}"
    payload = _wrap(g, system.to_json())
    lines = []
    for ns in system.nodes:
        lines.append(f"node {ns.node} (v-degree {ns.v_degree}):")
        monos = ", ".join(str(dict(m.exponents)) for m in ns.monomials)
        lines.append(f"  monomials: {monos}")
        for eq in ns.equations:
            lines.append(f"  {_render_equation(eq)} = 0")
    _emit(args, payload, lines)
    return EXIT_OK


def _run_oracle_verify(args):
    g = _load_graph(args.input)
    g.require_valid()
    diffs = oracle_verify(g, args.max_degree, seed=args.seed, bound=args.bound)
    payload = _wrap(g, {"maxDegree": args.max_degree, "mismatches": diffs})
    if diffs:
        _emit(args, payload, [f"{len(diffs)} mismatches"]
              + [json.dumps(d, sort_keys=True) for d in diffs])
        return EXIT_INTERNAL
    _emit(args, payload, ["all characters agree"])
    return EXIT_OK


def _run_fundamental_cycle(args):
    g = _load_graph(args.input)
    g.require_valid()
    Z, pa = g.fundamental_cycle()
    payload = _wrap(g, {"cycle": Z.to_json(), "pa": pa})
    _emit(args, payload, [f"Z = {Z.to_json()}", f"p_a(Z) = {pa}"])
    return EXIT_OK


_HANDLERS = {
    "validate": _run_validate,
    "invariants": _run_invariants,
    "hilbert": _run_hilbert,
    "cv": _run_cv,
    "pg": lambda a: _run_pg(a, uac=False),
    "pg-uac": lambda a: _run_pg(a, uac=True),
    "h1": _run_h1,
    "monomial-check": _run_monomial_check,
    "emit-equations": _run_emit_equations,
    "oracle-verify": _run_oracle_verify,
    "fundamental-cycle": _run_fundamental_cycle,
}


def run(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; that slot means "internal
        # check failed" here, so remap to the invalid-input code
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    try:
        return _HANDLERS[args.command](args)
    except GraphInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InternalCheckError, AssertionError) as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        trace = getattr(exc, "trace", None)
        if trace is not None:
            print(json.dumps(trace, sort_keys=True), file=sys.stderr)
        return EXIT_INTERNAL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
