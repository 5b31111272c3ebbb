import pytest

from fixtures import d4, exmc, fig1
from splicegenus.splice import (
    check_monomial_condition,
    emit_splice_system,
    find_admissible_monomial,
    monomial_cycle,
    v_degree,
    validate_witness,
    verify_equivariance,
)


def _branch(g, v, attach):
    return next(b for b in g.branches(v) if b.attach == attach)


# -- monomial cycles and v-degrees -----------------------------------------

def test_monomial_cycle_drops_zero_exponents():
    m = monomial_cycle(exmc(), {"E1": 2, "E2": 0})
    assert m.exponents == {"E1": 2} and m.total() == 2


def test_v_degree_known_values():
    g = exmc()
    # end weights m at E5 are E1,E2 -> 7, E3 -> 6, E4 -> 4
    assert v_degree(g, "E5", {"E1": 2}) == 14
    assert v_degree(g, "E5", {"E2": 2}) == 14
    assert v_degree(g, "E5", {"E3": 1, "E4": 2}) == 14
    assert v_degree(g, "E6", {"E3": 2}) == 6
    assert v_degree(g, "E6", {"E4": 3}) == 6
    assert v_degree(g, "E6", {"E1": 1, "E2": 1}) == 6


# -- witness validation ----------------------------------------------------

def test_validate_known_two_node_witnesses():
    # the six admissible monomials of the z1^2+z2^2+z3z4^2, z3^2+z4^3+z1z2
    # system, one per (node, branch)
    g = exmc()
    cases = [
        ("E5", "E1", {"E1": 2}),
        ("E5", "E2", {"E2": 2}),
        ("E5", "E6", {"E3": 1, "E4": 2}),
        ("E6", "E3", {"E3": 2}),
        ("E6", "E4", {"E4": 3}),
        ("E6", "E5", {"E1": 1, "E2": 1}),
    ]
    for v, attach, exps in cases:
        wit = validate_witness(g, v, _branch(g, v, attach), exps)
        assert wit is not None
        assert wit.residual.is_effective() and wit.residual.is_integral()
        assert wit.residual.support() <= set(_branch(g, v, attach).subgraph.ids)


def test_validate_alternative_witnesses_on_three_node_graph():
    # a published choice of admissible monomials; equally valid even where
    # the minimal search below returns a different one
    g = fig1()
    cases = [
        ("v0", "u4", {"w1": 1}),
        ("v0", "w3", {"w3": 2}),
        ("v0", "u6", {"w4": 1, "w5": 1}),
        ("v1", "u2", {"w1": 3}),
        ("v1", "w2", {"w2": 4}),
        ("v1", "u4", {"w3": 30}),
        ("v2", "u7", {"w1": 1, "w2": 7, "w3": 1}),
        ("v2", "a1", {"w4": 3}),
        ("v2", "u9", {"w5": 3}),
    ]
    for v, attach, exps in cases:
        assert validate_witness(g, v, _branch(g, v, attach), exps) is not None


def test_validate_rejects_bad_witnesses():
    g = exmc()
    br = _branch(g, "E5", "E1")
    # exponent on a non-end vertex
    assert validate_witness(g, "E5", br, {"E5": 1}) is None
    # support off the branch
    assert validate_witness(g, "E5", br, {"E2": 2}) is None
    # residual not effective / not integral
    assert validate_witness(g, "E5", br, {"E1": 1}) is None
    assert validate_witness(g, "E5", br, {"E1": 3}) is None


# -- the search ------------------------------------------------------------

def test_search_agrees_with_validation_path():
    g = exmc()
    for v in g.nodes():
        for br in g.branches(v):
            wit = find_admissible_monomial(g, v, br)
            assert wit is not None
            again = validate_witness(g, v, br, wit.monomial.exponents)
            assert again is not None
            assert again.monomial.exponents == wit.monomial.exponents


def test_search_returns_none_at_bound_zero():
    g = exmc()
    br = _branch(g, "E5", "E1")
    assert find_admissible_monomial(g, "E5", br, bound=0) is None


def test_condition_report_two_node_graph():
    rep = check_monomial_condition(exmc())
    assert rep.verdict == "satisfied"
    found = {k: w.monomial.exponents for k, w in rep.witnesses.items()}
    assert found == {
        ("E5", "E1"): {"E1": 2},
        ("E5", "E2"): {"E2": 2},
        ("E5", "E6"): {"E3": 1, "E4": 2},
        ("E6", "E3"): {"E3": 2},
        ("E6", "E4"): {"E4": 3},
        ("E6", "E5"): {"E1": 1, "E2": 1},
    }


def test_condition_report_three_node_graph_minimal_witnesses():
    rep = check_monomial_condition(fig1())
    assert rep.verdict == "satisfied"
    found = {k: w.monomial.exponents for k, w in rep.witnesses.items()}
    # minimal by (total exponent, lex); differs from the published choice
    # at (v1, u4) and (v2, u7) by equally admissible monomials
    assert found[("v0", "u4")] == {"w1": 1}
    assert found[("v0", "w3")] == {"w3": 2}
    assert found[("v0", "u6")] == {"w4": 1, "w5": 1}
    assert found[("v1", "u4")] == {"w4": 30}
    assert found[("v2", "u7")] == {"w1": 4, "w2": 3, "w3": 1}


def test_condition_unknown_when_bound_too_small():
    rep = check_monomial_condition(fig1(), bound=4)
    assert rep.verdict == "unknown"
    assert rep.to_json()["verdict"] == "unknown"


# -- emitted systems -------------------------------------------------------

def test_emitted_system_shape_and_quasihomogeneity():
    g = exmc()
    system = emit_splice_system(g, seed=0)
    assert [ns.node for ns in system.nodes] == ["E5", "E6"]
    for ns in system.nodes:
        assert len(ns.monomials) == 3 and len(ns.equations) == 1
        degs = {v_degree(g, ns.node, m.exponents) for m in ns.monomials}
        assert degs == {ns.v_degree}
    assert system.nodes[0].v_degree == 14
    assert system.nodes[1].v_degree == 6


def test_emitted_system_deterministic():
    a = emit_splice_system(exmc(), seed=3).to_json()
    b = emit_splice_system(exmc(), seed=3).to_json()
    assert a == b
    c = emit_splice_system(exmc(), seed=4).to_json()
    assert a != c


def test_equivariance_of_emitted_systems():
    for g in (exmc(), fig1()):
        system = emit_splice_system(g, seed=0)
        ok, offender = verify_equivariance(g, system)
        assert ok and offender is None


def test_equivariance_detects_corruption():
    g = exmc()
    system = emit_splice_system(g, seed=0)
    bad = monomial_cycle(g, {"E1": 1})  # wrong character at E5
    system.nodes[0].monomials[0] = bad
    ok, offender = verify_equivariance(g, system)
    assert not ok
    assert offender[1] == "E5" and offender[2] == {"E1": 1}


def test_emit_requires_monomial_condition():
    # D4 is a quotient singularity with delta = 3 at its node, but the
    # search still succeeds; assert emission works and is equivariant
    g = d4()
    system = emit_splice_system(g, seed=1)
    assert len(system.nodes) == 1 and len(system.nodes[0].equations) == 1
    assert verify_equivariance(g, system)[0]
