import pytest

from aspback import (TargetClass, build_ddg, build_udg, describe_witness,
                     dot_ddg, dot_incidence, dot_udg, find_directed_cycle,
                     find_undirected_cycle, incidence_graph, parse_program,
                     witness_cycle)


def ids(p):
    return {p.atom_name(i): i for i in range(p.n_atoms)}


def test_ddg_edges_worked_example(ex1, ex1_ids):
    i = ex1_ids
    d = build_ddg(ex1)
    neg = {(ex1.atom_name(a), ex1.atom_name(b)) for a, b in d.negative}
    assert neg == {("t", "r"), ("q", "s"), ("w", "r")}
    # the good directed cycle (u, q, u)
    assert (i["u"], i["q"]) in d.edges and (i["q"], i["u"]) in d.edges
    assert (i["q"], i["u"]) not in d.negative


def test_ddg_disjunctive_head_pairs_negative():
    p = parse_program("a | b :- c.")
    i = ids(p)
    d = build_ddg(p)
    assert (i["a"], i["b"]) in d.negative and (i["b"], i["a"]) in d.negative
    assert (i["a"], i["c"]) in d.edges and (i["a"], i["c"]) not in d.negative


def test_ddg_built_from_all_rules():
    # no core(): tautological rules still contribute edges
    p = parse_program("a :- b, not b.")
    d = build_ddg(p)
    assert d.edges and d.negative


def test_udg_vertices_worked_example(ex1):
    g = build_udg(ex1)
    assert g.n_vertices == 6 + 3
    labels = {g.vertex_label(6 + k, ex1) for k in range(3)}
    assert labels == {"v_(t,r)", "v_(w,r)", "v_(q,s)"}


def test_udg_subdivided_negative_self_loop_is_cycle():
    p = parse_program("a :- not a.")
    g = build_udg(p)
    w = find_undirected_cycle(g, bad_only=True)
    assert w is not None and w.bad
    assert len(w.vertices) == 2  # atom and its negative vertex


def test_positive_two_cycle_collapses_in_udg():
    # x :- y. y :- x. gives one undirected edge, not a cycle
    p = parse_program("a :- b.  b :- a.")
    assert find_undirected_cycle(build_udg(p)) is None
    assert find_directed_cycle(build_ddg(p)) is not None


def test_find_directed_cycle_shortest_and_rotated():
    p = parse_program("a :- b.  b :- c.  c :- a.  d :- e.  e :- d.")
    w = find_directed_cycle(build_ddg(p))
    assert len(w.vertices) == 2  # the (d, e) two-cycle is shortest
    assert w.vertices[0] == min(w.vertices)
    assert not w.bad


def test_find_directed_cycle_bad_only():
    p = parse_program("a :- b.  b :- a.  c :- not d.  d :- c.")
    w = find_directed_cycle(build_ddg(p), bad_only=True)
    i = ids(p)
    assert set(w.vertices) == {i["c"], i["d"]}
    assert w.bad


def test_find_directed_cycle_allow_good_two_cycles():
    p = parse_program("a :- b.  b :- a.")
    assert find_directed_cycle(build_ddg(p), allow_good_two_cycles=True) is None
    q = parse_program("a :- b.  b :- not a.")
    w = find_directed_cycle(build_ddg(q), allow_good_two_cycles=True)
    assert w is not None and w.bad
    r = parse_program("a :- b.  b :- c.  c :- a.")
    w2 = find_directed_cycle(build_ddg(r), allow_good_two_cycles=True)
    assert w2 is not None and len(w2.vertices) == 3


def test_directed_self_loop():
    p = parse_program("a :- a, b.")  # tautological, but graphs see all rules
    w = find_directed_cycle(build_ddg(p))
    assert w.vertices == (0,)


def test_witness_cycle_applies_core():
    # the only cycle comes from a tautological rule: classes ignore it
    p = parse_program("a :- a, b.")
    for c in (TargetClass.C_ACYC, TargetClass.DC_ACYC, TargetClass.STRAT):
        assert witness_cycle(p, c) is None


def test_witness_cycle_per_class(ex1):
    for c, kind in ((TargetClass.C_ACYC, "undirected"),
                    (TargetClass.BC_ACYC, "undirected"),
                    (TargetClass.DC_ACYC, "directed"),
                    (TargetClass.DC2_ACYC, "directed"),
                    (TargetClass.STRAT, "directed")):
        w = witness_cycle(ex1, c)
        assert w is not None and w.kind == kind


def test_witness_cycle_rejects_horn():
    with pytest.raises(ValueError):
        witness_cycle(parse_program("a."), TargetClass.HORN)


def test_describe_witness_strat(ex1):
    w = witness_cycle(ex1, TargetClass.STRAT)
    assert describe_witness(ex1, w) == "(w, r)"


def test_describe_witness_undirected_negative_vertex():
    p = parse_program("a :- b.  b :- not a.")
    w = witness_cycle(p, TargetClass.C_ACYC)
    assert w is not None
    text = describe_witness(p, w)
    assert "v_(b,a)" in text


def test_bc_acyc_distinguishes_good_cycles():
    # purely positive undirected cycle: C-Acyc violated, BC-Acyc fine
    p = parse_program("a :- b.  b :- c.  a :- c.")
    assert witness_cycle(p, TargetClass.C_ACYC) is not None
    assert witness_cycle(p, TargetClass.BC_ACYC) is None


def test_incidence_graph_counts(ex1):
    g = incidence_graph(ex1)
    assert g.n_rules == 6 and g.n_atoms == 6
    assert len(g.edges) == 16  # 6 heads + 10 body literals


def test_dot_outputs(ex1):
    d = dot_ddg(ex1)
    assert d.startswith("digraph") and '"w" -> "r" [style=dashed];' in d
    u = dot_udg(ex1)
    assert '"v_(w,r)" [shape=box];' in u
    i = dot_incidence(ex1)
    assert '"r0" [shape=box];' in i and '"r0" -- "s";' in i


def test_dot_deterministic(ex1):
    assert dot_ddg(ex1) == dot_ddg(ex1)
    assert dot_udg(ex1) == dot_udg(ex1)
