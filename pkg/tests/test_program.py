import pytest

from aspback import (ParseError, Program, ProgramBuilder, Rule, TargetClass,
                     core, in_target_class, parse_program, render_program,
                     render_rule, rule_flags)

from conftest import EX1_TEXT, program_sigs


def test_parse_ex1_atom_table_order(ex1):
    assert [ex1.atom_name(i) for i in range(ex1.n_atoms)] == \
        ["s", "w", "u", "q", "r", "t"]
    assert ex1.n_atoms == 6
    assert len(ex1.rules) == 6


def test_parse_rule_parts(ex1, ex1_ids):
    i = ex1_ids
    r = ex1.rules[5]  # w :- not r, u.
    assert r.head == frozenset({i["w"]})
    assert r.pos_body == frozenset({i["u"]})
    assert r.neg_body == frozenset({i["r"]})


def test_parse_disjunction_and_constraint():
    p = parse_program("a | b :- c.  :- a, b.")
    assert len(p.rules) == 2
    assert len(p.rules[0].head) == 2
    assert p.rules[1].head == frozenset()


def test_parse_fact_and_empty_program():
    p = parse_program("a.")
    assert p.rules[0].pos_body == frozenset()
    empty = parse_program("")
    assert empty.n_atoms == 0 and empty.rules == ()


def test_parse_comments_and_whitespace():
    p = parse_program("% header\na :- b. % trailing\n\n  c.\n")
    assert p.n_atoms == 3
    assert len(p.rules) == 2


def test_parse_duplicate_literals_counted():
    p = parse_program("a :- b, b.")
    assert p.duplicate_literals == 1
    assert p.rules[0].pos_body == frozenset({p.atom_id("b")})


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as e:
        parse_program("a :- b")
    assert e.value.line == 1
    with pytest.raises(ParseError):
        parse_program("a :- .")
    with pytest.raises(ParseError):
        parse_program("| a.")
    with pytest.raises(ParseError):
        parse_program("a :- not not b.")
    with pytest.raises(ParseError):
        parse_program("a ; b.")


def test_not_is_reserved():
    with pytest.raises(ParseError):
        parse_program("not.")


def test_render_roundtrip_ex1(ex1):
    again = parse_program(render_program(ex1))
    assert again == ex1
    assert program_sigs(again) == program_sigs(ex1)


def test_render_sorted_by_id():
    p = parse_program("a :- c, b, not d.")
    assert render_rule(p, p.rules[0]) == "a :- c, b, not d."
    # interning order a,c,b,d: body prints positives by id then negatives
    q = parse_program("x :- b, a.")
    assert render_rule(q, q.rules[0]) == "x :- b, a."


def test_render_constraint_and_fact():
    p = parse_program(":- a.  b.")
    assert render_program(p) == ":- a.\nb.\n"


def test_rule_flags_classification():
    p = parse_program("a :- b.  a | c :- b.  :- b.  a :- not b.  a :- a, b.")
    f = [rule_flags(r) for r in p.rules]
    assert f[0].horn and f[0].normal and not f[0].constraint
    assert not f[1].horn and not f[1].normal and not f[1].disjunction_free
    assert f[2].constraint and f[2].horn
    assert not f[3].negation_free and not f[3].horn and f[3].normal
    assert f[4].tautological


def test_tautological_via_neg_body():
    p = parse_program("a :- b, not b.")
    assert rule_flags(p.rules[0]).tautological


def test_core_drops_tautologies_and_constraints():
    p = parse_program("a :- a.  :- b.  c :- d.")
    q = core(p)
    assert len(q.rules) == 1
    assert q.n_atoms == p.n_atoms  # atom table preserved
    assert core(q) == q


def test_in_target_class_horn():
    assert in_target_class(parse_program("a :- b.  b."), TargetClass.HORN)
    assert not in_target_class(parse_program("a :- not b."), TargetClass.HORN)
    # tautological and constraint rules are invisible to every class
    assert in_target_class(parse_program("a | b :- c, not c.  :- not d."),
                           TargetClass.HORN)


def test_in_target_class_acyclic():
    p = parse_program("a :- b.  b :- a.")
    assert not in_target_class(p, TargetClass.DC_ACYC)
    assert in_target_class(p, TargetClass.DC2_ACYC)  # good two-cycle allowed
    assert in_target_class(p, TargetClass.STRAT)
    q = parse_program("a :- not b.  b :- not a.")
    assert not in_target_class(q, TargetClass.STRAT)


def test_program_structural_equality():
    a = parse_program("a :- b.")
    b = parse_program("a :- b.")
    c = parse_program("a :- c.")
    assert a == b and hash(a) == hash(b)
    assert a != c
    # parse metadata does not affect equality
    d = parse_program("a :- b, b.")
    assert d == a


def test_with_rules_keeps_table(ex1):
    q = ex1.with_rules(ex1.rules[:2])
    assert q.n_atoms == ex1.n_atoms
    assert len(q.rules) == 2


def test_builder_interns_in_first_use_order():
    b = ProgramBuilder()
    b.add_rule(["z"], ["y"], ["x"])
    b.add_rule(["y"], [], [])
    p = b.build()
    assert [p.atom_name(i) for i in range(3)] == ["z", "y", "x"]


def test_occurring_atoms(ex1):
    assert ex1.occurring_atoms() == frozenset(range(6))
    p = Program(["a", "b"], [Rule(frozenset({0}), frozenset(), frozenset())])
    assert p.occurring_atoms() == frozenset({0})


def test_atom_lookup_errors(ex1):
    with pytest.raises(KeyError):
        ex1.atom_id("nope")
    assert not ex1.has_atom("nope")
