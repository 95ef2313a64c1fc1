import pytest
from hypothesis import given, settings

from generators import annotated_discourses, formulas
from presuptab.errors import AnnotationError, InvalidPresupMap, ResourceError
from presuptab.oracle import enumerate_models
from presuptab.parser import parse_discourse, parse_formula
from presuptab.syntax import Atom, Literal, Not, PresupMap
from presuptab.tableau import (
    RuleSet, add_sentence, build, check_coverage, distinct_open, empty_tableau, expand,
    is_closed, open_branches, render_tree, tableau_to_json,
)


def lits(*names):
    return frozenset(Literal(n.lstrip("~"), not n.startswith("~")) for n in names)


def tab(text, rules=RuleSet.PT):
    d = parse_discourse(text)
    return build(d.formulas, d.presup_map, rules)


def test_disjunction_three_way():
    t = tab("a | b")
    assert [b.literals for b in open_branches(t)] == [lits("a", "b"), lits("~a", "b"), lits("a", "~b")]


def test_contradiction_closes():
    t = tab("a & ~a")
    assert len(t.branches) == 1
    assert is_closed(t)
    assert open_branches(t) == []


def test_conditional_with_presupposition_target_as_antecedent():
    t = tab("b -> a[b]")
    assert [b.literals for b in open_branches(t)] == [lits("~b", "a"), lits("~b", "~a"), lits("b", "a")]


@pytest.mark.parametrize("text,expected", [
    ("a -> b", [("~a", "b"), ("~a", "~b"), ("a", "b")]),
    ("~(a & b)", [("~a", "~b"), ("~a", "b"), ("a", "~b")]),
    ("~(a -> b)", [("a", "~b")]),
    ("~(a | b)", [("~a", "~b")]),
    ("~~a", [("a",)]),
])
def test_rule_table(text, expected):
    assert [b.literals for b in open_branches(tab(text))] == [lits(*e) for e in expected]


@pytest.mark.parametrize("text,expected", [
    ("a | b", [("a",), ("b",)]),
    ("a -> b", [("~a",), ("b",)]),
    ("~(a & b)", [("~a",), ("~b",)]),
])
def test_standard_rules(text, expected):
    assert [b.literals for b in open_branches(tab(text, RuleSet.ST))] == [lits(*e) for e in expected]


def test_discourse_addition():
    t = tab("a -> b")
    t2 = add_sentence(t, parse_formula("a -> d")[0], {"d": Literal("b")})
    assert len(t2.branches) == 9
    under_ab = t2.root.children[2].children[0].children
    assert [c.closed for c in under_ab] == [True, True, False]
    assert sum(b.closed for b in t2.branches) == 4
    assert len(open_branches(t2)) == 5
    assert t2.universe == {"a", "b", "d"}
    assert t2.presup_map == {"d": Literal("b")}
    # the original is untouched
    assert len(t.branches) == 3


def test_add_contradiction():
    t = add_sentence(tab("a"), Not(Atom("a")))
    assert is_closed(t)


def test_add_atom_to_every_branch():
    t = add_sentence(tab("a | b"), Atom("c"))
    assert [b.literals for b in open_branches(t)] == [
        lits("a", "b", "c"), lits("~a", "b", "c"), lits("a", "~b", "c")]
    assert check_coverage(t) is None
    assert t.universe == {"a", "b", "c"}


def test_closed_branches_not_extended():
    t = tab("a | b ; ~a")
    closed_before = [b for b in t.branches if b.closed]
    t2 = add_sentence(t, Atom("c"))
    assert [b for b in t2.branches if b.closed] == closed_before


def test_annotation_conflict_on_add():
    t = tab("a[b]")
    with pytest.raises(AnnotationError):
        add_sentence(t, Atom("a"), {"a": Literal("c")})
    with pytest.raises(InvalidPresupMap):
        add_sentence(t, Atom("b"), {"b": Literal("c")})
    with pytest.raises(InvalidPresupMap):
        empty_tableau({"a": Literal("a")})


def test_open_branches():
    assert len(open_branches(tab("a | b"))) == 3
    assert [b.literals for b in open_branches(tab("a"))] == [lits("a")]


def test_coverage():
    assert check_coverage(tab("(a & b) -> d[b]")) is None
    gap = check_coverage(tab("a | b", RuleSet.ST))
    assert gap is not None and gap.literals == lits("a")
    assert check_coverage(empty_tableau()) is None


@pytest.mark.parametrize("text,closed", [
    ("a & ~a", True),
    ("(a -> b) & a & ~b", True),
    ("a | b", False),
])
def test_is_closed(text, closed):
    assert is_closed(tab(text)) is closed
    # oracle computed independently
    assert (not enumerate_models(parse_discourse(text).formulas)) is closed


def test_caps():
    f = parse_formula("(a | b) & (c | d) & (e | f) & (g | h)")[0]
    with pytest.raises(ResourceError):
        expand(f, max_atoms=7)
    with pytest.raises(ResourceError):
        expand(f, max_branches=50)
    assert len(expand(f, max_branches=81).branches) == 81


def test_nonbranching_rules_fire_first():
    t = tab("(a | b) & ~~c")
    first = t.root.children[0]
    assert first.rule == "alpha-and"
    assert first.children[0].rule == "double-negation"
    assert first.children[0].children[0].rule == "beta-or"


def test_render_and_json_are_stable():
    t = tab("a -> b ; a -> d[b]")
    assert render_tree(t) == render_tree(tab("a -> b ; a -> d[b]"))
    data = tableau_to_json(t)
    assert data["branches"] == 9 and data["open_branches"] == 5
    assert data["tree"]["rule"] == "premise"
    assert data["tree"]["children"][0]["formula"] == "a -> b"
    assert data["tree"]["children"][0]["added"] == ["~a", "b"]
    assert "closed: {a, ~a, b, d}" in render_tree(t)


@settings(max_examples=300, deadline=None)
@given(annotated_discourses())
def test_coverage_property(case):
    fs, m = case
    assert check_coverage(build(fs, m)) is None


@settings(max_examples=300, deadline=None)
@given(annotated_discourses())
def test_open_branches_are_models(case):
    fs, m = case
    t = build(fs, m)
    assert distinct_open(t) == enumerate_models(fs, t.universe)


@settings(max_examples=200, deadline=None)
@given(annotated_discourses(max_sentences=3))
def test_order_invariance(case):
    fs, m = case
    assert distinct_open(build(fs, m)) == distinct_open(build(list(reversed(fs)), m))


@settings(max_examples=300, deadline=None)
@given(formulas())
def test_pt_st_agree_on_closure(f):
    assert is_closed(expand(f)) == is_closed(expand(f, rules=RuleSet.ST))
