import pytest
from hypothesis import given, settings

from generators import annotated_discourses
from presuptab.oracle import enumerate_models, universe_of
from presuptab.parser import parse_discourse
from presuptab.presup import (
    PresupStatus, Reason, branch_presuppositions, discourse_presuppositions, presup_status,
    status_report, tableau_presuppositions,
)
from presuptab.syntax import Literal, Not, Or, PresupMap
from presuptab.tableau import Branch, RuleSet, add_sentence, build, is_closed, open_branches

B, NOT_B = Literal("b"), Literal("b", False)


def lits(*names):
    return frozenset(Literal(n.lstrip("~"), not n.startswith("~")) for n in names)


def presups(text):
    return discourse_presuppositions(parse_discourse(text)).presuppositions


def model_presups(fs, m):
    """Rule 1 applied to truth-table rows instead of tableau branches."""
    models = enumerate_models(fs, universe_of(fs))
    if not models:
        return None
    out = []
    for row in models:
        atoms = {x.atom for x in row}
        found = set()
        for a in atoms & set(m):
            t = m[a]
            clash = any(m[o] == t.complement() for o in atoms & set(m))
            if t.atom not in atoms and not clash:
                found.add(t)
        out.append(frozenset(found))
    assert len(set(out)) == 1
    return out[0]


def test_branch_survives():
    bp = branch_presuppositions(Branch(lits("a", "c")), PresupMap({"a": B}))
    assert bp.surviving == {B} and bp.blocked == ()


def test_branch_contradicted():
    bp = branch_presuppositions(Branch(lits("~b", "a")), PresupMap({"a": B}))
    assert bp.surviving == frozenset()
    assert [x.reason for x in bp.blocked] == [Reason.CONTRADICTED]


def test_branch_already_asserted():
    bp = branch_presuppositions(Branch(lits("b", "a")), PresupMap({"a": B}))
    assert [x.reason for x in bp.blocked] == [Reason.ASSERTED]


def test_branch_conflicting_presuppositions():
    m = PresupMap({"d": NOT_B, "a": B})
    bp = branch_presuppositions(Branch(lits("d", "a")), m)
    assert bp.surviving == frozenset()
    assert {(x.source, x.reason, x.conflict_with) for x in bp.blocked} == {
        ("a", Reason.CONFLICT, "d"), ("d", Reason.CONFLICT, "a")}


def test_negated_source_still_presupposes():
    bp = branch_presuppositions(Branch(lits("~a", "c")), PresupMap({"a": B}))
    assert bp.surviving == {B}


def test_shared_target_deduplicates():
    bp = branch_presuppositions(Branch(lits("a", "d")), PresupMap({"a": B, "d": B}))
    assert bp.surviving == {B} and bp.blocked == ()


def test_closed_branch_rejected():
    with pytest.raises(ValueError):
        branch_presuppositions(Branch(lits("a", "~a"), closed=True), PresupMap())


@pytest.mark.parametrize("text,expected", [
    ("a[b] -> c", {B}),
    ("b -> a[b]", set()),
    ("(a & b) -> d[b]", set()),
    ("a[b] | ~b", set()),
    ("~b | a[b]", set()),
    ("d[~b] | a[b]", set()),
    ("a -> b ; a -> d[b]", set()),
    ("a -> d[b]", {B}),
])
def test_tableau_presuppositions(text, expected):
    assert presups(text) == expected


def test_unrelated_context_keeps_presupposition():
    d = parse_discourse("c ; a -> d[b]")
    expected = model_presups(list(d.formulas), d.presup_map)
    assert expected == {B}
    assert presups("c ; a -> d[b]") == expected


def test_inconsistent_report():
    rep = discourse_presuppositions(parse_discourse("a[b] ; ~a"))
    assert not rep.consistent
    assert rep.presuppositions == frozenset()
    empty = discourse_presuppositions(parse_discourse(""))
    assert empty.consistent and empty.presuppositions == frozenset()


def test_report_json():
    data = discourse_presuppositions(parse_discourse("d[~b] | a[b]")).to_json()
    assert data["presuppositions"] == [] and data["consistent"]
    assert data["branches"][0]["blocked"][0] == {
        "source": "a", "target": "b", "reason": "conflicting-presupposition", "conflict_with": "d"}


def tab(text):
    d = parse_discourse(text)
    return build(d.formulas, d.presup_map)


@pytest.mark.parametrize("text,phi,status", [
    ("b", B, PresupStatus.SATISFIED),
    ("~b", B, PresupStatus.CANCELED),
    ("b -> a[b]", B, PresupStatus.HYBRID),
    ("~b | a[b]", B, PresupStatus.HYBRID),
    ("a[b] | ~b", B, PresupStatus.HYBRID),
    ("a -> b ; a -> d[b]", B, PresupStatus.HYBRID),
    ("c | d", B, PresupStatus.INDEPENDENT),
    ("b ; d[b]", B, PresupStatus.SATISFIED),
    ("b", NOT_B, PresupStatus.CANCELED),
])
def test_status(text, phi, status):
    t = tab(text)
    assert presup_status(t, phi) is status
    assert status_report(t, phi).membership_view() is status


def test_status_on_closed_tableau():
    with pytest.raises(ValueError):
        presup_status(tab("a & ~a"), B)


@settings(max_examples=300, deadline=None)
@given(annotated_discourses())
def test_branch_agreement(case):
    fs, m = case
    rep = tableau_presuppositions(build(fs, m))
    assert rep.agreement
    assert rep.some_branch() == rep.every_branch() == rep.presuppositions


@settings(max_examples=300, deadline=None)
@given(annotated_discourses())
def test_matches_truth_table_route(case):
    fs, m = case
    rep = tableau_presuppositions(build(fs, m))
    expected = model_presups(fs, m)
    if expected is None:
        assert not rep.consistent
    else:
        assert rep.presuppositions == expected


@settings(max_examples=200, deadline=None)
@given(annotated_discourses(max_sentences=2))
def test_disjunction_symmetry(case):
    (p, *rest), m = case
    q = rest[0] if rest else p
    left = tableau_presuppositions(build([Or(p, q)], m))
    right = tableau_presuppositions(build([Or(q, p)], m))
    assert left.presuppositions == right.presuppositions


@settings(max_examples=200, deadline=None)
@given(annotated_discourses(max_sentences=2))
def test_monotone_blocking(case):
    (first, *rest), m = case
    t = build([first], m)
    before = tableau_presuppositions(t)
    if not before.consistent or not rest:
        return
    after = tableau_presuppositions(add_sentence(t, rest[0]))
    if not after.consistent:
        return
    blocked_everywhere = set.intersection(*(
        {(x.source, x.target) for x in bp.blocked if x.reason is not Reason.CONFLICT}
        for _, bp in before.branches))
    for _, target in blocked_everywhere:
        assert target not in after.presuppositions


@pytest.mark.parametrize("atom", ["a", "d"])
def test_negation_invariance_for_literals(atom):
    m = PresupMap({"a": B, "d": NOT_B})
    pos = tableau_presuppositions(build([Literal(atom).to_formula()], m))
    neg = tableau_presuppositions(build([Not(Literal(atom).to_formula())], m))
    assert pos.presuppositions == neg.presuppositions == {m[atom]}


@pytest.mark.parametrize("text", ["a[b] -> c", "c -> a[b]", "a[b] | c", "b -> a[b]",
                                  "a -> d[b]", "d[~b] | a[b]", "(a & b) -> d[b]"])
def test_negation_invariance_on_examples(text):
    d = parse_discourse(text)
    (f,) = d.formulas
    pos = tableau_presuppositions(build([f], d.presup_map))
    neg = tableau_presuppositions(build([Not(f)], d.presup_map))
    assert pos.presuppositions == neg.presuppositions


def test_standard_rules_break_agreement():
    # without the three-way split the branches no longer mention the same atoms
    rep = discourse_presuppositions(parse_discourse("b | a[b]"), RuleSet.ST)
    assert not rep.agreement
