"""Tableau expansion under the presuppositional (three-way) or standard rules.

A tableau is an immutable tree of :class:`Node` objects.  Each node records
one rule application: the formula it consumed, the formulas it added to the
branch, and the literal set of the branch at that point.  Leaves are the
branches.  Literals are absorbed into the branch as soon as they are added,
and a branch closes the moment it holds a complementary pair.

Non-branching rules always fire before branching ones; among rules of the
same kind the oldest pending formula goes first.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, Iterator, Optional

from .errors import AnnotationError, InvalidPresupMap, ResourceError
from .parser import render
from .syntax import (
    EMPTY_MAP,
    And,
    Formula,
    Implies,
    Literal,
    Not,
    Or,
    PresupMap,
    as_literal,
    atoms_of,
    validate_presup_map,
)

DEFAULT_MAX_BRANCHES = 10**6


class RuleSet(enum.Enum):
    PT = "pt"
    ST = "st"


@dataclass(frozen=True)
class Branch:
    literals: frozenset
    closed: bool = False
    pending: tuple = ()

    def atoms(self) -> frozenset:
        return frozenset(lit.atom for lit in self.literals)

    def __contains__(self, lit: Literal) -> bool:
        return lit in self.literals

    def sorted_literals(self) -> list:
        return sorted(self.literals, key=literal_key)


def literal_key(lit: Literal):
    return (lit.atom, not lit.positive)


@dataclass(frozen=True)
class Node:
    rule: str
    consumed: Optional[Formula]
    added: tuple
    literals: frozenset
    closed: bool
    children: tuple = ()

    def leaves(self) -> Iterator[Node]:
        stack = [self]
        while stack:
            node = stack.pop()
            if node.children:
                stack.extend(reversed(node.children))
            else:
                yield node


def _decompose(f: Formula, rules: RuleSet):
    """Classify ``f`` as (rule name, branching?, component lists)."""
    if isinstance(f, And):
        return "alpha-and", False, [[f.left, f.right]]
    if isinstance(f, Or):
        l, r = f.left, f.right
        if rules is RuleSet.PT:
            return "beta-or", True, [[l, r], [Not(l), r], [l, Not(r)]]
        return "beta-or", True, [[l], [r]]
    if isinstance(f, Implies):
        l, r = f.left, f.right
        if rules is RuleSet.PT:
            return "beta-implies", True, [[Not(l), r], [Not(l), Not(r)], [l, r]]
        return "beta-implies", True, [[Not(l)], [r]]
    g = f.sub
    if isinstance(g, Not):
        return "double-negation", False, [[g.sub]]
    if isinstance(g, Implies):
        return "alpha-not-implies", False, [[g.left, Not(g.right)]]
    if isinstance(g, Or):
        return "alpha-not-or", False, [[Not(g.left), Not(g.right)]]
    if isinstance(g, And):
        l, r = g.left, g.right
        if rules is RuleSet.PT:
            return "beta-not-and", True, [[Not(l), Not(r)], [Not(l), r], [l, Not(r)]]
        return "beta-not-and", True, [[Not(l)], [Not(r)]]
    raise TypeError(f"not a compound formula: {f!r}")


def _is_branching(f: Formula) -> bool:
    if isinstance(f, (Or, Implies)):
        return True
    return isinstance(f, Not) and isinstance(f.sub, And)


class _Builder:
    def __init__(self, rules: RuleSet, max_branches: Optional[int], leaves: int):
        self.rules = rules
        self.max_branches = max_branches
        self.leaves = leaves

    def grow(self, rule, consumed, added, literals, pending) -> Node:
        lits = set(literals)
        pending = list(pending)
        closed = False
        for g in added:
            lit = as_literal(g)
            if lit is None:
                pending.append(g)
                continue
            lits.add(lit)
            if lit.complement() in lits:
                closed = True
        lits = frozenset(lits)
        if closed or not pending:
            return Node(rule, consumed, tuple(added), lits, closed)

        idx = next((i for i, g in enumerate(pending) if not _is_branching(g)), 0)
        f = pending[idx]
        rest = pending[:idx] + pending[idx + 1:]
        name, branching, parts = _decompose(f, self.rules)
        if branching:
            self.leaves += len(parts) - 1
            if self.max_branches is not None and self.leaves > self.max_branches:
                raise ResourceError(f"branch cap of {self.max_branches} exceeded")
        children = tuple(self.grow(name, f, part, lits, rest) for part in parts)
        return Node(rule, consumed, tuple(added), lits, False, children)

    def extend(self, node: Node, f: Formula) -> Node:
        if node.children:
            return replace(node, children=tuple(self.extend(c, f) for c in node.children))
        if node.closed:
            return node
        return replace(node, children=(self.grow("premise", None, (f,), node.literals, ()),))


@dataclass(frozen=True)
class Tableau:
    root: Optional[Node] = None
    universe: frozenset = frozenset()
    presup_map: PresupMap = EMPTY_MAP
    rules: RuleSet = RuleSet.PT
    sentences: tuple = ()

    @cached_property
    def branches(self) -> tuple:
        """Every leaf, closed or open, left to right."""
        if self.root is None:
            return ()
        return tuple(Branch(n.literals, n.closed) for n in self.root.leaves())


def empty_tableau(m=EMPTY_MAP, rules: RuleSet = RuleSet.PT) -> Tableau:
    m = PresupMap(m)
    violations = validate_presup_map(m)
    if violations:
        raise InvalidPresupMap(violations)
    return Tableau(presup_map=m, rules=rules)


def add_sentence(t: Tableau, f: Formula, m=EMPTY_MAP, *, max_atoms: Optional[int] = None,
                 max_branches: Optional[int] = DEFAULT_MAX_BRANCHES) -> Tableau:
    """Append ``f`` to every open branch and expand it there."""
    try:
        merged = t.presup_map.merged(m)
    except ValueError as e:
        raise AnnotationError(str(e)) from None
    violations = validate_presup_map(merged)
    if violations:
        raise InvalidPresupMap(violations)
    universe = t.universe | atoms_of(f)
    if max_atoms is not None and len(universe) > max_atoms:
        raise ResourceError(f"{len(universe)} atoms exceed the cap of {max_atoms}")
    builder = _Builder(t.rules, max_branches, len(t.branches) or 1)
    if t.root is None:
        root = builder.grow("premise", None, (f,), frozenset(), ())
    else:
        root = builder.extend(t.root, f)
    return Tableau(root, universe, merged, t.rules, t.sentences + (f,))


def expand(f: Formula, m=EMPTY_MAP, rules: RuleSet = RuleSet.PT, **caps) -> Tableau:
    return add_sentence(empty_tableau(m, rules), f, **caps)


def build(formulas: Iterable[Formula], m=EMPTY_MAP, rules: RuleSet = RuleSet.PT,
          **caps) -> Tableau:
    """Tableau for a discourse: the first formula expanded, the rest added in order."""
    t = empty_tableau(m, rules)
    for f in formulas:
        t = add_sentence(t, f, **caps)
    return t


def open_branches(t: Tableau) -> list:
    return [b for b in t.branches if not b.closed]


def is_closed(t: Tableau) -> bool:
    """A tableau with no sentences is open: its single empty branch is not closed."""
    if t.root is None:
        return False
    return all(b.closed for b in t.branches)


def distinct_open(t: Tableau) -> set:
    return {b.literals for b in open_branches(t)}


def check_coverage(t: Tableau) -> Optional[Branch]:
    """Return the first open branch missing some universe atom, else None."""
    for b in open_branches(t):
        if not t.universe <= b.atoms():
            return b
    return None


# -- rendering --------------------------------------------------------------

def _fmt_literals(lits) -> str:
    return ", ".join(str(x) for x in sorted(lits, key=literal_key))


def render_tree(t: Tableau) -> str:
    if t.root is None:
        return "(empty tableau)"
    lines = []

    def walk(node: Node, indent: str):
        while True:
            text = ", ".join(render(f, t.presup_map) for f in node.added)
            tag = "premise" if node.consumed is None else \
                f"{node.rule} on {render(node.consumed, t.presup_map)}"
            line = f"{indent}{text}    [{tag}]"
            if not node.children:
                status = "closed" if node.closed else "open"
                line += f"  => {status}: {{{_fmt_literals(node.literals)}}}"
            lines.append(line)
            if len(node.children) != 1:
                break
            node = node.children[0]
        for i, child in enumerate(node.children):
            lines.append(f"{indent}  +-- branch {i + 1}")
            walk(child, indent + "  |   " if i < len(node.children) - 1 else indent + "      ")

    walk(t.root, "")
    return "\n".join(lines)


def node_to_json(node: Node, m) -> dict:
    return {
        "rule": node.rule,
        "formula": None if node.consumed is None else render(node.consumed, m),
        "added": [render(f, m) for f in node.added],
        "literals": [str(x) for x in sorted(node.literals, key=literal_key)],
        "closed": node.closed,
        "children": [node_to_json(c, m) for c in node.children],
    }


def tableau_to_json(t: Tableau) -> dict:
    opened = open_branches(t)
    return {
        "rules": t.rules.value,
        "sentences": [render(f, t.presup_map) for f in t.sentences],
        "universe": sorted(t.universe),
        "presup_map": t.presup_map.to_json(),
        "closed": is_closed(t),
        "branches": len(t.branches),
        "open_branches": len(opened),
        "distinct_open_branches": len(distinct_open(t)),
        "tree": None if t.root is None else node_to_json(t.root, t.presup_map),
    }
