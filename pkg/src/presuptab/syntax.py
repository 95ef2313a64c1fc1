"""Formulas, literals and presupposition annotations.

Atoms are plain identifier strings.  A presupposition map assigns to some
atoms a single literal they presuppose; the annotation belongs to the atom,
so ``a`` and ``~a`` presuppose the same thing.
"""
from __future__ import annotations

import re
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional, Union

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def is_identifier(name: str) -> bool:
    return bool(IDENT_RE.match(name))


@dataclass(frozen=True, order=True)
class Literal:
    atom: str
    positive: bool = True

    def complement(self) -> Literal:
        return Literal(self.atom, not self.positive)

    def to_formula(self) -> Formula:
        return Atom(self.atom) if self.positive else Not(Atom(self.atom))

    def __str__(self) -> str:
        return self.atom if self.positive else "~" + self.atom

    @classmethod
    def parse(cls, text: str) -> Literal:
        """Read ``b``, ``~b`` or ``¬b``."""
        text = text.strip()
        positive = True
        if text[:1] in ("~", "¬"):
            positive = False
            text = text[1:].strip()
        if not is_identifier(text):
            raise ValueError(f"not a literal: {text!r}")
        return cls(text, positive)


def complement(lit: Literal) -> Literal:
    return lit.complement()


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    sub: Formula


@dataclass(frozen=True)
class And:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies:
    left: Formula
    right: Formula


Formula = Union[Atom, Not, And, Or, Implies]
BINARY = (And, Or, Implies)


def atoms_of(f: Formula) -> frozenset[str]:
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Atom):
            out.add(g.name)
        elif isinstance(g, Not):
            stack.append(g.sub)
        else:
            stack.append(g.left)
            stack.append(g.right)
    return frozenset(out)


def as_literal(f: Formula) -> Optional[Literal]:
    """Return the literal ``f`` denotes, or None if ``f`` is compound."""
    if isinstance(f, Atom):
        return Literal(f.name)
    if isinstance(f, Not) and isinstance(f.sub, Atom):
        return Literal(f.sub.name, False)
    return None


def depth(f: Formula) -> int:
    if isinstance(f, Atom):
        return 0
    if isinstance(f, Not):
        return 1 + depth(f.sub)
    return 1 + max(depth(f.left), depth(f.right))


class PresupMap(Mapping):
    """Immutable partial map from atom names to the literal they presuppose."""

    __slots__ = ("_entries", "_hash")

    def __init__(self, entries=()):
        self._entries = dict(entries)
        self._hash = None

    def __getitem__(self, atom: str) -> Literal:
        return self._entries[atom]

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._entries.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Mapping):
            return dict(self.items()) == dict(other.items())
        return NotImplemented

    def __repr__(self):
        inner = ", ".join(f"{a}->{lit}" for a, lit in sorted(self._entries.items()))
        return f"PresupMap({{{inner}}})"

    def merged(self, other: Mapping) -> PresupMap:
        """Union of two maps; raises ValueError naming the atom on conflict."""
        entries = dict(self._entries)
        for atom, lit in other.items():
            if atom in entries and entries[atom] != lit:
                raise ValueError(f"atom {atom!r} annotated with both {entries[atom]} and {lit}")
            entries[atom] = lit
        return PresupMap(entries)

    def restricted(self, atoms) -> PresupMap:
        return PresupMap({a: lit for a, lit in self._entries.items() if a in atoms})

    def targets(self) -> frozenset[Literal]:
        return frozenset(self._entries.values())

    def to_json(self) -> dict:
        return {a: str(lit) for a, lit in sorted(self._entries.items())}


EMPTY_MAP = PresupMap()


class Violation(NamedTuple):
    atom: str
    reason: str

    def __str__(self):
        return f"{self.atom}: {self.reason}"


def validate_presup_map(m: Mapping) -> list[Violation]:
    """Check the no-chain rule; an empty list means the map is usable.

    Single annotation per atom holds by construction of a mapping.  An
    annotation target may not itself be annotated, and an atom may not
    presuppose itself (with either sign).
    """
    violations = []
    for atom in sorted(m):
        lit = m[atom]
        if not isinstance(lit, Literal):
            violations.append(Violation(atom, f"annotation {lit!r} is not a literal"))
        elif lit.atom == atom:
            violations.append(Violation(atom, "atom presupposes itself"))
        elif lit.atom in m:
            violations.append(Violation(lit.atom, f"chained annotation: target of {atom} is annotated"))
    return violations


class SignedAnnotatedAtom(NamedTuple):
    literal: Literal
    presup: Optional[Literal]


def annotate(lit: Literal, m: Mapping) -> SignedAnnotatedAtom:
    # the sign of the occurrence plays no part in the lookup
    return SignedAnnotatedAtom(lit, m.get(lit.atom))
