"""Brute-force classical semantics: the ground truth the tableaux are checked against.

Deliberately naive.  Nothing here touches the tableau code, so agreement
between the two is meaningful.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import ResourceError
from .syntax import And, Atom, Formula, Implies, Literal, Not, Or, atoms_of

DEFAULT_MAX_ATOMS = 16

# An assignment is a frozenset holding exactly one Literal per universe atom,
# which makes it directly comparable with an open branch's literal set.
Assignment = frozenset


def evaluate(f: Formula, valuation: Mapping[str, bool]) -> bool:
    if isinstance(f, Atom):
        return valuation[f.name]
    if isinstance(f, Not):
        return not evaluate(f.sub, valuation)
    if isinstance(f, And):
        return evaluate(f.left, valuation) and evaluate(f.right, valuation)
    if isinstance(f, Or):
        return evaluate(f.left, valuation) or evaluate(f.right, valuation)
    if isinstance(f, Implies):
        return (not evaluate(f.left, valuation)) or evaluate(f.right, valuation)
    raise TypeError(f"not a formula: {f!r}")


def universe_of(fs) -> frozenset:
    out = frozenset()
    for f in fs:
        out |= atoms_of(f)
    return out


def enumerate_models(fs: Iterable[Formula], universe=None,
                     max_atoms: int = DEFAULT_MAX_ATOMS) -> set:
    fs = list(fs)
    needed = universe_of(fs)
    universe = needed if universe is None else frozenset(universe)
    if not needed <= universe:
        raise ValueError(f"universe lacks atoms {sorted(needed - universe)}")
    if len(universe) > max_atoms:
        raise ResourceError(f"{len(universe)} atoms exceed the enumeration cap of {max_atoms}")
    names = sorted(universe)
    models = set()
    for row in itertools.product((True, False), repeat=len(names)):
        valuation = dict(zip(names, row))
        if all(evaluate(f, valuation) for f in fs):
            models.add(frozenset(Literal(a, v) for a, v in valuation.items()))
    return models


def is_satisfiable(fs: Iterable[Formula], max_atoms: int = DEFAULT_MAX_ATOMS) -> bool:
    return bool(enumerate_models(fs, max_atoms=max_atoms))


def is_valid(f: Formula, max_atoms: int = DEFAULT_MAX_ATOMS) -> bool:
    return not enumerate_models([Not(f)], max_atoms=max_atoms)


@dataclass(frozen=True)
class EquivalenceReport:
    pt_closed: bool
    st_closed: bool
    oracle_unsat: bool
    pt_models: frozenset
    oracle_models: frozenset

    @property
    def closure_agrees(self) -> bool:
        return self.pt_closed == self.st_closed == self.oracle_unsat

    @property
    def models_agree(self) -> bool:
        return self.pt_models == self.oracle_models

    @property
    def ok(self) -> bool:
        return self.closure_agrees and self.models_agree

    def to_json(self) -> dict:
        return {
            "pt_closed": self.pt_closed,
            "st_closed": self.st_closed,
            "oracle_unsatisfiable": self.oracle_unsat,
            "closure_agrees": self.closure_agrees,
            "models_agree": self.models_agree,
            "models": len(self.oracle_models),
        }


def check_equivalence(fs: Iterable[Formula], m=None, *, max_atoms: int = DEFAULT_MAX_ATOMS,
                      **caps) -> EquivalenceReport:
    """Run PT, ST and the truth table on the same formula set and compare."""
    from .tableau import RuleSet, build, distinct_open, is_closed

    fs = list(fs)
    m = m if m is not None else {}
    pt = build(fs, m, RuleSet.PT, **caps)
    st = build(fs, m, RuleSet.ST, **caps)
    models = enumerate_models(fs, pt.universe, max_atoms=max_atoms)
    return EquivalenceReport(
        pt_closed=is_closed(pt) if fs else False,
        st_closed=is_closed(st) if fs else False,
        oracle_unsat=not models,
        pt_models=frozenset(distinct_open(pt)) if fs else frozenset([frozenset()]),
        oracle_models=frozenset(models),
    )
