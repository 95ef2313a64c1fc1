"""Presupposition projection over fully expanded presuppositional tableaux.

Per branch, an annotated atom (of either sign) contributes its target
literal unless the branch already decides the target's atom, or another
annotated atom in the branch presupposes the complementary literal.  A
tableau presupposes what its open branches presuppose; with the three-way
rules every open branch mentions the same atoms, so they all agree.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .parser import Discourse
from .syntax import Literal
from .tableau import (
    Branch,
    RuleSet,
    Tableau,
    add_sentence,
    build,
    is_closed,
    literal_key,
    open_branches,
)


class Reason(enum.Enum):
    CONTRADICTED = "contradicted-by-branch"
    ASSERTED = "already-asserted"
    CONFLICT = "conflicting-presupposition"


@dataclass(frozen=True)
class Blocked:
    source: str  # annotated atom whose presupposition is dropped
    target: Literal
    reason: Reason
    conflict_with: Optional[str] = None

    def to_json(self) -> dict:
        out = {"source": self.source, "target": str(self.target), "reason": self.reason.value}
        if self.conflict_with is not None:
            out["conflict_with"] = self.conflict_with
        return out


@dataclass(frozen=True)
class BranchPresups:
    surviving: frozenset
    blocked: tuple


def branch_presuppositions(b: Branch, m) -> BranchPresups:
    if b.closed:
        raise ValueError("presuppositions are undefined on a closed branch")
    present = b.atoms()
    annotated = sorted(a for a in present if a in m)
    surviving = set()
    blocked = []
    for source in annotated:
        target = m[source]
        if target.complement() in b.literals:
            blocked.append(Blocked(source, target, Reason.CONTRADICTED))
            continue
        if target in b.literals:
            blocked.append(Blocked(source, target, Reason.ASSERTED))
            continue
        rival = next((d for d in annotated if m[d] == target.complement()), None)
        if rival is not None:
            blocked.append(Blocked(source, target, Reason.CONFLICT, rival))
            continue
        surviving.add(target)
    return BranchPresups(frozenset(surviving), tuple(blocked))


@dataclass(frozen=True)
class PresupReport:
    presuppositions: frozenset
    consistent: bool
    branches: tuple = ()  # (Branch, BranchPresups) per open branch
    agreement: bool = True

    def some_branch(self) -> frozenset:
        """Literals presupposed by at least one open branch."""
        out = set()
        for _, bp in self.branches:
            out |= bp.surviving
        return frozenset(out)

    def every_branch(self) -> frozenset:
        """Literals presupposed by all open branches."""
        if not self.branches:
            return frozenset()
        sets = [bp.surviving for _, bp in self.branches]
        return frozenset.intersection(*sets)

    def to_json(self) -> dict:
        return {
            "presuppositions": [str(x) for x in sorted(self.presuppositions, key=literal_key)],
            "consistent": self.consistent,
            "agreement": self.agreement,
            "branches": [
                {
                    "literals": [str(x) for x in b.sorted_literals()],
                    "surviving": [str(x) for x in sorted(bp.surviving, key=literal_key)],
                    "blocked": [x.to_json() for x in bp.blocked],
                }
                for b, bp in self.branches
            ],
        }


def tableau_presuppositions(t: Tableau) -> PresupReport:
    if t.root is not None and is_closed(t):
        return PresupReport(frozenset(), False)
    per_branch = tuple((b, branch_presuppositions(b, t.presup_map)) for b in open_branches(t))
    if not per_branch:
        return PresupReport(frozenset(), True)
    first = per_branch[0][1].surviving
    agreement = all(bp.surviving == first for _, bp in per_branch)
    return PresupReport(first, True, per_branch, agreement)


def discourse_presuppositions(d: Discourse, rules: RuleSet = RuleSet.PT, **caps) -> PresupReport:
    return tableau_presuppositions(build(d.formulas, d.presup_map, rules, **caps))


class PresupStatus(enum.Enum):
    SATISFIED = "satisfied"
    CANCELED = "canceled"
    HYBRID = "hybrid"
    INDEPENDENT = "independent"


@dataclass(frozen=True)
class StatusReport:
    status: PresupStatus
    closed_by_negation: bool  # tableau + ~phi is closed
    closed_by_target: bool  # tableau + phi is closed
    branches_with_target: int
    branches_with_complement: int
    branches_total: int

    def membership_view(self) -> PresupStatus:
        """Classification read off open-branch membership alone."""
        return status_from_membership(self.branches_with_target, self.branches_with_complement,
                                      self.branches_total)

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "closed_by_negation": self.closed_by_negation,
            "closed_by_target": self.closed_by_target,
            "branches_with_target": self.branches_with_target,
            "branches_with_complement": self.branches_with_complement,
            "open_branches": self.branches_total,
        }


def status_from_membership(with_target: int, with_complement: int, total: int) -> PresupStatus:
    if total and with_target == total:
        return PresupStatus.SATISFIED
    if total and with_complement == total:
        return PresupStatus.CANCELED
    if with_target and with_complement:
        return PresupStatus.HYBRID
    return PresupStatus.INDEPENDENT


def status_report(t: Tableau, phi: Literal, **caps) -> StatusReport:
    if t.root is not None and is_closed(t):
        raise ValueError("status is undefined for a closed tableau")
    neg_closed = is_closed(add_sentence(t, phi.complement().to_formula(), **caps))
    pos_closed = is_closed(add_sentence(t, phi.to_formula(), **caps))
    opened = open_branches(t)
    with_target = sum(phi in b for b in opened)
    with_complement = sum(phi.complement() in b for b in opened)
    if neg_closed:
        status = PresupStatus.SATISFIED
    elif pos_closed:
        status = PresupStatus.CANCELED
    elif with_target and with_complement:
        status = PresupStatus.HYBRID
    else:
        status = PresupStatus.INDEPENDENT
    return StatusReport(status, neg_closed, pos_closed, with_target, with_complement, len(opened))


def presup_status(t: Tableau, phi: Literal, **caps) -> PresupStatus:
    """Satisfied if adding ~phi closes the tableau, canceled if adding phi does,
    hybrid if open branches split on phi, independent if none mention it."""
    return status_report(t, phi, **caps).status
