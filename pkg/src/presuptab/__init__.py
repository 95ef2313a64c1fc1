"""Presuppositional tableaux for propositional logic.

Expands formulas and discourses into tableaux whose open branches are
complete truth assignments, decides satisfiability and validity, and
projects the presuppositions of annotated atoms onto compound statements.
"""
from .errors import (
    AnnotationError,
    CorpusFormatError,
    InvalidPresupMap,
    ParseError,
    PresupTabError,
    ResourceError,
)
from .oracle import check_equivalence, enumerate_models, is_satisfiable, is_valid
from .parser import (
    CorpusEntry,
    Discourse,
    parse_corpus,
    parse_discourse,
    parse_formula,
    render,
    render_discourse,
)
from .presup import (
    PresupReport,
    PresupStatus,
    Reason,
    branch_presuppositions,
    discourse_presuppositions,
    presup_status,
    status_report,
    tableau_presuppositions,
)
from .syntax import (
    And,
    Atom,
    Implies,
    Literal,
    Not,
    Or,
    PresupMap,
    atoms_of,
    complement,
    validate_presup_map,
)
from .tableau import (
    Branch,
    RuleSet,
    Tableau,
    add_sentence,
    build,
    check_coverage,
    expand,
    is_closed,
    open_branches,
)

__version__ = "0.1.0"
