"""Concrete syntax: formulas, discourses, corpus files, and rendering.

Grammar (loosest binding first)::

    formula := disj ( "->" formula )?
    disj    := conj ( "|" conj )*
    conj    := neg ( "&" neg )*
    neg     := "~" neg | prim
    prim    := atom | "(" formula ")"
    atom    := IDENT ( "[" "~"? IDENT "]" )?

Unicode ``¬ ∧ ∨ →`` are accepted as input aliases.  Formulas in a discourse
are separated by ``;`` or newlines and ``#`` comments run to end of line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .errors import AnnotationError, CorpusFormatError, ParseError
from .syntax import (
    EMPTY_MAP,
    And,
    Atom,
    Formula,
    Implies,
    Literal,
    Not,
    Or,
    PresupMap,
    validate_presup_map,
)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<arrow>->|→)
  | (?P<op>[~¬&∧|∨;()\[\]])
    """,
    re.VERBOSE,
)
_ALIASES = {"¬": "~", "∧": "&", "∨": "|", "→": "->"}


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", an operator string, "sep" or "eof"
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "newline":
            tokens.append(Token("sep", "\n", line, col))
            line += 1
            line_start = m.end()
        elif kind == "ident":
            tokens.append(Token("ident", m.group(), line, col))
        elif kind in ("arrow", "op"):
            sym = _ALIASES.get(m.group(), m.group())
            tokens.append(Token("sep" if sym == ";" else sym, sym, line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.annotations: dict[str, tuple[Literal, Token]] = {}

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        if self.tok.kind != kind:
            self.fail(f"expected {what}")
        return self.advance()

    def fail(self, message: str):
        tok = self.tok
        found = "end of input" if tok.kind == "eof" else (
            "end of line" if tok.text == "\n" else repr(tok.text))
        raise ParseError(f"{message}, found {found}", tok.line, tok.column)

    def skip_separators(self):
        while self.tok.kind == "sep":
            self.advance()

    def formula(self) -> Formula:
        left = self.disj()
        if self.tok.kind == "->":
            self.advance()
            return Implies(left, self.formula())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.tok.kind == "|":
            self.advance()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.neg()
        while self.tok.kind == "&":
            self.advance()
            f = And(f, self.neg())
        return f

    def neg(self) -> Formula:
        if self.tok.kind == "~":
            self.advance()
            return Not(self.neg())
        return self.prim()

    def prim(self) -> Formula:
        if self.tok.kind == "(":
            self.advance()
            f = self.formula()
            self.expect(")", "')'")
            return f
        if self.tok.kind != "ident":
            self.fail("expected an atom, '~' or '('")
        name_tok = self.advance()
        if self.tok.kind == "[":
            self.advance()
            positive = True
            if self.tok.kind == "~":
                self.advance()
                positive = False
            target = self.expect("ident", "an atom inside annotation").text
            self.expect("]", "']'")
            self.annotate(name_tok, Literal(target, positive))
        return Atom(name_tok.text)

    def annotate(self, tok: Token, lit: Literal):
        seen = self.annotations.get(tok.text)
        if seen is not None and seen[0] != lit:
            raise AnnotationError(
                f"atom {tok.text!r} annotated with {lit} but earlier with {seen[0]} "
                f"at {seen[1].line}:{seen[1].column}",
                tok.line, tok.column)
        if seen is None:
            self.annotations[tok.text] = (lit, tok)

    def presup_map(self) -> PresupMap:
        m = PresupMap({a: lit for a, (lit, _) in self.annotations.items()})
        violations = validate_presup_map(m)
        if violations:
            v = violations[0]
            where = self.annotations[v.atom][1]
            raise AnnotationError(f"invalid annotation: {v}", where.line, where.column)
        return m


def parse_formula(text: str) -> tuple[Formula, PresupMap]:
    p = _Parser(text)
    p.skip_separators()
    f = p.formula()
    p.skip_separators()
    if p.tok.kind != "eof":
        p.fail("expected end of input")
    return f, p.presup_map()


@dataclass(frozen=True)
class Discourse:
    formulas: tuple = ()
    presup_map: PresupMap = EMPTY_MAP


def parse_discourse(text: str) -> Discourse:
    p = _Parser(text)
    formulas = []
    p.skip_separators()
    while p.tok.kind != "eof":
        formulas.append(p.formula())
        if p.tok.kind not in ("sep", "eof"):
            p.fail("expected ';', newline or end of input")
        p.skip_separators()
    return Discourse(tuple(formulas), p.presup_map())


# -- rendering ------------------------------------------------------------

_PREC = {Implies: 1, Or: 2, And: 3}
_SYM = {Implies: "->", Or: "|", And: "&"}


def render(f: Formula, m=EMPTY_MAP) -> str:
    """Print ``f`` with the fewest parentheses that parse back to ``f``.

    Every occurrence of an annotated atom carries its annotation.
    """
    return _render(f, m, 0)


def _render(f, m, ctx: int) -> str:
    if isinstance(f, Atom):
        lit = m.get(f.name)
        return f.name if lit is None else f"{f.name}[{lit}]"
    if isinstance(f, Not):
        return "~" + _render(f.sub, m, 4)
    prec = _PREC[type(f)]
    if isinstance(f, Implies):
        # right associative
        text = f"{_render(f.left, m, prec + 1)} -> {_render(f.right, m, prec)}"
    else:
        text = f"{_render(f.left, m, prec)} {_SYM[type(f)]} {_render(f.right, m, prec + 1)}"
    return f"({text})" if prec < ctx else text


def render_discourse(d: Discourse) -> str:
    return " ; ".join(render(f, d.presup_map) for f in d.formulas)


# -- corpus files -----------------------------------------------------------

STATUSES = ("satisfied", "canceled", "hybrid", "independent")
_CORPUS_KEYS = {"label", "formula", "discourse", "expect-presup", "expect-status"}


@dataclass
class CorpusEntry:
    label: str
    input: Discourse
    expected_presups: frozenset
    expected_status: Optional[dict] = None
    source: str = ""
    line: int = 0


def _corpus_entry(fields, first_line) -> CorpusEntry:
    label = fields.get("label", [(None, "")])[0][1] or None
    for key, values in fields.items():
        if key != "expect-status" and len(values) > 1:
            raise CorpusFormatError(f"duplicate key {key!r}", label, values[1][0])
    if label is None:
        raise CorpusFormatError("missing 'label:'", None, first_line)
    has_f, has_d = "formula" in fields, "discourse" in fields
    if has_f == has_d:
        raise CorpusFormatError("need exactly one of 'formula:' or 'discourse:'", label, first_line)
    key = "formula" if has_f else "discourse"
    line, source = fields[key][0]
    try:
        if has_f:
            f, m = parse_formula(source)
            disc = Discourse((f,), m)
        else:
            disc = parse_discourse(source)
    except ParseError as e:
        raise CorpusFormatError(f"bad {key}: {e}", label, line) from e
    if "expect-presup" not in fields:
        raise CorpusFormatError("missing 'expect-presup:'", label, first_line)
    line, raw = fields["expect-presup"][0]
    expected = set()
    if raw.strip() != "(none)":
        for piece in raw.split(","):
            try:
                expected.add(Literal.parse(piece))
            except ValueError as e:
                raise CorpusFormatError(str(e), label, line) from e
    targets = disc.presup_map.targets()
    for lit in expected:
        if lit not in targets:
            raise CorpusFormatError(f"expected presupposition {lit} is not an annotation target",
                                    label, line)
    status = None
    for line, raw in fields.get("expect-status", []):
        lhs, eq, rhs = raw.partition("=")
        rhs = rhs.strip().lower()
        if not eq or rhs not in STATUSES:
            raise CorpusFormatError(f"bad expect-status {raw!r}", label, line)
        try:
            lit = Literal.parse(lhs)
        except ValueError as e:
            raise CorpusFormatError(str(e), label, line) from e
        status = status or {}
        status[lit] = rhs
    return CorpusEntry(label, disc, frozenset(expected), status, source, first_line)


def parse_corpus(text: str) -> list[CorpusEntry]:
    entries = []
    fields: dict = {}
    first_line = None

    def flush():
        if fields:
            entries.append(_corpus_entry(fields, first_line))

    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if stripped == "---":
            flush()
            fields, first_line = {}, None
            continue
        if not stripped or stripped.startswith("#"):
            continue
        key, colon, value = stripped.partition(":")
        key = key.strip().lower()
        label = fields.get("label", [(None, None)])[0][1]
        if not colon:
            raise CorpusFormatError(f"expected 'key: value', got {stripped!r}", label, lineno)
        if key not in _CORPUS_KEYS:
            raise CorpusFormatError(f"unknown key {key!r}", label, lineno)
        if first_line is None:
            first_line = lineno
        fields.setdefault(key, []).append((lineno, value.strip()))
    flush()
    return entries
