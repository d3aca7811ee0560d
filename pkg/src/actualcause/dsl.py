"""Text format for models and formulas.

The model format is line oriented:

    model m2
    exo U1 in {0, 1/2}
    var J1 in {0, 1/2} := U1
    var B in {0, 1} := if J1 + J2 >= 1 then 0 else 1
    context U1 = 1/2, U2 = 1

Comments run from ``#`` to end of line; the comment ``# frozen`` on a
``var`` line marks that variable frozen.  Values are exact rationals
written as integers, fractions ``p/q`` or decimals (``0.5`` means
exactly ``1/2``).  Formulas are ``[X := v, ...] matrix`` with atoms
``(V = v)``, negation ``!``, conjunction ``&`` and disjunction ``|``.

Parsing never raises on bad input: it recovers per line and reports
every problem as a diagnostic with a byte-offset span into the source.
Each diagnostic carries a distinct code (``lexical``, ``syntax``,
``duplicate``, ``range``, ``cycle``, ``totality``, ``undeclared``,
``context``, ``nested-intervention``, ...) so tools can react to the
kind of problem rather than the message text.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import expressions as E
from . import formulas as F
from .diagnostics import ERROR, Diagnostic, errors_in
from .errors import ParseError
from .model import CausalModel, Signature, StructuralFunction
from .rationals import parse_rational

KEYWORDS = frozenset(
    "model exo var in context if then else min max and or not".split()
)

MAX_DEPTH = 100

_PUNCT = {
    ord(c): kind
    for c, kind in {
        "{": "LBRACE",
        "}": "RBRACE",
        "(": "LPAREN",
        ")": "RPAREN",
        "[": "LBRACKET",
        "]": "RBRACKET",
        ",": "COMMA",
        "=": "EQ",
        "<": "LT",
        ">": "GT",
        "+": "PLUS",
        "-": "MINUS",
        "*": "STAR",
        "!": "BANG",
        "&": "AMP",
        "|": "PIPE",
    }.items()
}

_IDENT_START = frozenset(
    b"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz_"
)
_IDENT_CONT = _IDENT_START | frozenset(b"0123456789")
_DIGITS = frozenset(b"0123456789")


class Token(NamedTuple):
    kind: str
    text: str
    span: tuple

    def __str__(self):
        return self.text if self.text else "end of input"


def _lex(data: bytes):
    """Tokenize, reporting bad bytes as ``lexical`` diagnostics."""
    tokens = []
    diags = []
    i = 0
    n = len(data)
    eq = ord("=")
    while i < n:
        b = data[i]
        if b in (0x20, 0x09, 0x0D):
            i += 1
            continue
        if b == 0x0A:
            tokens.append(Token("NEWLINE", "\n", (i, i + 1)))
            i += 1
            continue
        if b == ord("#"):
            j = i
            while j < n and data[j] != 0x0A:
                j += 1
            text = data[i:j].decode("utf-8", "replace")
            tokens.append(Token("COMMENT", text, (i, j)))
            i = j
            continue
        if b in _IDENT_START:
            j = i + 1
            while j < n and data[j] in _IDENT_CONT:
                j += 1
            text = data[i:j].decode("ascii")
            kind = text if text in KEYWORDS else "IDENT"
            tokens.append(Token(kind, text, (i, j)))
            i = j
            continue
        if b in _DIGITS:
            j = i + 1
            while j < n and data[j] in _DIGITS:
                j += 1
            if (
                j + 1 < n
                and data[j] in (ord("/"), ord("."))
                and data[j + 1] in _DIGITS
            ):
                j += 2
                while j < n and data[j] in _DIGITS:
                    j += 1
            tokens.append(Token("NUMBER", data[i:j].decode("ascii"), (i, j)))
            i = j
            continue
        if b == ord(":"):
            if i + 1 < n and data[i + 1] == eq:
                tokens.append(Token("ASSIGN", ":=", (i, i + 2)))
                i += 2
                continue
            diags.append(
                Diagnostic(
                    ERROR,
                    "lexical",
                    "stray ':' (did you mean ':='?)",
                    span=(i, i + 1),
                )
            )
            i += 1
            continue
        if b == ord("!") and i + 1 < n and data[i + 1] == eq:
            tokens.append(Token("NE", "!=", (i, i + 2)))
            i += 2
            continue
        if b == ord("<") and i + 1 < n and data[i + 1] == eq:
            tokens.append(Token("LE", "<=", (i, i + 2)))
            i += 2
            continue
        if b == ord(">") and i + 1 < n and data[i + 1] == eq:
            tokens.append(Token("GE", ">=", (i, i + 2)))
            i += 2
            continue
        if b in _PUNCT:
            tokens.append(Token(_PUNCT[b], chr(b), (i, i + 1)))
            i += 1
            continue
        width = _char_width(data, i)
        char = data[i : i + width].decode("utf-8", "replace")
        diags.append(
            Diagnostic(
                ERROR,
                "lexical",
                f"unexpected character {char!r}",
                span=(i, i + width),
            )
        )
        i += width
    tokens.append(Token("EOF", "", (n, n)))
    return tokens, diags


def _char_width(data, i):
    for width in (1, 2, 3, 4):
        try:
            data[i : i + width].decode("utf-8")
            return width
        except UnicodeDecodeError:
            continue
    return 1


class _LineError(Exception):
    def __init__(self, diagnostic):
        self.diagnostic = diagnostic


class _Cursor:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self, ahead=0) -> Token:
        j = self.i + ahead
        if j < len(self.tokens):
            return self.tokens[j]
        return self.tokens[-1] if self.tokens else Token("EOF", "", (0, 0))

    def at(self, *kinds) -> bool:
        return self.peek().kind in kinds

    def take(self) -> Token:
        tok = self.peek()
        if self.i < len(self.tokens):
            self.i += 1
        return tok

    def expect(self, kind, what=None) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise _LineError(
                Diagnostic(
                    ERROR,
                    "syntax",
                    f"expected {what or kind} but found {tok}",
                    span=tok.span,
                )
            )
        return self.take()

    def done(self) -> bool:
        return self.peek().kind == "EOF"

    def expect_end(self):
        if not self.done():
            tok = self.peek()
            raise _LineError(
                Diagnostic(
                    ERROR,
                    "syntax",
                    f"unexpected {tok} after a complete line",
                    span=tok.span,
                )
            )


def _too_deep(span):
    return _LineError(
        Diagnostic(ERROR, "syntax", "nesting is too deep", span=span)
    )


def _parse_value(cur) -> tuple:
    """A rational literal with optional leading minus; returns (value, span)."""
    start = cur.peek()
    negative = False
    if cur.at("MINUS"):
        cur.take()
        negative = True
    tok = cur.expect("NUMBER", "a number")
    value = parse_rational(tok.text)
    if negative:
        value = -value
    return value, (start.span[0], tok.span[1])


# -- expression grammar ----------------------------------------------


def _parse_expr(cur, depth=0) -> E.Expr:
    if depth > MAX_DEPTH:
        raise _too_deep(cur.peek().span)
    if cur.at("if"):
        cur.take()
        test = _parse_cond(cur, depth + 1)
        cur.expect("then")
        then = _parse_expr(cur, depth + 1)
        cur.expect("else")
        orelse = _parse_expr(cur, depth + 1)
        return E.If(test, then, orelse)
    return _parse_arith(cur, depth)


def _parse_arith(cur, depth) -> E.Expr:
    if depth > MAX_DEPTH:
        raise _too_deep(cur.peek().span)
    node = _parse_term(cur, depth)
    while cur.at("PLUS", "MINUS"):
        op = cur.take().text
        node = E.Bin(op, node, _parse_term(cur, depth))
    return node


def _parse_term(cur, depth) -> E.Expr:
    node = _parse_factor(cur, depth)
    while cur.at("STAR"):
        cur.take()
        node = E.Bin("*", node, _parse_factor(cur, depth))
    return node


def _parse_factor(cur, depth) -> E.Expr:
    if depth > MAX_DEPTH:
        raise _too_deep(cur.peek().span)
    tok = cur.peek()
    if tok.kind == "NUMBER":
        cur.take()
        return E.Lit(parse_rational(tok.text))
    if tok.kind == "MINUS":
        cur.take()
        num = cur.expect("NUMBER", "a number after '-'")
        return E.Lit(-parse_rational(num.text))
    if tok.kind == "IDENT":
        cur.take()
        return E.Var(tok.text)
    if tok.kind in ("min", "max"):
        cur.take()
        cur.expect("LPAREN", "'('")
        first = _parse_expr(cur, depth + 1)
        cur.expect("COMMA", "','")
        second = _parse_expr(cur, depth + 1)
        cur.expect("RPAREN", "')'")
        return E.Call(tok.kind, (first, second))
    if tok.kind == "LPAREN":
        cur.take()
        inner = _parse_expr(cur, depth + 1)
        cur.expect("RPAREN", "')'")
        return inner
    raise _LineError(
        Diagnostic(
            ERROR,
            "syntax",
            f"expected an expression but found {tok}",
            span=tok.span,
        )
    )


_CMP_KINDS = {
    "EQ": "=",
    "NE": "!=",
    "LT": "<",
    "LE": "<=",
    "GT": ">",
    "GE": ">=",
}


def _parse_cond(cur, depth) -> E.Cond:
    if depth > MAX_DEPTH:
        raise _too_deep(cur.peek().span)
    node = _parse_and_cond(cur, depth)
    while cur.at("or"):
        cur.take()
        node = E.Or(node, _parse_and_cond(cur, depth))
    return node


def _parse_and_cond(cur, depth) -> E.Cond:
    node = _parse_not_cond(cur, depth)
    while cur.at("and"):
        cur.take()
        node = E.And(node, _parse_not_cond(cur, depth))
    return node


def _parse_not_cond(cur, depth) -> E.Cond:
    if depth > MAX_DEPTH:
        raise _too_deep(cur.peek().span)
    if cur.at("not"):
        cur.take()
        return E.Not(_parse_not_cond(cur, depth + 1))
    # A '(' is ambiguous: it may open a parenthesized condition or a
    # parenthesized arithmetic operand of a comparison.  Try the
    # comparison reading first and fall back.
    saved = cur.i
    opened = cur.at("LPAREN")
    try:
        left = _parse_arith(cur, depth + 1)
        tok = cur.peek()
        if tok.kind not in _CMP_KINDS:
            raise _LineError(
                Diagnostic(
                    ERROR,
                    "syntax",
                    f"expected a comparison operator but found {tok}",
                    span=tok.span,
                )
            )
        cur.take()
        right = _parse_arith(cur, depth + 1)
        return E.Comparison(_CMP_KINDS[tok.kind], left, right)
    except _LineError:
        if not opened:
            raise
        cur.i = saved
    cur.take()
    inner = _parse_cond(cur, depth + 1)
    cur.expect("RPAREN", "')'")
    return inner


# -- model files -----------------------------------------------------


@dataclass(frozen=True)
class ParseResult:
    """Outcome of parsing a model: the model, the problems, or both."""

    model: CausalModel | None
    diagnostics: tuple
    source: str = ""

    @property
    def ok(self) -> bool:
        return self.model is not None and not errors_in(self.diagnostics)

    def unwrap(self) -> CausalModel:
        if not self.ok:
            detail = "; ".join(d.message for d in errors_in(self.diagnostics))
            raise ParseError(
                detail or "no model in input", self.diagnostics
            )
        return self.model


def parse_model(text) -> ParseResult:
    if isinstance(text, (bytes, bytearray)):
        data = bytes(text)
        source = data.decode("utf-8", "replace")
    else:
        source = text
        data = text.encode("utf-8")
    tokens, diags = _lex(data)
    lines = _split_lines(tokens)

    name = None
    name_span = None
    exo = []
    endo = []
    functions = []
    context = []
    frozen = set()
    decl_spans: dict = {}
    context_spans: dict = {}
    context_line_span = None

    for line in lines:
        comments = [t for t in line if t.kind == "COMMENT"]
        body = [t for t in line if t.kind != "COMMENT"]
        if not body:
            continue
        cur = _Cursor(body + [Token("EOF", "", body[-1].span)])
        head = cur.peek()
        try:
            if head.kind == "model":
                cur.take()
                tok = cur.expect("IDENT", "a model name")
                cur.expect_end()
                if name is not None:
                    raise _LineError(
                        Diagnostic(
                            ERROR,
                            "duplicate",
                            "model name declared twice",
                            span=tok.span,
                        )
                    )
                name = tok.text
                name_span = tok.span
            elif head.kind in ("exo", "var"):
                cur.take()
                tok = cur.expect("IDENT", "a variable name")
                cur.expect("in", "'in'")
                cur.expect("LBRACE", "'{'")
                values = [_parse_value(cur)[0]]
                while cur.at("COMMA"):
                    cur.take()
                    values.append(_parse_value(cur)[0])
                cur.expect("RBRACE", "'}'")
                if head.kind == "exo":
                    cur.expect_end()
                    exo.append((tok.text, tuple(values)))
                else:
                    cur.expect("ASSIGN", "':='")
                    body_expr = _parse_expr(cur)
                    cur.expect_end()
                    endo.append((tok.text, tuple(values)))
                    functions.append(StructuralFunction(tok.text, body_expr))
                    if any(_is_frozen_marker(c.text) for c in comments):
                        frozen.add(tok.text)
                decl_spans.setdefault(tok.text, []).append(tok.span)
            elif head.kind == "context":
                cur.take()
                context_line_span = context_line_span or head.span
                entries = []
                while True:
                    tok = cur.expect("IDENT", "an exogenous variable name")
                    cur.expect("EQ", "'='")
                    value, _ = _parse_value(cur)
                    entries.append((tok.text, value, tok.span))
                    if not cur.at("COMMA"):
                        break
                    cur.take()
                cur.expect_end()
                for entry_name, entry_value, entry_span in entries:
                    context.append((entry_name, entry_value))
                    context_spans.setdefault(entry_name, entry_span)
            else:
                raise _LineError(
                    Diagnostic(
                        ERROR,
                        "syntax",
                        f"expected model, exo, var or context but found "
                        f"{head}",
                        span=head.span,
                    )
                )
        except _LineError as err:
            diags.append(err.diagnostic)

    if name is None:
        diags.append(
            Diagnostic(
                ERROR,
                "syntax",
                "missing model declaration",
                span=(0, 0),
            )
        )
        return ParseResult(None, tuple(diags), source)

    model = CausalModel(
        name,
        Signature(tuple(exo), tuple(endo)),
        tuple(functions),
        tuple(context),
        frozenset(frozen),
    )
    for diag in model.validate():
        diags.append(
            _with_span(
                diag,
                decl_spans,
                context_spans,
                context_line_span or name_span,
            )
        )
    return ParseResult(model, tuple(diags), source)


def _is_frozen_marker(comment_text):
    return comment_text.lstrip("#").strip() == "frozen"


def _split_lines(tokens):
    lines = [[]]
    for tok in tokens:
        if tok.kind == "NEWLINE":
            lines.append([])
        elif tok.kind == "EOF":
            break
        else:
            lines[-1].append(tok)
    return [line for line in lines if line]


def _with_span(diag, decl_spans, context_spans, fallback):
    if diag.span is not None:
        return diag
    span = None
    if diag.variable is not None:
        spans = decl_spans.get(diag.variable, [])
        if diag.code == "duplicate" and len(spans) > 1:
            span = spans[1]
        elif diag.code == "context":
            span = context_spans.get(diag.variable)
        if span is None and spans:
            span = spans[0]
        if span is None:
            span = context_spans.get(diag.variable)
    if span is None:
        span = fallback
    return dataclasses.replace(diag, span=span)


# -- formulas --------------------------------------------------------


@dataclass(frozen=True)
class FormulaResult:
    formula: F.Formula | None
    diagnostics: tuple
    source: str = ""

    @property
    def ok(self) -> bool:
        return self.formula is not None and not errors_in(self.diagnostics)

    def unwrap(self) -> F.Formula:
        if not self.ok:
            detail = "; ".join(d.message for d in errors_in(self.diagnostics))
            raise ParseError(detail or "no formula in input", self.diagnostics)
        return self.formula


def parse_formula(text, signature: Signature | None = None) -> FormulaResult:
    """Parse ``[X := v, ...] matrix``; checked against ``signature`` if given."""
    if isinstance(text, (bytes, bytearray)):
        data = bytes(text)
        source = data.decode("utf-8", "replace")
    else:
        source = text
        data = text.encode("utf-8")
    tokens, diags = _lex(data)
    toks = [
        t for t in tokens if t.kind not in ("COMMENT", "NEWLINE", "EOF")
    ]
    end = tokens[-1].span
    cur = _Cursor(toks + [Token("EOF", "", end)])
    atoms = []
    try:
        intervention = None
        pairs = []
        if cur.at("LBRACKET"):
            cur.take()
            while True:
                tok = cur.expect("IDENT", "a variable name")
                cur.expect("ASSIGN", "':='")
                value, vspan = _parse_value(cur)
                pairs.append((tok.text, value, tok.span, vspan))
                if not cur.at("COMMA"):
                    break
                cur.take()
            cur.expect("RBRACKET", "']'")
            seen = set()
            for n, _, span, _ in pairs:
                if n in seen:
                    raise _LineError(
                        Diagnostic(
                            ERROR,
                            "duplicate",
                            f"intervention sets {n} twice",
                            span=span,
                        )
                    )
                seen.add(n)
            intervention = tuple((n, v) for n, v, _, _ in pairs)
        matrix = _parse_matrix(cur, 0, atoms)
        cur.expect_end()
    except _LineError as err:
        diags.append(err.diagnostic)
        return FormulaResult(None, tuple(diags), source)

    if signature is not None:
        _check_formula_atoms(signature, pairs, atoms, diags)
    formula = F.Formula(matrix, intervention)
    if errors_in(diags):
        return FormulaResult(None, tuple(diags), source)
    return FormulaResult(formula, tuple(diags), source)


def _parse_matrix(cur, depth, atoms) -> F.Matrix:
    if depth > MAX_DEPTH:
        raise _too_deep(cur.peek().span)
    node = _parse_matrix_and(cur, depth, atoms)
    while cur.at("PIPE"):
        cur.take()
        node = F.Or(node, _parse_matrix_and(cur, depth, atoms))
    return node


def _parse_matrix_and(cur, depth, atoms) -> F.Matrix:
    node = _parse_matrix_not(cur, depth, atoms)
    while cur.at("AMP"):
        cur.take()
        node = F.And(node, _parse_matrix_not(cur, depth, atoms))
    return node


def _parse_matrix_not(cur, depth, atoms) -> F.Matrix:
    if depth > MAX_DEPTH:
        raise _too_deep(cur.peek().span)
    tok = cur.peek()
    if tok.kind == "BANG":
        cur.take()
        return F.Not(_parse_matrix_not(cur, depth + 1, atoms))
    if tok.kind == "LBRACKET":
        raise _LineError(
            Diagnostic(
                ERROR,
                "nested-intervention",
                "an intervention prefix may only appear once, before the "
                "whole formula",
                span=tok.span,
            )
        )
    if tok.kind == "LPAREN":
        cur.take()
        if cur.at("IDENT"):
            ident = cur.take()
            cur.expect("EQ", "'='")
            value, vspan = _parse_value(cur)
            cur.expect("RPAREN", "')'")
            atom_node = F.Atom(ident.text, value)
            atoms.append((atom_node, ident.span, vspan))
            return atom_node
        inner = _parse_matrix(cur, depth + 1, atoms)
        cur.expect("RPAREN", "')'")
        return inner
    raise _LineError(
        Diagnostic(
            ERROR,
            "syntax",
            f"expected an atom like (V = v) but found {tok}",
            span=tok.span,
        )
    )


def _check_formula_atoms(signature, intervention_pairs, atoms, diags):
    endo_ranges = signature.endogenous_ranges
    exo = set(signature.exogenous_names)
    for n, v, nspan, vspan in intervention_pairs:
        if n in exo:
            diags.append(
                Diagnostic(
                    ERROR,
                    "bad-target",
                    f"cannot intervene on exogenous variable {n}",
                    span=nspan,
                    variable=n,
                )
            )
        elif n not in endo_ranges:
            diags.append(
                Diagnostic(
                    ERROR,
                    "undeclared",
                    f"intervention on unknown variable {n}",
                    span=nspan,
                    variable=n,
                )
            )
        elif v not in endo_ranges[n]:
            diags.append(
                Diagnostic(
                    ERROR,
                    "range",
                    f"intervention value is not in the range of {n}",
                    span=vspan,
                    variable=n,
                )
            )
    for atom_node, ident_span, value_span in atoms:
        if atom_node.var not in endo_ranges:
            diags.append(
                Diagnostic(
                    ERROR,
                    "undeclared",
                    f"formula mentions unknown endogenous variable "
                    f"{atom_node.var}",
                    span=ident_span,
                    variable=atom_node.var,
                )
            )
        elif atom_node.value not in endo_ranges[atom_node.var]:
            diags.append(
                Diagnostic(
                    ERROR,
                    "range",
                    f"value is not in the range of {atom_node.var}",
                    span=value_span,
                    variable=atom_node.var,
                )
            )
