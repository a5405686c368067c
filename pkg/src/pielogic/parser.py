"""Recursive-descent parser for the ascii formula syntax.

Grammar, loosest binding first::

    formula := imp ('<->' formula)?
    imp     := or ('->' imp)?
    or      := and ('|' and)*
    and     := unary ('&' unary)*
    unary   := '~' unary | quant | primary
    quant   := ('all' | 'ex') binder+ ':' unary
             | ('all2' | 'ex2') NAME '/' NUM ':' unary
    primary := '(' formula ')' | 'true' | 'false' | atom | term ('=' | '!=') term

Lowercase identifiers name constants, functions and predicates; capitalized
ones name variables.  Quantifiers bind as tightly as negation, so
``all X: p(X) -> q`` reads ``(all X: p(X)) -> q``.
"""

from __future__ import annotations

import re
from typing import Optional

from .formula import (
    And, App, ArityError, Atom, Const, Eq, Exists, ExistsPred, FALSE, Forall,
    ForallPred, Formula, Iff, Implies, MacroCall, Not, Or, Quoted, TRUE, Term, Var,
)


class ParseError(ValueError):
    def __init__(self, message, line=None, col=None):
        self.line, self.col = line, col
        where = ""
        if line is not None:
            where = " at line %d" % line if col is None else " at line %d, column %d" % (line, col)
        super().__init__(message + where)


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<quoted>'~?[A-Za-z_][A-Za-z0-9_]*')
  | (?P<lower>[a-z][A-Za-z0-9_]*)
  | (?P<upper>[A-Z_][A-Za-z0-9_]*)
  | (?P<num>\d+)
  | (?P<op><->|->|!=|:=|[~&|=(),:/.\[\]])
""", re.VERBOSE)

KEYWORDS = {"all", "ex", "all2", "ex2", "true", "false"}


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col

    def __repr__(self):
        return "Token(%s, %r)" % (self.kind, self.text)


def tokenize(text: str, line: int = 1, col: int = 1):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character %r" % text[pos], line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            tokens.append(Token(kind, chunk, line, col))
        nl = chunk.count("\n")
        if nl:
            line += nl
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


class Parser:
    """Token-stream parser; also reused by the knowledge-base and modal readers."""

    def __init__(self, tokens, macros=None, arities: Optional[dict] = None,
                 unary_ops: Optional[dict] = None):
        self.tokens = tokens
        self.i = 0
        self.macros = macros or frozenset()
        self.arities = arities if arities is not None else {}
        self.unary_ops: dict = unary_ops or {}

    # -- token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col)

    def at(self, kind, text=None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def at_op(self, text) -> bool:
        return self.at("op", text)

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect_op(self, text) -> Token:
        if not self.at_op(text):
            raise self.error("expected %r but found %r" % (text, self.tok.text or "end of input"))
        return self.advance()

    def at_keyword(self, word) -> bool:
        return self.at("lower", word)

    # -- formulas
    def formula(self) -> Formula:
        left = self.implication()
        if self.at_op("<->"):
            self.advance()
            return Iff(left, self.formula())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.at_op("->"):
            self.advance()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        items = [self.conjunction()]
        while self.at_op("|"):
            self.advance()
            items.append(self.conjunction())
        return items[0] if len(items) == 1 else Or(tuple(items))

    def conjunction(self) -> Formula:
        items = [self.unary()]
        while self.at_op("&"):
            self.advance()
            items.append(self.unary())
        return items[0] if len(items) == 1 else And(tuple(items))

    def unary(self) -> Formula:
        if self.at_op("~"):
            self.advance()
            return Not(self.unary())
        t = self.tok
        if t.kind == "lower" and t.text in self.unary_ops:
            self.advance()
            return self.unary_ops[t.text](self.unary())
        if t.kind == "lower" and t.text in ("all", "ex"):
            return self.quantifier()
        if t.kind == "lower" and t.text in ("all2", "ex2"):
            return self.pred_quantifier()
        return self.primary()

    def quantifier(self) -> Formula:
        kind = Forall if self.advance().text == "all" else Exists
        binders = []
        while self.at("upper") or self.at("quoted"):
            t = self.advance()
            binders.append(_quoted(t.text) if t.kind == "quoted" else t.text)
        if not binders:
            raise self.error("quantifier needs a variable")
        self.expect_op(":")
        body = self.unary()
        for b in reversed(binders):
            body = kind(b, body)
        return body

    def pred_quantifier(self) -> Formula:
        kind = ForallPred if self.advance().text == "all2" else ExistsPred
        t = self.tok
        if t.kind not in ("upper", "lower") or t.text in KEYWORDS:
            raise self.error("predicate quantifier needs a predicate name")
        self.advance()
        self.expect_op("/")
        if not self.at("num"):
            raise self.error("expected arity after '/'")
        arity = int(self.advance().text)
        self.expect_op(":")
        # the bound name shadows any outer use with a different arity
        saved = self.arities.pop(t.text, None)
        self.arities[t.text] = arity
        body = self.unary()
        if saved is None:
            self.arities.pop(t.text, None)
        else:
            self.arities[t.text] = saved
        return kind(t.text, arity, body)

    def primary(self) -> Formula:
        t = self.tok
        if self.at_op("("):
            self.advance()
            f = self.formula()
            self.expect_op(")")
            return f
        if t.kind == "lower" and t.text == "true":
            self.advance()
            return TRUE
        if t.kind == "lower" and t.text == "false":
            self.advance()
            return FALSE
        if t.kind == "quoted":
            left = self.term()
            return self.equation(left, t)
        if t.kind in ("lower", "upper"):
            if t.text in KEYWORDS:
                raise self.error("unexpected keyword %r" % t.text)
            self.advance()
            args = self.arguments() if self.at_op("(") else None
            if self.at_op("=") or self.at_op("!="):
                return self.equation(self._as_term(t, args), t)
            args = tuple(args or ())
            if (t.text, len(args)) in self.macros:
                return MacroCall(t.text, args)
            self._note_arity(t, len(args))
            return Atom(t.text, args)
        raise self.error("unexpected %r" % (t.text or "end of input"))

    def equation(self, left: Term, start: Token) -> Formula:
        if self.at_op("="):
            self.advance()
            return Eq(left, self.term())
        if self.at_op("!="):
            self.advance()
            return Not(Eq(left, self.term()))
        raise self.error("expected '=' or '!=' after term", start)

    def _note_arity(self, tok: Token, n: int):
        known = self.arities.setdefault(tok.text, n)
        if known != n:
            raise ArityError("%s used with arity %d but previously with arity %d (line %d, column %d)"
                             % (tok.text, n, known, tok.line, tok.col))

    # -- terms
    def arguments(self):
        self.expect_op("(")
        args = [self.term()]
        while self.at_op(","):
            self.advance()
            args.append(self.term())
        self.expect_op(")")
        return args

    def term(self) -> Term:
        t = self.tok
        if t.kind == "quoted":
            self.advance()
            return _quoted(t.text)
        if t.kind in ("lower", "upper") and t.text not in KEYWORDS:
            self.advance()
            args = self.arguments() if self.at_op("(") else None
            return self._as_term(t, args)
        raise self.error("expected a term but found %r" % (t.text or "end of input"))

    def _as_term(self, t: Token, args) -> Term:
        if t.kind == "upper":
            if args is not None:
                raise self.error("variable %s cannot take arguments" % t.text, t)
            return Var(t.text)
        if args is None:
            return Const(t.text)
        return App(t.text, tuple(args))

    def finish(self):
        if not self.at("eof"):
            raise self.error("unexpected %r after end of formula" % self.tok.text)


def _quoted(text: str) -> Quoted:
    inner = text[1:-1]
    if inner.startswith("~"):
        return Quoted(inner[1:], True)
    return Quoted(inner, False)


def parse_formula(text: str, macros=None, arities: Optional[dict] = None,
                  unary_ops: Optional[dict] = None) -> Formula:
    """Parse ``text``.

    ``macros`` is a collection of ``(name, arity)`` pairs; applications matching
    one become :class:`MacroCall` nodes.  ``arities`` (updated in place) carries
    predicate arities seen by earlier parses so clashes are reported.
    """
    p = Parser(tokenize(text), macros=macros, arities=arities, unary_ops=unary_ops)
    f = p.formula()
    p.finish()
    return f


def parse_term(text: str) -> Term:
    p = Parser(tokenize(text))
    t = p.term()
    p.finish()
    return t
