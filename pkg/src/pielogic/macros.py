"""Parameterized formula macros and their expansion.

A macro body may mention its parameters as terms, as predicate symbols and as
macro arguments.  Where-clauses bind extra names to the quoted constant of a
predicate parameter (``quote``/``quote_neg``) or to the last reasoner result.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .formula import (
    App, Atom, Const, Eq, Exists, ExistsPred, Forall, ForallPred, Formula,
    MacroCall, Quoted, Var, children, rebuild, subformulas,
)
from .parser import ParseError, Parser, tokenize

WHERE_KINDS = ("quote", "quote_neg", "last_result")


class MacroError(ValueError):
    pass


class CycleError(MacroError):
    pass


class DuplicateError(MacroError):
    pass


@dataclass(frozen=True)
class WhereBinding:
    name: str
    kind: str            # quote | quote_neg | last_result
    source: Optional[str] = None

    def __str__(self):
        if self.kind == "last_result":
            return "%s = last_result" % self.name
        return "%s = %s(%s)" % (self.name, self.kind, self.source)


@dataclass(frozen=True)
class MacroDef:
    name: str
    params: tuple
    body: Formula
    where: tuple = ()

    @property
    def arity(self) -> int:
        return len(self.params)

    @property
    def key(self):
        return (self.name, len(self.params))

    def header(self) -> str:
        if not self.params:
            return self.name
        return "%s(%s)" % (self.name, ",".join(self.params))

    def __str__(self):
        text = "def %s := %s" % (self.header(), self.body)
        if self.where:
            text += " where " + ", ".join(map(str, self.where))
        return text + "."


LAST_RESULT = MacroDef("last_result", (), Atom("F"), (WhereBinding("F", "last_result"),))


class KnowledgeBase:
    """Ordered collection of macro definitions keyed by name and arity."""

    def __init__(self, defs=(), builtins: bool = True):
        self.defs: dict = {}
        if builtins:
            self.defs[LAST_RESULT.key] = LAST_RESULT
        for d in defs:
            self.add(d)

    def add(self, d: MacroDef):
        _check_def(d)
        if d.key in self.defs:
            raise DuplicateError("macro %s/%d is already defined" % d.key)
        self.defs[d.key] = d
        try:
            self._check_acyclic()
        except CycleError:
            del self.defs[d.key]
            raise

    def lookup(self, name: str, arity: int) -> Optional[MacroDef]:
        return self.defs.get((name, arity))

    def keys(self) -> frozenset:
        return frozenset(self.defs)

    def __contains__(self, key):
        return key in self.defs

    def __iter__(self):
        return iter(self.defs.values())

    def __len__(self):
        return len(self.defs)

    def user_defs(self):
        return [d for d in self.defs.values() if d is not LAST_RESULT]

    def calls(self, d: MacroDef) -> list:
        """Macros referenced directly by the body of ``d``."""
        out = []
        for g in subformulas(d.body):
            if isinstance(g, (MacroCall, Atom)):
                name = g.name if isinstance(g, MacroCall) else g.pred
                key = (name, len(g.args))
                if key in self.defs and key not in out:
                    out.append(key)
        return out

    def _check_acyclic(self):
        state = {}

        def visit(key, path):
            mark = state.get(key)
            if mark == "done":
                return
            if mark == "active":
                cyc = path[path.index(key):] + [key]
                raise CycleError("macro cycle: " + " -> ".join("%s/%d" % k for k in cyc))
            state[key] = "active"
            for k in self.calls(self.defs[key]):
                visit(k, path + [key])
            state[key] = "done"

        for key in list(self.defs):
            visit(key, [])


def _check_def(d: MacroDef):
    if len(set(d.params)) != len(d.params):
        raise MacroError("macro %s has repeated parameters" % d.name)
    where_names = [w.name for w in d.where]
    if len(set(where_names)) != len(where_names) or set(where_names) & set(d.params):
        raise MacroError("macro %s binds a name twice" % d.name)
    for w in d.where:
        if w.kind not in WHERE_KINDS:
            raise MacroError("unsupported where-clause %s" % w.kind)
        if w.kind != "last_result" and w.source not in d.params:
            raise MacroError("%s quotes %s, which is not a parameter of %s" % (w.name, w.source, d.name))
    used = _capital_names(d.body)
    for w in d.where:
        if w.name not in used:
            raise MacroError("where-bound %s is not used in the body of %s" % (w.name, d.name))
    allowed = set(d.params) | set(where_names)
    stray = sorted(n for n in used if n not in allowed)
    if stray:
        raise MacroError("macro %s mentions unbound %s" % (d.name, ", ".join(stray)))


def _capital_names(f: Formula) -> set:
    """Free capitalized names in ``f``: variables, predicate variables and quoted bases."""
    found: set = set()

    def term(t, bound):
        if isinstance(t, Var) and t.name not in bound:
            found.add(t.name)
        elif isinstance(t, Quoted) and not t.base[:1].islower() and t.base not in bound:
            found.add(t.base)
        elif isinstance(t, App):
            for a in t.args:
                term(a, bound)

    def walk(g, bound):
        if isinstance(g, (Atom, MacroCall)):
            name = g.pred if isinstance(g, Atom) else None
            if name and not name[:1].islower() and name not in bound:
                found.add(name)
            for a in g.args:
                term(a, bound)
        elif isinstance(g, Eq):
            term(g.left, bound)
            term(g.right, bound)
        elif isinstance(g, (Forall, Exists)):
            walk(g.body, bound | {g.var.base if isinstance(g.var, Quoted) else g.var})
        elif isinstance(g, (ForallPred, ExistsPred)):
            walk(g.body, bound | {g.pred})
        else:
            for c in children(g):
                walk(c, bound)

    walk(f, frozenset())
    return found


@dataclass
class ExpansionState:
    kb: KnowledgeBase = field(default_factory=KnowledgeBase)
    last_result: Optional[Formula] = None
    fresh_counter: int = 0

    def fresh(self) -> str:
        self.fresh_counter += 1
        return "_G%d" % self.fresh_counter


def define_macro(state: ExpansionState, d: MacroDef) -> ExpansionState:
    state.kb.add(d)
    return state


def quote_const(pred: str, polarity: str = "pos") -> Quoted:
    if polarity not in ("pos", "neg"):
        raise ValueError("polarity must be pos or neg")
    return Quoted(pred, polarity == "neg")


# ------------------------------------------------------------- expansion

def expand(state: ExpansionState, f: Formula) -> Formula:
    """Replace every macro call in ``f`` by its instantiated, fully expanded body."""
    if isinstance(f, (MacroCall, Atom)):
        name = f.name if isinstance(f, MacroCall) else f.pred
        d = state.kb.lookup(name, len(f.args))
        if d is None:
            if isinstance(f, MacroCall):
                arities = sorted(k[1] for k in state.kb.keys() if k[0] == name)
                if arities:
                    raise MacroError("macro %s takes %s arguments, not %d"
                                     % (name, "/".join(map(str, arities)), len(f.args)))
                raise MacroError("unknown macro %s" % name)
            return f
        return expand(state, instantiate(state, d, f.args))
    kids = children(f)
    if not kids:
        return f
    new = [expand(state, c) for c in kids]
    if all(a is b for a, b in zip(new, kids)):
        return f
    return rebuild(f, new)


def instantiate(state: ExpansionState, d: MacroDef, args) -> Formula:
    """One expansion step: body with fresh binders and parameters replaced."""
    body = _freshen(d.body, state)
    terms = dict(zip(d.params, args))
    preds = {}
    for p, a in terms.items():
        if isinstance(a, (Var, Const)):
            preds[p] = a.name
    quoted = {}
    formulas = {}
    for w in d.where:
        if w.kind == "last_result":
            if state.last_result is None:
                raise MacroError("last_result referenced before any result was produced")
            formulas[w.name] = state.last_result
            continue
        src = terms[w.source]
        if not isinstance(src, (Var, Const)):
            raise MacroError("cannot quote argument %s of %s" % (src, d.name))
        quoted[w.name] = Quoted(src.name, w.kind == "quote_neg")
    return _plug(body, terms, preds, quoted, formulas)


def _freshen(f: Formula, state: ExpansionState) -> Formula:
    """Rename every individual and predicate binder of a macro body to a fresh name."""

    def term(t, m):
        if isinstance(t, Var):
            return Var(m[t.name]) if t.name in m else t
        if isinstance(t, Quoted):
            return Quoted(m[t.base], t.negated) if t.base in m else t
        if isinstance(t, App):
            return App(t.fn, tuple(term(a, m) for a in t.args))
        if isinstance(t, Const) and t.name in m:
            return Const(m[t.name])
        return t

    def walk(g, m):
        if isinstance(g, Atom):
            return Atom(m.get(g.pred, g.pred), tuple(term(a, m) for a in g.args))
        if isinstance(g, MacroCall):
            return MacroCall(g.name, tuple(term(a, m) for a in g.args))
        if isinstance(g, Eq):
            return Eq(term(g.left, m), term(g.right, m))
        if isinstance(g, (Forall, Exists)):
            if isinstance(g.var, Quoted):
                return type(g)(term(g.var, m), walk(g.body, m))
            new = state.fresh()
            return type(g)(new, walk(g.body, {**m, g.var: new}))
        if isinstance(g, (ForallPred, ExistsPred)):
            new = state.fresh()
            return type(g)(new, g.arity, walk(g.body, {**m, g.pred: new}))
        kids = children(g)
        if not kids:
            return g
        return rebuild(g, [walk(c, m) for c in kids])

    return walk(f, {})


def _plug(f, terms, preds, quoted, formulas):
    def term(t):
        if isinstance(t, Var):
            if t.name in quoted:
                return quoted[t.name]
            return terms.get(t.name, t)
        if isinstance(t, Quoted) and t.base in preds:
            return Quoted(preds[t.base], t.negated)
        if isinstance(t, App):
            return App(t.fn, tuple(term(a) for a in t.args))
        return t

    def walk(g):
        if isinstance(g, Atom):
            if g.pred in formulas and not g.args:
                return formulas[g.pred]
            if g.pred in terms and g.pred not in preds:
                raise MacroError("parameter %s is used as a predicate but bound to %s"
                                 % (g.pred, terms[g.pred]))
            return Atom(preds.get(g.pred, g.pred), tuple(term(a) for a in g.args))
        if isinstance(g, MacroCall):
            return MacroCall(g.name, tuple(term(a) for a in g.args))
        if isinstance(g, Eq):
            return Eq(term(g.left), term(g.right))
        if isinstance(g, (Forall, Exists)) and isinstance(g.var, Quoted):
            return type(g)(term(g.var), walk(g.body))
        kids = children(g)
        if not kids:
            return g
        return rebuild(g, [walk(c) for c in kids])

    return walk(f)


def expand_call(state: ExpansionState, text: str) -> Formula:
    """Parse ``text`` against the state's macros and expand it."""
    from .parser import parse_formula
    return expand(state, parse_formula(text, macros=state.kb.keys()))


# ---------------------------------------------------------- KB text files

_COMMENT = re.compile(r"#[^\n]*")


def strip_comments(text: str) -> str:
    """Blank out ``#`` comments, keeping line and column positions."""
    out = []
    for line in text.split("\n"):
        # a '#' inside a quoted constant cannot occur, so a plain search is safe
        m = _COMMENT.search(line)
        out.append(line if not m else line[:m.start()] + " " * (len(line) - m.start()))
    return "\n".join(out)


def parse_definitions(text: str, kb: Optional[KnowledgeBase] = None, line: int = 1,
                      arities: Optional[dict] = None) -> list:
    """Parse ``def`` stanzas, registering each in ``kb`` as it is read."""
    kb = kb if kb is not None else KnowledgeBase()
    arities = arities if arities is not None else {}
    p = Parser(tokenize(strip_comments(text), line=line), arities=arities)
    defs = []
    while not p.at("eof"):
        start = p.tok
        if not p.at("lower", "def"):
            raise p.error("expected 'def'")
        p.advance()
        if not p.at("lower"):
            raise p.error("expected a macro name")
        name = p.advance().text
        params = []
        if p.at_op("("):
            p.advance()
            while not p.at_op(")"):
                if not p.at("upper"):
                    raise p.error("macro parameters must be capitalized names")
                params.append(p.advance().text)
                if p.at_op(","):
                    p.advance()
                elif not p.at_op(")"):
                    raise p.error("expected ',' or ')'")
            p.advance()
        p.expect_op(":=")
        p.macros = kb.keys() | {(name, len(params))}
        try:
            body = p.formula()
        finally:
            for k in [k for k in arities if not k[:1].islower()]:
                del arities[k]
        where = []
        if p.at("lower", "where"):
            p.advance()
            while True:
                where.append(_where_binding(p))
                if not p.at_op(","):
                    break
                p.advance()
        p.expect_op(".")
        d = MacroDef(name, tuple(params), body, tuple(where))
        try:
            kb.add(d)
        except MacroError as e:
            raise ParseError(str(e), start.line, start.col) from None
        defs.append(d)
    return defs


def _where_binding(p: Parser) -> WhereBinding:
    if not p.at("upper"):
        raise p.error("expected a capitalized name in where-clause")
    name = p.advance().text
    p.expect_op("=")
    if not p.at("lower") or p.tok.text not in WHERE_KINDS:
        raise p.error("expected quote(..), quote_neg(..) or last_result")
    kind = p.advance().text
    if kind == "last_result":
        return WhereBinding(name, kind)
    p.expect_op("(")
    if not p.at("upper"):
        raise p.error("expected a parameter name")
    src = p.advance().text
    p.expect_op(")")
    return WhereBinding(name, kind, src)


def load_kb(text: str) -> KnowledgeBase:
    kb = KnowledgeBase()
    parse_definitions(text, kb)
    return kb
