"""TPTP FOF export and a reader for the subset the exporter produces.

Quoted constants have no TPTP counterpart (``'p'`` would denote the plain
symbol ``p``), so they are written as ``qt_p`` and ``qtn_p``.  Variables are
renamed to legal TPTP variable names when needed.
"""

from __future__ import annotations

import re
from typing import Optional

from .formula import (
    And, App, Atom, Const, Eq, Exists, ExistsPred, Falsity, Forall, ForallPred,
    Formula, Iff, Implies, MacroCall, Not, Or, Quoted, Truth, Var, all_variable_names,
    free_symbols, free_vars, subformulas,
)
from .parser import ParseError


class TPTPError(ValueError):
    pass


ROLES = ("axiom", "hypothesis", "conjecture", "negated_conjecture")


def export_tptp(f: Formula, role: str = "conjecture", name: Optional[str] = None) -> str:
    """One ``fof`` annotated formula; free variables are universally closed."""
    if role not in ROLES:
        raise TPTPError("unknown role %r" % role)
    if name is None:
        name = "c1" if role == "conjecture" else "a1"
    names = _Names(f)
    body = names.formula(f)
    free = sorted(free_vars(f))
    if free:
        body = "![%s]: %s" % (",".join(names.var(v) for v in free), _wrap(body))
    return "fof(%s, %s, %s)." % (name, role, body)


def export_problem(axioms, conjecture: Optional[Formula] = None) -> str:
    lines = [export_tptp(a, "axiom", "a%d" % i) for i, a in enumerate(axioms, 1)]
    if conjecture is not None:
        lines.append(export_tptp(conjecture, "conjecture", "c1"))
    return "\n".join(lines) + "\n"


def _wrap(text):
    return "(" + text + ")"


class _Names:
    def __init__(self, f: Formula):
        for g in subformulas(f):
            if isinstance(g, (ForallPred, ExistsPred)):
                raise TPTPError("predicate quantifiers have no first-order export")
            if isinstance(g, MacroCall):
                raise TPTPError("expand macros before export")
        fs = free_symbols(f)
        self.taken = set(fs.constants) | set(fs.predicates) | {n for n, _ in fs.functions}
        self.vtaken = set(all_variable_names(f))
        self.vmap: dict = {}
        self.qmap: dict = {}

    def var(self, name: str) -> str:
        if name in self.vmap:
            return self.vmap[name]
        base = name
        if not re.fullmatch(r"[A-Z][A-Za-z0-9_]*", base):
            base = "V" + re.sub(r"[^A-Za-z0-9_]", "", name).lstrip("_")
        out = base
        k = 1
        while out in self.vtaken and out != name or out in self.vmap.values():
            out = "%s_%d" % (base, k)
            k += 1
        self.vmap[name] = out
        return out

    def quoted(self, q: Quoted) -> str:
        if q in self.qmap:
            return self.qmap[q]
        out = ("qtn_" if q.negated else "qt_") + q.base
        while out in self.taken:
            out += "_"
        self.taken.add(out)
        self.qmap[q] = out
        return out

    def term(self, t) -> str:
        if isinstance(t, Var):
            return self.var(t.name)
        if isinstance(t, Const):
            return t.name
        if isinstance(t, Quoted):
            return self.quoted(t)
        if isinstance(t, App):
            return "%s(%s)" % (t.fn, ",".join(self.term(a) for a in t.args))
        raise TPTPError("unexpected term %r" % (t,))

    def formula(self, f: Formula) -> str:
        if isinstance(f, Truth):
            return "$true"
        if isinstance(f, Falsity):
            return "$false"
        if isinstance(f, Atom):
            if not f.args:
                return f.pred
            return "%s(%s)" % (f.pred, ",".join(self.term(a) for a in f.args))
        if isinstance(f, Eq):
            return "%s = %s" % (self.term(f.left), self.term(f.right))
        if isinstance(f, Not):
            if isinstance(f.arg, Eq):
                return "%s != %s" % (self.term(f.arg.left), self.term(f.arg.right))
            return "~ " + self._unit(f.arg)
        if isinstance(f, And):
            return " & ".join(self._unit(a) for a in f.args)
        if isinstance(f, Or):
            return " | ".join(self._unit(a) for a in f.args)
        if isinstance(f, Implies):
            return "%s => %s" % (self._unit(f.left), self._unit(f.right))
        if isinstance(f, Iff):
            return "%s <=> %s" % (self._unit(f.left), self._unit(f.right))
        if isinstance(f, (Forall, Exists)):
            if isinstance(f.var, Quoted):
                raise TPTPError("quantified quoted constants have no first-order export")
            q = "!" if isinstance(f, Forall) else "?"
            return "%s[%s]: %s" % (q, self.var(f.var), self._unit(f.body))
        raise TPTPError("cannot export %s" % type(f).__name__)

    def _unit(self, f: Formula) -> str:
        text = self.formula(f)
        if isinstance(f, (And, Or, Implies, Iff, Eq)) or (isinstance(f, Not) and isinstance(f.arg, Eq)):
            return _wrap(text)
        return text


# ---------------------------------------------------------------- reader

_TOKEN = re.compile(r"""
    (?P<ws>\s+|%[^\n]*)
  | (?P<word>[a-z][A-Za-z0-9_]*|'[^']*')
  | (?P<var>[A-Z][A-Za-z0-9_]*)
  | (?P<dollar>\$[a-z]+)
  | (?P<op><=>|<~>|=>|<=|~\||~&|!=|[~&|=(),:.\[\]!?])
""", re.VERBOSE)


def _tokens(text):
    out = []
    pos = 0
    line = 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character %r in TPTP input" % text[pos], line)
        if m.lastgroup != "ws":
            out.append((m.lastgroup, m.group(), line))
        line += m.group().count("\n")
        pos = m.end()
    out.append(("eof", "", line))
    return out


class _Reader:
    def __init__(self, text):
        self.toks = _tokens(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg):
        return ParseError(msg, self.tok[2])

    def take(self, text=None, kind=None):
        t = self.tok
        if (text is not None and t[1] != text) or (kind is not None and t[0] != kind):
            raise self.error("expected %s but found %r" % (text or kind, t[1] or "end of input"))
        self.i += 1
        return t

    def at(self, text):
        return self.tok[1] == text and self.tok[0] in ("op", "word")

    def units(self):
        out = []
        while self.tok[0] != "eof":
            kw = self.take(kind="word")[1]
            if kw != "fof":
                raise self.error("only fof formulas are supported")
            self.take("(")
            name = self.take(kind="word")[1]
            self.take(",")
            role = self.take(kind="word")[1]
            self.take(",")
            f = self.logic()
            self.take(")")
            self.take(".")
            out.append((name, role, f))
        return out

    def logic(self):
        left = self.unitary()
        t = self.tok[1]
        if t in ("&", "|"):
            items = [left]
            while self.at(t):
                self.take(t)
                items.append(self.unitary())
            return And(tuple(items)) if t == "&" else Or(tuple(items))
        if t in ("=>", "<=", "<=>", "<~>", "~|", "~&"):
            self.take(t)
            right = self.unitary()
            return {
                "=>": lambda: Implies(left, right),
                "<=": lambda: Implies(right, left),
                "<=>": lambda: Iff(left, right),
                "<~>": lambda: Not(Iff(left, right)),
                "~|": lambda: Not(Or((left, right))),
                "~&": lambda: Not(And((left, right))),
            }[t]()
        return left

    def unitary(self):
        t = self.tok
        if t[1] in ("!", "?") and t[0] == "op":
            self.take()
            self.take("[")
            vs = [self.take(kind="var")[1]]
            while self.at(","):
                self.take(",")
                vs.append(self.take(kind="var")[1])
            self.take("]")
            self.take(":")
            body = self.unitary()
            for v in reversed(vs):
                body = Forall(v, body) if t[1] == "!" else Exists(v, body)
            return body
        if t[1] == "~" and t[0] == "op":
            self.take()
            return Not(self.unitary())
        if t[1] == "(":
            self.take()
            f = self.logic()
            self.take(")")
            return f
        if t[0] == "dollar":
            self.take()
            if t[1] == "$true":
                return Truth()
            if t[1] == "$false":
                return Falsity()
            raise self.error("unknown defined word %s" % t[1])
        left = self.term()
        if self.at("="):
            self.take()
            return Eq(left, self.term())
        if self.at("!="):
            self.take()
            return Not(Eq(left, self.term()))
        if isinstance(left, Const):
            return Atom(left.name, ())
        if isinstance(left, App):
            return Atom(left.fn, left.args)
        raise self.error("a variable is not a formula")

    def term(self):
        t = self.tok
        if t[0] == "var":
            self.take()
            return Var(t[1])
        if t[0] == "word":
            self.take()
            name = t[1].strip("'")
            if self.at("("):
                self.take("(")
                args = [self.term()]
                while self.at(","):
                    self.take(",")
                    args.append(self.term())
                self.take(")")
                return App(name, tuple(args))
            return Const(name)
        raise self.error("expected a term but found %r" % (t[1] or "end of input"))


def parse_tptp(text: str) -> list:
    """Read ``fof(name, role, formula).`` units as (name, role, Formula) triples."""
    return _Reader(text).units()
