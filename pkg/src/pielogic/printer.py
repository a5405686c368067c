"""Pretty-printing of formulas in ascii (re-parseable), unicode and LaTeX styles."""

from __future__ import annotations

from .formula import (
    And, App, Atom, Const, Eq, Exists, ExistsPred, Falsity, Forall, ForallPred,
    Formula, Iff, Implies, MacroCall, Not, Or, Quoted, Term, Truth, Var,
)

# binding strength, tightest last
PREC_IFF, PREC_IMP, PREC_OR, PREC_AND, PREC_NOT, PREC_ATOM = range(1, 7)

_SYMBOLS = {
    "ascii": {"not": "~", "and": " & ", "or": " | ", "imp": " -> ", "iff": " <-> ",
              "eq": " = ", "neq": " != ", "true": "true", "false": "false",
              "all": "all %s: ", "ex": "ex %s: ", "all2": "all2 %s/%d: ", "ex2": "ex2 %s/%d: "},
    "unicode": {"not": "¬", "and": " ∧ ", "or": " ∨ ", "imp": " → ", "iff": " ↔ ",
                "eq": " = ", "neq": " ≠ ", "true": "⊤", "false": "⊥",
                "all": "∀%s ", "ex": "∃%s ", "all2": "∀%s ", "ex2": "∃%s "},
    "latex": {"not": "\\lnot ", "and": " \\land ", "or": " \\lor ", "imp": " \\rightarrow ",
              "iff": " \\leftrightarrow ", "eq": " = ", "neq": " \\neq ", "true": "\\top",
              "false": "\\bot", "all": "\\forall %s\\, ", "ex": "\\exists %s\\, ",
              "all2": "\\forall %s\\, ", "ex2": "\\exists %s\\, "},
}


def _latex_name(name: str, italic: bool) -> str:
    body = name.replace("_", "\\_")
    return ("\\mathit{%s}" if italic else "\\mathsf{%s}") % body


def _name(name: str, style: str, variable: bool) -> str:
    if style == "latex":
        return _latex_name(name, variable)
    return name


def print_term(t: Term, style: str = "ascii") -> str:
    if isinstance(t, Var):
        return _name(t.name, style, True)
    if isinstance(t, Const):
        return _name(t.name, style, False)
    if isinstance(t, Quoted):
        if style == "ascii":
            return str(t)
        neg = _SYMBOLS[style]["not"] if t.negated else ""
        base = _name(t.base, style, not t.base[:1].islower())
        if style == "latex":
            return "\\langle %s%s \\rangle" % (neg, base)
        return "⟨%s%s⟩" % (neg, base)
    if isinstance(t, App):
        return "%s(%s)" % (_name(t.fn, style, False), ",".join(print_term(a, style) for a in t.args))
    raise TypeError("not a term: %r" % (t,))


def _binder(style, kind, var, arity=None):
    sym = _SYMBOLS[style]
    if isinstance(var, Quoted):
        name = print_term(var, style)
    else:
        name = _name(var, style, True)
    if arity is not None and style == "ascii":
        return sym[kind] % (name, arity)
    return sym[kind] % name


def _pr(f: Formula, style: str, ctx: int) -> str:
    """Print ``f`` in a context of binding strength ``ctx``."""
    sym = _SYMBOLS[style]
    if isinstance(f, Truth):
        return sym["true"]
    if isinstance(f, Falsity):
        return sym["false"]
    if isinstance(f, (Atom, MacroCall)):
        name = f.pred if isinstance(f, Atom) else f.name
        pname = _name(name, style, not name[:1].islower())
        if not f.args:
            return pname
        return "%s(%s)" % (pname, ",".join(print_term(a, style) for a in f.args))
    if isinstance(f, Eq):
        text = print_term(f.left, style) + sym["eq"] + print_term(f.right, style)
        return "(" + text + ")" if ctx > PREC_AND else text
    if isinstance(f, Not):
        if isinstance(f.arg, Eq):
            text = print_term(f.arg.left, style) + sym["neq"] + print_term(f.arg.right, style)
            return "(" + text + ")" if ctx > PREC_AND else text
        return sym["not"] + _pr(f.arg, style, PREC_NOT)
    if isinstance(f, (Forall, Exists, ForallPred, ExistsPred)):
        head = _head(f, style)
        body = f.body
        # a block of like individual quantifiers shares one head
        while isinstance(f, (Forall, Exists)) and type(body) is type(f):
            if style == "ascii":
                head += _head(body, style)
            else:
                head = head.rstrip().rstrip("\\,").rstrip() + " " + _binder(
                    style, "all" if isinstance(f, Forall) else "ex", body.var)
            body = body.body
        if _tight(body):
            return head + _pr(body, style, PREC_NOT)
        return head + "(" + _pr(body, style, 0) + ")"
    if isinstance(f, (And, Or)):
        prec = PREC_AND if isinstance(f, And) else PREC_OR
        op = sym["and"] if isinstance(f, And) else sym["or"]
        # nested operands of the same kind keep their grouping explicit
        text = op.join(_pr(a, style, prec + 1) for a in f.args)
        return "(" + text + ")" if prec < ctx else text
    if isinstance(f, (Implies, Iff)):
        prec = PREC_IMP if isinstance(f, Implies) else PREC_IFF
        op = sym["imp"] if isinstance(f, Implies) else sym["iff"]
        # right-associative
        text = _pr(f.left, style, prec + 1) + op + _pr(f.right, style, prec)
        return "(" + text + ")" if prec < ctx else text
    raise TypeError("not a formula: %r" % (f,))


def _head(f, style):
    if isinstance(f, Forall):
        return _binder(style, "all", f.var)
    if isinstance(f, Exists):
        return _binder(style, "ex", f.var)
    if isinstance(f, ForallPred):
        return _binder(style, "all2", f.pred, f.arity)
    return _binder(style, "ex2", f.pred, f.arity)


def _tight(f):
    if isinstance(f, (Atom, MacroCall, Truth, Falsity, Forall, Exists, ForallPred, ExistsPred)):
        return True
    return isinstance(f, Not) and _tight(f.arg)


def print_formula(f: Formula, style: str = "ascii") -> str:
    """Render ``f``.  The ascii style re-parses to an equal syntax tree."""
    if style not in _SYMBOLS:
        raise ValueError("unknown style %r" % style)
    return _pr(f, style, 0)
