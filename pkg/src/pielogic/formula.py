"""Abstract syntax for first-order logic with equality and predicate quantifiers.

Every node is an immutable dataclass.  Connectives ``And``/``Or`` are n-ary
(at least two operands); use :func:`conj` and :func:`disj` to build them from
arbitrary lists.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Union


# ---------------------------------------------------------------- terms

class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const(Term):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Quoted(Term):
    """Individual constant standing for a predicate (``'p'``) or its complement (``'~p'``)."""
    base: str
    negated: bool = False

    def __str__(self):
        return "'~%s'" % self.base if self.negated else "'%s'" % self.base


@dataclass(frozen=True)
class App(Term):
    fn: str
    args: tuple

    def __str__(self):
        return "%s(%s)" % (self.fn, ",".join(map(str, self.args)))


# ------------------------------------------------------------- formulas

class Formula:
    __slots__ = ()

    def __str__(self):
        from .printer import print_formula
        return print_formula(self)


@dataclass(frozen=True, repr=False)
class Truth(Formula):
    def __repr__(self):
        return "TRUE"


@dataclass(frozen=True, repr=False)
class Falsity(Formula):
    def __repr__(self):
        return "FALSE"


TRUE = Truth()
FALSE = Falsity()


@dataclass(frozen=True)
class Atom(Formula):
    pred: str
    args: tuple = ()


@dataclass(frozen=True)
class MacroCall(Formula):
    name: str
    args: tuple = ()


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    args: tuple

    def __post_init__(self):
        if len(self.args) < 2:
            raise ValueError("And needs at least two operands; use conj()")


@dataclass(frozen=True)
class Or(Formula):
    args: tuple

    def __post_init__(self):
        if len(self.args) < 2:
            raise ValueError("Or needs at least two operands; use disj()")


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


Binder = Union[str, Quoted]


@dataclass(frozen=True)
class Forall(Formula):
    """Individual quantifier.  ``var`` is a variable name, or a Quoted constant
    when the quantifier ranges over the individual representing a predicate."""
    var: Binder
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: Binder
    body: Formula


@dataclass(frozen=True)
class ForallPred(Formula):
    pred: str
    arity: int
    body: Formula


@dataclass(frozen=True)
class ExistsPred(Formula):
    pred: str
    arity: int
    body: Formula


@dataclass(frozen=True)
class Lambda:
    """Predicate abstraction used as a substitution value: ``P(t1..tn) := body{params -> t}``."""
    params: tuple
    body: Formula


QUANTIFIERS = (Forall, Exists)
PRED_QUANTIFIERS = (ForallPred, ExistsPred)


def conj(items: Iterable[Formula]) -> Formula:
    items = tuple(items)
    if not items:
        return TRUE
    if len(items) == 1:
        return items[0]
    return And(items)


def disj(items: Iterable[Formula]) -> Formula:
    items = tuple(items)
    if not items:
        return FALSE
    if len(items) == 1:
        return items[0]
    return Or(items)


def neq(a: Term, b: Term) -> Formula:
    return Not(Eq(a, b))


def forall_all(names, body):
    for name in reversed(list(names)):
        body = Forall(name, body)
    return body


def exists_all(names, body):
    for name in reversed(list(names)):
        body = Exists(name, body)
    return body


class Signature(NamedTuple):
    predicates: dict
    functions: dict
    constants: frozenset


class ArityError(ValueError):
    pass


# ------------------------------------------------------------ traversal

def children(f: Formula) -> tuple:
    if isinstance(f, (And, Or)):
        return f.args
    if isinstance(f, Not):
        return (f.arg,)
    if isinstance(f, (Implies, Iff)):
        return (f.left, f.right)
    if isinstance(f, (Forall, Exists, ForallPred, ExistsPred)):
        return (f.body,)
    return ()


def rebuild(f: Formula, kids) -> Formula:
    """Return ``f`` with its immediate subformulas replaced by ``kids``."""
    if isinstance(f, And):
        return And(tuple(kids))
    if isinstance(f, Or):
        return Or(tuple(kids))
    if isinstance(f, Not):
        return Not(kids[0])
    if isinstance(f, Implies):
        return Implies(kids[0], kids[1])
    if isinstance(f, Iff):
        return Iff(kids[0], kids[1])
    if isinstance(f, Forall):
        return Forall(f.var, kids[0])
    if isinstance(f, Exists):
        return Exists(f.var, kids[0])
    if isinstance(f, ForallPred):
        return ForallPred(f.pred, f.arity, kids[0])
    if isinstance(f, ExistsPred):
        return ExistsPred(f.pred, f.arity, kids[0])
    return f


def subformulas(f: Formula):
    yield f
    for c in children(f):
        yield from subformulas(c)


def term_vars(t: Term, acc: set) -> set:
    if isinstance(t, Var):
        acc.add(t.name)
    elif isinstance(t, App):
        for a in t.args:
            term_vars(a, acc)
    return acc


def formula_terms(f: Formula):
    """Top-level argument terms of an atomic formula."""
    if isinstance(f, (Atom, MacroCall)):
        return f.args
    if isinstance(f, Eq):
        return (f.left, f.right)
    return ()


def is_atomic(f: Formula) -> bool:
    return isinstance(f, (Atom, Eq, MacroCall, Truth, Falsity))


def is_literal(f: Formula) -> bool:
    return is_atomic(f) or (isinstance(f, Not) and is_atomic(f.arg))


def connective_counts(f: Formula) -> dict:
    counts: dict = {}
    for g in subformulas(f):
        if not is_atomic(g):
            key = type(g).__name__
            counts[key] = counts.get(key, 0) + (len(g.args) - 1 if isinstance(g, (And, Or)) else 1)
    return counts


def contains_macro_calls(f: Formula) -> bool:
    return any(isinstance(g, MacroCall) for g in subformulas(f))


def has_pred_quantifiers(f: Formula) -> bool:
    return any(isinstance(g, PRED_QUANTIFIERS) for g in subformulas(f))


# --------------------------------------------------------- free symbols

class FreeSymbols(NamedTuple):
    variables: frozenset
    predicates: frozenset
    constants: frozenset
    quoted: frozenset
    functions: frozenset


def _collect_term(t, bound_vars, bound_quoted, bound_preds, out):
    if isinstance(t, Var):
        if t.name not in bound_vars:
            out["variables"].add(t.name)
    elif isinstance(t, Const):
        out["constants"].add(t.name)
    elif isinstance(t, Quoted):
        if t not in bound_quoted and t.base not in bound_preds:
            out["quoted"].add(t)
    elif isinstance(t, App):
        out["functions"].add((t.fn, len(t.args)))
        for a in t.args:
            _collect_term(a, bound_vars, bound_quoted, bound_preds, out)


def _collect(f, bound_vars, bound_quoted, bound_preds, out, arities):
    if isinstance(f, (Atom, MacroCall)):
        if isinstance(f, Atom) and f.pred not in bound_preds:
            out["predicates"].add(f.pred)
            arities.setdefault(f.pred, len(f.args))
        for a in f.args:
            _collect_term(a, bound_vars, bound_quoted, bound_preds, out)
    elif isinstance(f, Eq):
        _collect_term(f.left, bound_vars, bound_quoted, bound_preds, out)
        _collect_term(f.right, bound_vars, bound_quoted, bound_preds, out)
    elif isinstance(f, (Forall, Exists)):
        if isinstance(f.var, Quoted):
            _collect(f.body, bound_vars, bound_quoted | {f.var}, bound_preds, out, arities)
        else:
            _collect(f.body, bound_vars | {f.var}, bound_quoted, bound_preds, out, arities)
    elif isinstance(f, (ForallPred, ExistsPred)):
        _collect(f.body, bound_vars, bound_quoted, bound_preds | {f.pred}, out, arities)
    else:
        for c in children(f):
            _collect(c, bound_vars, bound_quoted, bound_preds, out, arities)


def free_symbols(f: Formula) -> FreeSymbols:
    """Free individual variables, predicate symbols, constants, quoted constants and functions."""
    out = {k: set() for k in FreeSymbols._fields}
    _collect(f, frozenset(), frozenset(), frozenset(), out, {})
    return FreeSymbols(**{k: frozenset(v) for k, v in out.items()})


def free_vars(f: Formula) -> frozenset:
    return free_symbols(f).variables


def predicate_arities(f: Formula) -> dict:
    """Map every free predicate symbol to its arity."""
    arities: dict = {}
    out = {k: set() for k in FreeSymbols._fields}
    _collect(f, frozenset(), frozenset(), frozenset(), out, arities)
    return arities


def signature(f: Formula) -> Signature:
    preds: dict = {}
    funcs: dict = {}
    consts: set = set()

    def note(table, name, n):
        if table.setdefault(name, n) != n:
            raise ArityError("%s used with arities %d and %d" % (name, table[name], n))

    def walk_term(t):
        if isinstance(t, Const):
            consts.add(t.name)
        elif isinstance(t, Quoted):
            consts.add(str(t))
        elif isinstance(t, App):
            note(funcs, t.fn, len(t.args))
            for a in t.args:
                walk_term(a)

    def walk(g, bound):
        if isinstance(g, Atom):
            if g.pred not in bound:
                note(preds, g.pred, len(g.args))
            for a in g.args:
                walk_term(a)
        elif isinstance(g, Eq):
            walk_term(g.left)
            walk_term(g.right)
        elif isinstance(g, (ForallPred, ExistsPred)):
            walk(g.body, bound | {g.pred})
        else:
            for c in children(g):
                walk(c, bound)

    walk(f, frozenset())
    return Signature(preds, funcs, frozenset(consts))


def all_variable_names(f: Formula) -> set:
    """Every variable name occurring anywhere in ``f`` (bound or free)."""
    names: set = set()
    for g in subformulas(f):
        if isinstance(g, (Forall, Exists)) and isinstance(g.var, str):
            names.add(g.var)
        for t in formula_terms(g):
            term_vars(t, names)
    return names


def all_predicate_names(f: Formula) -> set:
    names: set = set()
    for g in subformulas(f):
        if isinstance(g, Atom):
            names.add(g.pred)
        elif isinstance(g, PRED_QUANTIFIERS):
            names.add(g.pred)
    return names


# ---------------------------------------------------------- substitution

_TRAILING_DIGITS = re.compile(r"\d+$")


def fresh_name(base: str, avoid) -> str:
    stem = _TRAILING_DIGITS.sub("", base) or base
    for i in itertools.count(1):
        cand = "%s%d" % (stem, i)
        if cand not in avoid:
            return cand


def subst_term(t: Term, tmap: dict, qmap: dict = None) -> Term:
    if isinstance(t, Var):
        return tmap.get(t, t)
    if isinstance(t, Quoted):
        if qmap and t in qmap:
            return qmap[t]
        return t
    if isinstance(t, App):
        return App(t.fn, tuple(subst_term(a, tmap, qmap) for a in t.args))
    return t


def _range_vars(tmap, pmap):
    names: set = set()
    for v in tmap.values():
        term_vars(v, names)
    for v in pmap.values():
        if isinstance(v, Lambda):
            names |= free_vars(v.body) - set(v.params)
    return names


def _range_preds(pmap):
    names: set = set()
    for v in pmap.values():
        if isinstance(v, str):
            names.add(v)
        elif isinstance(v, Lambda):
            names |= free_symbols(v.body).predicates
    return names


def _check_arity(pmap, f):
    arities = predicate_arities(f)
    for p, v in pmap.items():
        if isinstance(v, Lambda) and p in arities and arities[p] != len(v.params):
            raise ArityError("predicate %s has arity %d but replacement takes %d arguments"
                             % (p, arities[p], len(v.params)))


def substitute(f: Formula, mapping: dict) -> Formula:
    """Capture-avoiding substitution.

    Keys of ``mapping`` are ``Var`` objects (mapped to terms) or predicate names
    (mapped to a predicate name or a :class:`Lambda`).  Renaming a predicate also
    renames its quoted constants.
    """
    tmap = {k: v for k, v in mapping.items() if isinstance(k, Var)}
    pmap = {k: v for k, v in mapping.items() if isinstance(k, str)}
    if not tmap and not pmap:
        return f
    _check_arity(pmap, f)
    return _subst(f, tmap, pmap, _range_vars(tmap, pmap), _range_preds(pmap), frozenset())


def _subst_pred_atom(f: Atom, tmap, pmap, qmap):
    args = tuple(subst_term(a, tmap, qmap) for a in f.args)
    if f.pred in pmap:
        val = pmap[f.pred]
        if isinstance(val, Lambda):
            if len(val.params) != len(args):
                raise ArityError("arity mismatch substituting %s" % f.pred)
            return substitute(val.body, {Var(p): a for p, a in zip(val.params, args)})
        return Atom(val, args)
    return Atom(f.pred, args)


def _quoted_map(pmap, shield=frozenset()):
    qmap = {}
    for p, v in pmap.items():
        if isinstance(v, str) and p not in shield:
            qmap[Quoted(p, False)] = Quoted(v, False)
            qmap[Quoted(p, True)] = Quoted(v, True)
    return qmap


def _subst(f, tmap, pmap, rvars, rpreds, shield):
    # ``shield`` holds predicate names whose quoted constants are bound here
    qmap = _quoted_map(pmap, shield)
    if isinstance(f, Atom):
        return _subst_pred_atom(f, tmap, pmap, qmap)
    if isinstance(f, MacroCall):
        args = []
        for a in f.args:
            # macro arguments may name predicates
            target = pmap.get(a.name) if isinstance(a, (Var, Const)) else None
            if isinstance(target, str) and not (isinstance(a, Var) and a in tmap):
                args.append(Const(target) if target[:1].islower() else Var(target))
            else:
                args.append(subst_term(a, tmap, qmap))
        return MacroCall(f.name, tuple(args))
    if isinstance(f, Eq):
        return Eq(subst_term(f.left, tmap, qmap), subst_term(f.right, tmap, qmap))
    if isinstance(f, (Forall, Exists)):
        if isinstance(f.var, Quoted):
            if not tmap and not pmap:
                return f
            base = f.var.base
            if base in rpreds:
                # the binder would capture a renamed quoted constant
                new = fresh_name(base, rpreds | all_predicate_names(f.body) | set(pmap)
                                 | _quoted_bases(f.body))
                body = f.body
                for neg in (False, True):
                    body = _replace_quoted(body, Quoted(base, neg), Quoted(new, neg))
                f = type(f)(Quoted(new, f.var.negated), body)
                base = new
            body = _subst(f.body, tmap, pmap, rvars, rpreds, shield | {base})
            return type(f)(f.var, body)
        x = Var(f.var)
        inner_t = {k: v for k, v in tmap.items() if k != x}
        if not inner_t and not pmap:
            return f
        if f.var in rvars:
            new = fresh_name(f.var, rvars | all_variable_names(f.body) | {t.name for t in inner_t})
            body = _subst(f.body, {x: Var(new)}, {}, {new}, set(), frozenset())
            return type(f)(new, _subst(body, inner_t, pmap, rvars, rpreds, shield))
        return type(f)(f.var, _subst(f.body, inner_t, pmap, rvars, rpreds, shield))
    if isinstance(f, (ForallPred, ExistsPred)):
        inner_p = {k: v for k, v in pmap.items() if k != f.pred}
        if not tmap and not inner_p:
            return f
        if f.pred in rpreds:
            new = fresh_name(f.pred, rpreds | all_predicate_names(f.body) | set(inner_p))
            body = _subst(f.body, {}, {f.pred: new}, set(), {new}, frozenset())
            return type(f)(new, f.arity, _subst(body, tmap, inner_p, rvars, rpreds, shield))
        return type(f)(f.pred, f.arity, _subst(f.body, tmap, inner_p, rvars, rpreds, shield))
    kids = children(f)
    if not kids:
        return f
    return rebuild(f, [_subst(c, tmap, pmap, rvars, rpreds, shield) for c in kids])


# ------------------------------------------------------ alpha equivalence

def canonical(f: Formula) -> Formula:
    """Rename every bound variable and bound predicate to a positional name."""
    counter = itertools.count()

    def walk(g, vmap, pmap):
        if isinstance(g, Atom):
            return Atom(pmap.get(g.pred, g.pred), tuple(term(a, vmap, pmap) for a in g.args))
        if isinstance(g, MacroCall):
            return MacroCall(g.name, tuple(term(a, vmap, pmap) for a in g.args))
        if isinstance(g, Eq):
            return Eq(term(g.left, vmap, pmap), term(g.right, vmap, pmap))
        if isinstance(g, (Forall, Exists)):
            new = "_B%d" % next(counter)
            if isinstance(g.var, Quoted):
                key = ("q", g.var.base, g.var.negated)
                return type(g)(Quoted(new), walk(g.body, {**vmap, key: new}, pmap))
            return type(g)(new, walk(g.body, {**vmap, g.var: new}, pmap))
        if isinstance(g, (ForallPred, ExistsPred)):
            new = "_P%d" % next(counter)
            return type(g)(new, g.arity, walk(g.body, vmap, {**pmap, g.pred: new}))
        kids = children(g)
        if not kids:
            return g
        return rebuild(g, [walk(c, vmap, pmap) for c in kids])

    def term(t, vmap, pmap):
        if isinstance(t, Var):
            if t.name in vmap:
                return Var(vmap[t.name])
            return Var(pmap.get(t.name, t.name))
        if isinstance(t, Quoted):
            key = ("q", t.base, t.negated)
            if key in vmap:
                return Quoted(vmap[key])
            return Quoted(pmap.get(t.base, t.base), t.negated)
        if isinstance(t, App):
            return App(t.fn, tuple(term(a, vmap, pmap) for a in t.args))
        if isinstance(t, Const) and t.name in pmap:
            return Const(pmap[t.name])
        return t

    return walk(f, {}, {})


def alpha_equal(f: Formula, g: Formula) -> bool:
    return canonical(f) == canonical(g)


def rename_quoted_binders(f: Formula, avoid=None) -> Formula:
    """Replace quantifiers over quoted constants by quantifiers over fresh variables."""
    avoid = set(avoid or ()) | all_variable_names(f)

    def walk(g):
        if isinstance(g, (Forall, Exists)) and isinstance(g.var, Quoted):
            name = fresh_name("Q", avoid)
            avoid.add(name)
            body = _replace_quoted(g.body, g.var, Var(name))
            return type(g)(name, walk(body))
        kids = children(g)
        if not kids:
            return g
        return rebuild(g, [walk(c) for c in kids])

    return walk(f)


def _quoted_bases(f: Formula) -> set:
    out = set()

    def term(t):
        if isinstance(t, Quoted):
            out.add(t.base)
        elif isinstance(t, App):
            for a in t.args:
                term(a)

    for g in subformulas(f):
        if isinstance(g, (Forall, Exists)) and isinstance(g.var, Quoted):
            out.add(g.var.base)
        for t in formula_terms(g):
            term(t)
    return out


def _replace_quoted(f, q: Quoted, t: Term):
    if isinstance(f, (Forall, Exists)) and f.var == q:
        return f
    if isinstance(f, (ForallPred, ExistsPred)) and f.pred == q.base:
        return f
    if isinstance(f, (Atom, MacroCall)):
        return type(f)(f.pred if isinstance(f, Atom) else f.name,
                       tuple(subst_term(a, {}, {q: t}) for a in f.args))
    if isinstance(f, Eq):
        return Eq(subst_term(f.left, {}, {q: t}), subst_term(f.right, {}, {q: t}))
    kids = children(f)
    if not kids:
        return f
    return rebuild(f, [_replace_quoted(c, q, t) for c in kids])
