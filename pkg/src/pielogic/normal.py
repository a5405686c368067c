"""Normal forms: negation normal form, Skolemization, clause form, simplification
and un-Skolemization."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .formula import (
    FALSE, TRUE, And, App, Atom, Const, Eq, Exists, ExistsPred, Falsity, Forall,
    ForallPred, Formula, Iff, Implies, MacroCall, Not, Or, Quoted, Truth, Var,
    all_predicate_names, all_variable_names, children, conj, disj, fresh_name, free_symbols, free_vars,
    rebuild, rename_quoted_binders, subformulas, substitute, term_vars,
)


class NormalFormError(ValueError):
    pass


# ------------------------------------------------------------------- NNF

def to_nnf(f: Formula) -> Formula:
    """Push negations to atoms and remove implications and biconditionals."""
    return _nnf(f, True)


def _nnf(f, pos):
    if isinstance(f, MacroCall):
        raise NormalFormError("unexpanded macro call %s" % f.name)
    if isinstance(f, Truth):
        return TRUE if pos else FALSE
    if isinstance(f, Falsity):
        return FALSE if pos else TRUE
    if isinstance(f, (Atom, Eq)):
        return f if pos else Not(f)
    if isinstance(f, Not):
        return _nnf(f.arg, not pos)
    if isinstance(f, (And, Or)):
        is_and = isinstance(f, And) == pos
        parts = [_nnf(a, pos) for a in f.args]
        return _flat(And if is_and else Or, parts)
    if isinstance(f, Implies):
        if pos:
            return _flat(Or, [_nnf(f.left, False), _nnf(f.right, True)])
        return _flat(And, [_nnf(f.left, True), _nnf(f.right, False)])
    if isinstance(f, Iff):
        a, b = f.left, f.right
        if pos:
            return _flat(And, [_flat(Or, [_nnf(a, False), _nnf(b, True)]),
                               _flat(Or, [_nnf(a, True), _nnf(b, False)])])
        return _flat(And, [_flat(Or, [_nnf(a, True), _nnf(b, True)]),
                           _flat(Or, [_nnf(a, False), _nnf(b, False)])])
    if isinstance(f, (Forall, Exists)):
        kind = type(f) if pos else (Exists if isinstance(f, Forall) else Forall)
        return kind(f.var, _nnf(f.body, pos))
    if isinstance(f, (ForallPred, ExistsPred)):
        if pos:
            kind = type(f)
        else:
            kind = ExistsPred if isinstance(f, ForallPred) else ForallPred
        return kind(f.pred, f.arity, _nnf(f.body, pos))
    raise TypeError("not a formula: %r" % (f,))


def _flat(kind, parts):
    out = []
    for p in parts:
        if isinstance(p, kind):
            out.extend(p.args)
        else:
            out.append(p)
    return out[0] if len(out) == 1 else kind(tuple(out))


def is_nnf(f: Formula) -> bool:
    for g in subformulas(f):
        if isinstance(g, (Implies, Iff, MacroCall)):
            return False
        if isinstance(g, Not) and not isinstance(g.arg, (Atom, Eq)):
            return False
    return True


def polarity_of(f: Formula, pred: str) -> set:
    """Polarities ('+', '-') with which free ``pred`` occurs in ``f``."""
    found = set()

    def walk(g, pos):
        if isinstance(g, Atom):
            if g.pred == pred:
                found.add("+" if pos else "-")
        elif isinstance(g, Not):
            walk(g.arg, not pos)
        elif isinstance(g, Implies):
            walk(g.left, not pos)
            walk(g.right, pos)
        elif isinstance(g, Iff):
            for c in (g.left, g.right):
                walk(c, pos)
                walk(c, not pos)
        elif isinstance(g, (ForallPred, ExistsPred)) and g.pred == pred:
            return
        elif isinstance(g, (Forall, Exists)) and isinstance(g.var, Quoted) and g.var.base == pred:
            walk(g.body, pos)
        else:
            for c in children(g):
                walk(c, pos)
        # quoted constants are individuals and carry no polarity

    walk(f, True)
    return found


# ---------------------------------------------------------- Skolemization

class SkolemNames:
    """Supply of fresh Skolem function names avoiding a given set."""

    def __init__(self, avoid=(), prefix: str = "sk"):
        self.avoid = set(avoid)
        self.prefix = prefix
        self.counter = itertools.count(1)

    def fresh(self) -> str:
        while True:
            name = "%s%d" % (self.prefix, next(self.counter))
            if name not in self.avoid:
                self.avoid.add(name)
                return name


def _symbol_names(f: Formula) -> set:
    fs = free_symbols(f)
    return set(fs.constants) | {n for n, _ in fs.functions} | set(fs.predicates)


def skolemize(f: Formula, names: Optional[SkolemNames] = None,
              skolem_map: Optional[dict] = None) -> Formula:
    """Replace existential individual quantifiers of an NNF formula by Skolem terms.

    A Skolem term takes as arguments the governing universal variables that
    occur free in the quantified subformula, in binder order.
    """
    if any(isinstance(g, (ForallPred, ExistsPred)) for g in subformulas(f)):
        raise NormalFormError("skolemize expects a formula without predicate quantifiers")
    if not is_nnf(f):
        f = to_nnf(f)
    f = rename_quoted_binders(f)
    names = names or SkolemNames(_symbol_names(f))
    if skolem_map is None:
        skolem_map = {}

    def walk(g, universals):
        if isinstance(g, Forall):
            return Forall(g.var, walk(g.body, universals + (g.var,)))
        if isinstance(g, Exists):
            fv = free_vars(g)
            args = tuple(Var(u) for u in _dedupe_last(universals) if u in fv)
            name = names.fresh()
            skolem_map[name] = (g.var, len(args))
            term = App(name, args) if args else Const(name)
            return walk(substitute(g.body, {Var(g.var): term}), universals)
        kids = children(g)
        if not kids:
            return g
        return rebuild(g, [walk(c, universals) for c in kids])

    return walk(f, ())


def _dedupe_last(names):
    # an inner binder shadows an outer one with the same name
    seen = set()
    out = []
    for n in reversed(names):
        if n not in seen:
            seen.add(n)
            out.append(n)
    return list(reversed(out))


# ------------------------------------------------------------- clauses

@dataclass(frozen=True)
class Literal:
    positive: bool
    atom: Formula  # Atom or Eq

    def negate(self) -> "Literal":
        return Literal(not self.positive, self.atom)

    def formula(self) -> Formula:
        return self.atom if self.positive else Not(self.atom)

    def __str__(self):
        return str(self.formula())


@dataclass(frozen=True)
class ClauseSet:
    clauses: tuple
    skolem_map: dict = field(default_factory=dict, compare=False)

    def __len__(self):
        return len(self.clauses)

    def __iter__(self):
        return iter(self.clauses)

    def as_sets(self) -> set:
        return {frozenset(str(l) for l in c) for c in self.clauses}

    def formula(self) -> Formula:
        """The universal closure of the clause conjunction."""
        parts = []
        for c in self.clauses:
            body = disj(l.formula() for l in c)
            names = sorted(set().union(*[term_vars_of(l.atom) for l in c])) if c else []
            for n in reversed(names):
                body = Forall(n, body)
            parts.append(body)
        return conj(parts)


def term_vars_of(f: Formula) -> set:
    names: set = set()
    if isinstance(f, Atom):
        for a in f.args:
            term_vars(a, names)
    elif isinstance(f, Eq):
        term_vars(f.left, names)
        term_vars(f.right, names)
    return names


def rename_apart(f: Formula) -> Formula:
    """Give every individual binder a distinct name."""
    used = set(all_variable_names(f))
    seen = set()

    def walk(g):
        if isinstance(g, (Forall, Exists)) and isinstance(g.var, str):
            body = g.body
            var = g.var
            if var in seen:
                new = fresh_name(var, used)
                used.add(new)
                body = substitute(body, {Var(var): Var(new)})
                var = new
            seen.add(var)
            return type(g)(var, walk(body))
        kids = children(g)
        if not kids:
            return g
        return rebuild(g, [walk(c) for c in kids])

    return walk(f)


def clausify(f: Formula, skolem_map: Optional[dict] = None,
             max_clauses: int = 200000, rename_above: Optional[int] = None,
             names: Optional["SkolemNames"] = None) -> ClauseSet:
    """Clause form of a Skolemized NNF formula.

    Plain distribution by default.  With ``rename_above`` set, a disjunction
    whose distribution would exceed that many clauses gets its largest
    operands replaced by fresh atoms ``d(free vars)`` together with the
    clauses of ``~d | operand``; this preserves satisfiability.
    """
    if not is_nnf(f):
        f = to_nnf(f)
    if any(isinstance(g, Exists) for g in subformulas(f)):
        raise NormalFormError("clausify expects a Skolemized formula")
    f = rename_apart(f)
    if rename_above is not None:
        names = names or SkolemNames(all_predicate_names(f) | free_symbols(f).constants, "def")
        extra: list = []
        clauses = _cnf(f, max_clauses, (rename_above, names, extra))
        clauses = extra + clauses
    else:
        clauses = _cnf(f, max_clauses)
    out = []
    seen = set()
    for c in clauses:
        if c is None:
            continue
        key = frozenset(c)
        if key in seen:
            continue
        seen.add(key)
        out.append(tuple(sorted(c, key=_lit_key)))
    return ClauseSet(tuple(out), dict(skolem_map or {}))


def _lit_key(l: Literal):
    return (str(l.atom), not l.positive)


def _cnf(f, limit, renaming=None):
    """List of clauses (frozensets of literals); tautologies removed."""
    if isinstance(f, Truth):
        return []
    if isinstance(f, Falsity):
        return [frozenset()]
    if isinstance(f, (Atom, Eq)):
        if isinstance(f, Eq) and f.left == f.right:
            return []
        return [frozenset([Literal(True, f)])]
    if isinstance(f, Not):
        a = f.arg
        if isinstance(a, Eq) and a.left == a.right:
            return [frozenset()]
        return [frozenset([Literal(False, a)])]
    if isinstance(f, Forall):
        return _cnf(f.body, limit, renaming)
    if isinstance(f, And):
        out = []
        for a in f.args:
            out.extend(_cnf(a, limit, renaming))
            if len(out) > limit:
                raise NormalFormError("clause form exceeds %d clauses" % limit)
        return out
    if isinstance(f, Or):
        parts = [_cnf(a, limit, renaming) for a in f.args]
        if renaming is not None:
            parts = _rename_operands(f.args, parts, renaming)
        acc = [frozenset()]
        for part in parts:
            new = []
            for c1 in acc:
                for c2 in part:
                    c = c1 | c2
                    if not _tautology(c):
                        new.append(c)
            acc = _subsume_dupes(new)
            if len(acc) > limit:
                raise NormalFormError("clause form exceeds %d clauses" % limit)
        return acc
    raise NormalFormError("unexpected %s in clause form input" % type(f).__name__)


def _rename_operands(operands, parts, renaming):
    bound, names, extra = renaming

    def product():
        n = 1
        for p in parts:
            n *= len(p)
        return n

    parts = list(parts)
    while product() > bound:
        i = max(range(len(parts)), key=lambda j: (len(parts[j]), -j))
        if len(parts[i]) <= 1:
            break
        xs = sorted(free_vars(operands[i]))
        d = Atom(names.fresh(), tuple(Var(x) for x in xs))
        neg = Literal(False, d)
        extra.extend(c | {neg} for c in parts[i])
        parts[i] = [frozenset([Literal(True, d)])]
    return parts


def _tautology(c) -> bool:
    return any(Literal(not l.positive, l.atom) in c for l in c)


def _subsume_dupes(cs):
    seen = set()
    out = []
    for c in cs:
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


def clause_form(f: Formula, names: Optional[SkolemNames] = None) -> ClauseSet:
    """NNF, Skolemization and clausification in one step."""
    smap: dict = {}
    sk = skolemize(to_nnf(f), names=names, skolem_map=smap)
    return clausify(sk, smap)


# ------------------------------------------------------------ simplify

def simplify(f: Formula) -> Formula:
    """Apply the rewrite rules below until nothing changes.

    Truth constants are absorbed, duplicates and double negations removed,
    ``t = t`` becomes true, complementary operands collapse, nested
    connectives of the same kind are flattened, vacuous quantifiers dropped,
    and the one-point rules ``all X: (X != t | F)`` to ``F[t/X]`` and
    ``ex X: (X = t & F)`` to ``F[t/X]`` applied.
    """
    while True:
        g = _simp(f)
        if g == f:
            return g
        f = g


def _simp(f):
    if isinstance(f, (Truth, Falsity, Atom, MacroCall)):
        return f
    if isinstance(f, Eq):
        return TRUE if f.left == f.right else f
    if isinstance(f, Not):
        a = _simp(f.arg)
        if isinstance(a, Truth):
            return FALSE
        if isinstance(a, Falsity):
            return TRUE
        if isinstance(a, Not):
            return a.arg
        return Not(a)
    if isinstance(f, (And, Or)):
        return _simp_junction(type(f), [_simp(a) for a in f.args])
    if isinstance(f, Implies):
        a, b = _simp(f.left), _simp(f.right)
        if isinstance(a, Truth):
            return b
        if isinstance(a, Falsity) or isinstance(b, Truth) or a == b:
            return TRUE
        if isinstance(b, Falsity):
            return _negate(a)
        if _negate(a) == b:
            return b
        return Implies(a, b)
    if isinstance(f, Iff):
        a, b = _simp(f.left), _simp(f.right)
        if a == b:
            return TRUE
        if isinstance(a, Truth):
            return b
        if isinstance(b, Truth):
            return a
        if isinstance(a, Falsity):
            return _negate(b)
        if isinstance(b, Falsity):
            return _negate(a)
        if _negate(a) == b:
            return FALSE
        return Iff(a, b)
    if isinstance(f, (Forall, Exists)):
        body = _simp(f.body)
        if isinstance(f.var, Quoted):
            if f.var not in free_symbols(body).quoted:
                return body
            return type(f)(f.var, body)
        if f.var not in free_vars(body):
            return body
        reduced = _one_point(type(f), f.var, body)
        if reduced is not None:
            return reduced
        return type(f)(f.var, body)
    if isinstance(f, (ForallPred, ExistsPred)):
        body = _simp(f.body)
        fs = free_symbols(body)
        if f.pred not in fs.predicates and not any(q.base == f.pred for q in fs.quoted):
            return body
        return type(f)(f.pred, f.arity, body)
    raise TypeError("not a formula: %r" % (f,))


def _negate(f):
    if isinstance(f, Not):
        return f.arg
    if isinstance(f, Truth):
        return FALSE
    if isinstance(f, Falsity):
        return TRUE
    return Not(f)


def _simp_junction(kind, parts):
    unit, zero = (TRUE, FALSE) if kind is And else (FALSE, TRUE)
    out = []
    seen = set()
    for p in parts:
        items = p.args if isinstance(p, kind) else (p,)
        for q in items:
            if q == zero:
                return zero
            if q == unit or q in seen:
                continue
            seen.add(q)
            out.append(q)
    for q in out:
        if _negate(q) in seen:
            return zero
    if not out:
        return unit
    return out[0] if len(out) == 1 else kind(tuple(out))


def _eq_partner(lit, var):
    """If ``lit`` is ``var = t`` (either way round) with ``var`` not in ``t``, return t."""
    if not isinstance(lit, Eq):
        return None
    for a, b in ((lit.left, lit.right), (lit.right, lit.left)):
        if a == Var(var) and var not in term_vars(b, set()):
            return b
    return None


def _one_point(kind, var, body):
    """One-point rule, looking through a block of same-kind quantifiers."""
    binders = []
    inner = body
    while isinstance(inner, kind) and isinstance(inner.var, str):
        binders.append(inner.var)
        inner = inner.body
    if var in binders:
        return None
    if kind is Forall:
        if isinstance(inner, Implies):
            items = list(inner.left.args) if isinstance(inner.left, And) else [inner.left]
            for i, it in enumerate(items):
                t = _eq_partner(it, var)
                if t is not None and not (term_vars(t, set()) & set(binders)):
                    rest = conj(items[:i] + items[i + 1:])
                    new = Implies(rest, inner.right) if rest != TRUE else inner.right
                    return _rewrap(kind, binders, substitute(new, {Var(var): t}))
            return None
        items = list(inner.args) if isinstance(inner, Or) else [inner]
        for i, it in enumerate(items):
            t = _eq_partner(it.arg, var) if isinstance(it, Not) else None
            if t is not None and not (term_vars(t, set()) & set(binders)):
                rest = disj(items[:i] + items[i + 1:])
                return _rewrap(kind, binders, substitute(rest, {Var(var): t}))
        return None
    items = list(inner.args) if isinstance(inner, And) else [inner]
    for i, it in enumerate(items):
        t = _eq_partner(it, var)
        if t is not None and not (term_vars(t, set()) & set(binders)):
            rest = conj(items[:i] + items[i + 1:])
            return _rewrap(kind, binders, substitute(rest, {Var(var): t}))
    return None


def _rewrap(kind, binders, body):
    for b in reversed(binders):
        body = kind(b, body)
    return body


# --------------------------------------------------- un-Skolemization

def unskolemize(f: Formula, skolems=None):
    """Re-bind Skolem terms as existential quantifiers.

    Returns ``(formula, ok)``.  ``f`` is read as existentially closed over the
    Skolem functions (all function symbols when ``skolems`` is None).  Each
    function must occur with one argument list of distinct variables, all its
    occurrences below the binder of its last argument.  The existential is
    placed directly below that binder; when that is not equivalence
    preserving, ``f`` is returned unchanged with ``ok`` false.
    """
    g = rename_apart(to_nnf(f))
    occurrences = _skolem_occurrences(g, skolems)
    if not occurrences:
        return f, True
    avoid = set(all_variable_names(g))
    # constants go to the root
    order = sorted(occurrences, key=lambda name: (len(next(iter(occurrences[name]))), name))
    for name in order:
        arglists = occurrences[name]
        if len(arglists) != 1:
            return f, False
        args = next(iter(arglists))
        if not all(isinstance(a, Var) for a in args) or len(set(args)) != len(args):
            return f, False
        new = fresh_name("X", avoid)
        avoid.add(new)
        placed = _place(g, name, args, new)
        if placed is None:
            return f, False
        g = placed
    return g, True


def _skolem_occurrences(f, skolems) -> dict:
    occ: dict = {}

    def term(t):
        if isinstance(t, App):
            if skolems is None or t.fn in skolems:
                occ.setdefault(t.fn, set()).add(t.args)
            for a in t.args:
                term(a)
        elif isinstance(t, Const) and skolems is not None and t.name in skolems:
            occ.setdefault(t.name, set()).add(())

    for g in subformulas(f):
        if isinstance(g, Atom):
            for a in g.args:
                term(a)
        elif isinstance(g, Eq):
            term(g.left)
            term(g.right)
    return occ


def _replace_fn(f, name, arity, var):
    def term(t):
        if isinstance(t, App):
            if t.fn == name and len(t.args) == arity:
                return Var(var)
            return App(t.fn, tuple(term(a) for a in t.args))
        if isinstance(t, Const) and arity == 0 and t.name == name:
            return Var(var)
        return t

    def walk(g):
        if isinstance(g, Atom):
            return Atom(g.pred, tuple(term(a) for a in g.args))
        if isinstance(g, Eq):
            return Eq(term(g.left), term(g.right))
        kids = children(g)
        if not kids:
            return g
        return rebuild(g, [walk(c) for c in kids])

    return walk(f)


def _mentions(f, name) -> bool:
    return any(n == name for n, _ in free_symbols(f).functions) or name in free_symbols(f).constants


def _place(f, name, args, new):
    arity = len(args)
    if not args:
        return Exists(new, _replace_fn(f, name, 0, new))
    argnames = {a.name for a in args}

    def walk(g, path):
        """``path``: list of (kind, var) binders above ``g``."""
        if isinstance(g, (Forall, Exists)) and isinstance(g.var, str):
            inner_path = path + [(type(g), g.var)]
            bound = {v for _, v in inner_path}
            if argnames <= bound and g.var in argnames and _mentions(g.body, name):
                # g is the innermost argument binder on this path
                if _innermost_ok(inner_path, argnames, g.body):
                    return type(g)(g.var, Exists(new, _replace_fn(g.body, name, arity, new)))
                raise _PlaceFailure()
            return type(g)(g.var, walk(g.body, inner_path))
        kids = children(g)
        if not kids:
            return g
        return rebuild(g, [walk(c, path) if _mentions(c, name) else c for c in kids])

    try:
        out = walk(f, [])
    except _PlaceFailure:
        return None
    if _mentions(out, name):
        return None
    return out


class _PlaceFailure(Exception):
    pass


def _innermost_ok(path, argnames, body) -> bool:
    # the nearest binder of each argument name must be universal, and no other
    # universal variable above the placement point may occur in its scope
    nearest = {}
    for kind, v in path:
        nearest[v] = kind
    if any(nearest[a] is not Forall for a in argnames):
        return False
    fv = free_vars(body)
    for kind, v in path:
        if kind is Forall and v not in argnames and v in fv:
            return False
    return True


# --------------------------------------------------------- presentation

def to_implicational(f: Formula) -> Formula:
    """Rewrite disjunctions with negated operands as implications for display."""
    if isinstance(f, Or):
        parts = [to_implicational(a) for a in f.args]
        negs = [p.arg for p in parts if isinstance(p, Not) and not isinstance(p.arg, Eq)]
        rest = [p for p in parts if not (isinstance(p, Not) and not isinstance(p.arg, Eq))]
        if negs and rest:
            return Implies(conj(negs), disj(rest))
        return disj(parts)
    kids = children(f)
    if not kids:
        return f
    return rebuild(f, [to_implicational(c) for c in kids])
