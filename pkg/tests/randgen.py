"""Random formulas and exhaustive interpretations shared by the tests."""

import itertools
import random

from pielogic.formula import (
    FALSE, TRUE, And, App, Atom, Const, Eq, Exists, ExistsPred, Forall, ForallPred,
    Iff, Implies, Not, Or, Quoted, Var,
)
from pielogic.models import Interpretation

# ------------------------------------------------------------ syntax trees

_PREDS = [("p", 1), ("q", 2), ("s", 0), ("holds", 3), ("Pv", 1)]
_CONSTS = ["a", "b", "c0", "v"]
_FUNCS = [("f", 1), ("g2", 2)]
_VARS = ["X", "Y", "Z", "W1"]


def random_term(rng, depth=2, bound=()):
    roll = rng.random()
    if bound and roll < 0.4:
        return Var(rng.choice(bound))
    if roll < 0.55:
        return Const(rng.choice(_CONSTS))
    if roll < 0.7:
        return Quoted(rng.choice(["p", "pos", "Q"]), rng.random() < 0.5)
    if depth > 0 and roll < 0.85:
        fn, k = rng.choice(_FUNCS)
        return App(fn, tuple(random_term(rng, depth - 1, bound) for _ in range(k)))
    return Var(rng.choice(_VARS))


def random_ast(rng, depth=4, bound=(), preds=None):
    """Any syntax tree the parser can produce, arities kept consistent per name."""
    preds = dict(_PREDS) if preds is None else preds
    if depth <= 0 or rng.random() < 0.15:
        roll = rng.random()
        if roll < 0.08:
            return TRUE if rng.random() < 0.5 else FALSE
        if roll < 0.3:
            return Eq(random_term(rng, 1, bound), random_term(rng, 1, bound))
        name = rng.choice(sorted(preds))
        return Atom(name, tuple(random_term(rng, 1, bound) for _ in range(preds[name])))
    kind = rng.randrange(9)
    sub = lambda: random_ast(rng, depth - 1, bound, preds)
    if kind == 0:
        return Not(sub())
    if kind == 1:
        return And(tuple(sub() for _ in range(rng.randint(2, 3))))
    if kind == 2:
        return Or(tuple(sub() for _ in range(rng.randint(2, 3))))
    if kind == 3:
        return Implies(sub(), sub())
    if kind == 4:
        return Iff(sub(), sub())
    if kind in (5, 6):
        var = rng.choice(_VARS) if rng.random() < 0.85 else Quoted(rng.choice(["p", "Q"]), False)
        names = bound + ((var,) if isinstance(var, str) else ())
        body = random_ast(rng, depth - 1, names, preds)
        return (Forall if kind == 5 else Exists)(var, body)
    if kind == 7:
        name, k = rng.choice([("P", 1), ("R", 2), ("p", 2)])
        inner = dict(preds)
        inner[name] = k
        body = random_ast(rng, depth - 1, bound, inner)
        return (ForallPred if rng.random() < 0.5 else ExistsPred)(name, k, body)
    return Not(Eq(random_term(rng, 1, bound), random_term(rng, 1, bound)))


# ---------------------------------------------- closed first-order formulas

FO_PREDS = {"p": 1, "q": 2, "s": 0}
FO_CONSTS = ("a", "b")


def _fo_atom(rng, bound, preds, consts):
    terms = [Var(x) for x in bound] + [Const(c) for c in consts]
    if rng.random() < 0.25:
        return Eq(rng.choice(terms), rng.choice(terms))
    name = rng.choice(sorted(preds))
    return Atom(name, tuple(rng.choice(terms) for _ in range(preds[name])))


def random_fo(rng, depth=4, bound=(), preds=FO_PREDS, consts=FO_CONSTS):
    """A closed first-order formula without function symbols."""
    if depth <= 0 or rng.random() < 0.2:
        if rng.random() < 0.05:
            return TRUE if rng.random() < 0.5 else FALSE
        return _fo_atom(rng, bound, preds, consts)
    kind = rng.randrange(7)
    sub = lambda: random_fo(rng, depth - 1, bound, preds, consts)
    if kind == 0:
        return Not(sub())
    if kind == 1:
        return And((sub(), sub()))
    if kind == 2:
        return Or((sub(), sub()))
    if kind == 3:
        return Implies(sub(), sub())
    if kind == 4:
        return Iff(sub(), sub())
    var = "X%d" % len(bound)
    body = random_fo(rng, depth - 1, bound + (var,), preds, consts)
    return (Forall if kind == 5 else Exists)(var, body)


def random_nnf(rng, depth, bound, preds, consts, polarity_of=None):
    """Negation normal form; ``polarity_of`` maps predicate names to the only
    polarity (True positive) they may take."""
    polarity_of = polarity_of or {}
    if depth <= 0 or rng.random() < 0.25:
        a = _fo_atom(rng, bound, preds, consts)
        pos = rng.random() < 0.5
        if isinstance(a, Atom) and a.pred in polarity_of:
            pos = polarity_of[a.pred]
        return a if pos else Not(a)
    kind = rng.randrange(4)
    sub = lambda b=bound: random_nnf(rng, depth - 1, b, preds, consts, polarity_of)
    if kind == 0:
        return And((sub(), sub()))
    if kind == 1:
        return Or((sub(), sub()))
    var = "Y%d" % len(bound)
    return (Forall if kind == 2 else Exists)(var, sub(bound + (var,)))


# --------------------------------------------------------- interpretations

def _relations(n, k):
    tuples = list(itertools.product(range(1, n + 1), repeat=k))
    for bits in range(1 << len(tuples)):
        yield frozenset(t for j, t in enumerate(tuples) if bits >> j & 1)


def _tables(n, k):
    keys = list(itertools.product(range(1, n + 1), repeat=k))
    for values in itertools.product(range(1, n + 1), repeat=len(keys)):
        yield dict(zip(keys, values))


def interpretations(n, preds, consts=(), funcs=None):
    """Every interpretation of size ``n`` for the given predicate arities,
    constants and function arities."""
    names = sorted(preds)
    fnames = sorted(funcs or {})
    for cvals in itertools.product(range(1, n + 1), repeat=len(consts)):
        cmap = dict(zip(consts, cvals))
        for tables in itertools.product(*(list(_tables(n, funcs[f])) for f in fnames)):
            fmap = dict(zip(fnames, tables))
            for rels in itertools.product(*(list(_relations(n, preds[p])) for p in names)):
                yield Interpretation(n, cmap, fmap, dict(zip(names, rels)))


def rng_for(seed):
    return random.Random(seed)
