"""Second-order quantifier elimination in the style of the DLS algorithm.

An existential predicate quantifier ``ex2 P/k: F`` is removed by bringing
``F`` (negation normal form, miniscoped, individual existentials Skolemized)
into one of the Ackermann shapes

    all X: (A(X) -> P(X)) & M      with M negative in P   (positive form)
    all X: (P(X) -> A(X)) & M      with M positive in P   (dual form)

either of which is equivalent to ``M[P := A]``.  Disjunctions that block both
shapes are distributed and the cases handled one at a time.  Universal
predicate quantifiers are treated as ``~ex2 P: ~F``.  Skolem functions must be
turned back into individual quantifiers at the end, otherwise the elimination
is reported as failed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .formula import (
    And, Atom, Eq, Exists, ExistsPred, FALSE, Forall, ForallPred, Formula, Lambda,
    Not, Or, Quoted, TRUE, Var, all_predicate_names, all_variable_names, children,
    conj, disj, free_symbols, free_vars, fresh_name, predicate_arities, rebuild,
    subformulas, substitute,
)
from .normal import (
    NormalFormError, SkolemNames, clausify, polarity_of, simplify, skolemize,
    to_nnf, unskolemize,
)
from .printer import print_formula

MAX_CASES = 256


class NotApplicable(ValueError):
    """A transformation does not apply to the given formula."""


class _Blocked(Exception):
    def __init__(self, reason, subproblem=None):
        super().__init__(reason)
        self.reason = reason
        self.subproblem = subproblem


@dataclass(frozen=True)
class AckermannForm:
    """``ex2 pred: (all params: (definition -> pred(params))) & matrix`` or its dual.

    ``orientation`` is ``"positive"`` (matrix negative in pred) or ``"dual"``
    (implication reversed, matrix positive in pred).  ``skolems`` names the
    Skolem functions introduced while reaching this shape.
    """
    pred: str
    arity: int
    params: tuple
    definition: Formula
    matrix: Formula
    orientation: str = "positive"
    skolems: frozenset = frozenset()

    def formula(self) -> Formula:
        atom = Atom(self.pred, tuple(Var(p) for p in self.params))
        if self.orientation == "positive":
            rule = Or((Not(self.definition), atom))
        else:
            rule = Or((Not(atom), self.definition))
        for p in reversed(self.params):
            rule = Forall(p, rule)
        return ExistsPred(self.pred, self.arity, And((rule, self.matrix)))


@dataclass(frozen=True)
class ElimOutcome:
    status: str
    result: Formula
    trace: tuple = ()
    blocking: Optional[Formula] = None
    reason: str = ""

    @property
    def eliminated(self) -> bool:
        return self.status == "eliminated"


# ------------------------------------------------------------- helpers

def _mentions(f: Formula, pred: str) -> bool:
    return pred in free_symbols(f).predicates


def _arity(f: Formula, pred: str, default=None):
    return predicate_arities(f).get(pred, default)


def _params(arity, avoid):
    out = []
    used = set(avoid)
    for _ in range(arity):
        name = fresh_name("X", used)
        used.add(name)
        out.append(name)
    return tuple(out)


def miniscope(f: Formula) -> Formula:
    """Shrink the scope of individual quantifiers in an NNF formula."""
    kids = children(f)
    if kids:
        f = rebuild(f, [miniscope(c) for c in kids])
    if not isinstance(f, (Forall, Exists)) or isinstance(f.var, Quoted):
        return f
    body, var = f.body, f.var
    if var not in free_vars(body):
        return body
    spread, keep = (And, Or) if isinstance(f, Forall) else (Or, And)
    if isinstance(body, spread):
        return miniscope(spread(tuple(type(f)(var, a) for a in body.args)))
    if isinstance(body, keep):
        inside = [a for a in body.args if var in free_vars(a)]
        outside = [a for a in body.args if var not in free_vars(a)]
        if outside:
            inner = inside[0] if len(inside) == 1 else keep(tuple(inside))
            return keep(tuple(outside) + (miniscope(type(f)(var, inner)),))
    return f


def _conjuncts(f: Formula) -> list:
    return list(f.args) if isinstance(f, And) else [f]


# -------------------------------------------------------------- purity

def purity_delete(f: Formula, pred: str) -> Formula:
    """``ex2 pred: f`` without the quantifier when ``pred`` occurs with one polarity.

    Raises :class:`NotApplicable` when both polarities occur.
    """
    pols = polarity_of(f, pred)
    if not pols:
        return f
    if len(pols) == 2:
        raise NotApplicable("%s occurs with both polarities" % pred)
    arity = _arity(f, pred, 0)
    value = TRUE if pols == {"+"} else FALSE
    return simplify(substitute(f, {pred: Lambda(_params(arity, all_variable_names(f)), value)}))


# ---------------------------------------------------- Ackermann shapes

def to_ackermann_form(f: Formula, pred: str, names: Optional[SkolemNames] = None,
                      orientations=("positive", "dual")) -> AckermannForm:
    """Bring the body ``f`` of ``ex2 pred`` into an Ackermann shape.

    ``f`` is put in negation normal form, miniscoped and Skolemized; conjuncts
    containing ``pred`` with the wrong polarity are split into clauses whose
    ``pred`` literals must then have the definition shape.  Raises
    :class:`NotApplicable` when no orientation is reached.
    """
    if any(isinstance(g, (ForallPred, ExistsPred)) for g in subformulas(f)):
        raise NotApplicable("body still contains predicate quantifiers")
    g = miniscope(simplify(to_nnf(f)))
    smap: dict = {}
    if any(isinstance(h, Exists) for h in subformulas(g)):
        names = names or SkolemNames(_symbol_names(g))
        g = miniscope(simplify(skolemize(g, names=names, skolem_map=smap)))
    return _shape(_conjuncts(g), pred, free_vars(f), orientations, frozenset(smap), arity=_arity(f, pred))


def _shape(conjs, pred, outer, orientations, skolems, arity=None):
    whole = conj(conjs)
    if arity is None:
        arity = _arity(whole, pred)
    if arity is None:
        raise NotApplicable("%s does not occur" % pred)
    avoid = all_variable_names(whole) | set(outer)
    params = _params(arity, avoid)
    reasons = []
    for orient in orientations:
        try:
            definition, matrix = _split_definition(conjs, pred, orient, params, outer)
        except NotApplicable as e:
            reasons.append("%s: %s" % (orient, e))
            continue
        return AckermannForm(pred, arity, params, definition, matrix, orient, skolems)
    raise NotApplicable("; ".join(reasons))


def _split_definition(conjs, pred, orient, params, outer):
    # positive: gather clauses L | P(t); everything else must be negative in P
    wanted = "+" if orient == "positive" else "-"
    allowed = {"-"} if orient == "positive" else {"+"}
    matrix = []
    cases = []
    for c in conjs:
        pols = polarity_of(c, pred)
        if pols <= allowed:
            matrix.append(c)
            continue
        try:
            clauses = clausify(c, max_clauses=2000)
        except NormalFormError as e:
            raise NotApplicable(str(e)) from None
        for cl in clauses:
            hits = [l for l in cl if isinstance(l.atom, Atom) and l.atom.pred == pred]
            side = [l for l in hits if l.positive == (wanted == "+")]
            if not side:
                matrix.append(_clause_formula(cl, outer))
                continue
            if len(hits) != 1:
                raise NotApplicable("clause %s has %d occurrences of %s"
                                    % (print_formula(_clause_formula(cl, outer)), len(hits), pred))
            lit = side[0]
            rest = [l for l in cl if l is not lit]
            cases.append((lit.atom.args, rest, _clause_vars(cl, outer)))
    if not cases:
        raise NotApplicable("no definition clause for %s" % pred)
    parts = []
    for args, rest, ys in cases:
        eqs = [Eq(Var(p), t) for p, t in zip(params, args)]
        if orient == "positive":
            body = conj(eqs + [l.negate().formula() for l in rest])
            for y in reversed(ys):
                body = Exists(y, body)
        else:
            body = disj([Not(e) for e in eqs] + [l.formula() for l in rest])
            for y in reversed(ys):
                body = Forall(y, body)
        parts.append(body)
    definition = simplify(disj(parts) if orient == "positive" else conj(parts))
    return definition, conj(matrix)


def _clause_vars(cl, outer):
    names: set = set()
    for l in cl:
        names |= free_vars(l.atom)
    return sorted(names - set(outer))


def _clause_formula(cl, outer):
    body = disj(l.formula() for l in cl)
    for v in reversed(_clause_vars(cl, outer)):
        body = Forall(v, body)
    return body


def apply_ackermann(af: AckermannForm) -> Formula:
    """The matrix with every ``pred(t)`` replaced by ``definition{params := t}``."""
    if _mentions(af.definition, af.pred):
        raise ValueError("definition mentions %s" % af.pred)
    bad = {"+"} if af.orientation == "positive" else {"-"}
    if polarity_of(af.matrix, af.pred) & bad:
        raise ValueError("matrix has the wrong polarity of %s" % af.pred)
    return substitute(af.matrix, {af.pred: Lambda(af.params, af.definition)})


# ----------------------------------------------------------- eliminate

def _symbol_names(f: Formula) -> set:
    fs = free_symbols(f)
    return (set(fs.constants) | {n for n, _ in fs.functions} | all_predicate_names(f)
            | {q.base for q in fs.quoted})


class _Eliminator:
    def __init__(self, f):
        self.names = SkolemNames(_symbol_names(f))
        self.trace: list = []
        self.cases = 0

    def log(self, text):
        self.trace.append(text)

    def walk(self, f):
        if isinstance(f, (ForallPred, ExistsPred)):
            body = self.walk(f.body)
            if isinstance(f, ExistsPred):
                return self.exists(f.pred, f.arity, body)
            self.log("all2 %s/%d handled as ~ex2 %s/%d ~" % (f.pred, f.arity, f.pred, f.arity))
            return simplify(to_nnf(Not(self.exists(f.pred, f.arity, Not(body)))))
        kids = children(f)
        if not kids:
            return f
        return rebuild(f, [self.walk(c) for c in kids])

    def exists(self, pred, arity, body):
        self.log("eliminate ex2 %s/%d: %s" % (pred, arity, print_formula(body)))
        if any(isinstance(g, (Forall, Exists)) and isinstance(g.var, Quoted) for g in subformulas(body)):
            raise _Blocked("quantified quoted constants are not supported", body)
        g = miniscope(simplify(to_nnf(body)))
        if not _mentions(g, pred):
            self.log("%s does not occur" % pred)
            return g
        try:
            out = purity_delete(g, pred)
            self.log("purity deletion of %s: %s" % (pred, print_formula(out)))
            return out
        except NotApplicable:
            pass
        smap: dict = {}
        outer = free_vars(g)
        if any(isinstance(h, Exists) for h in subformulas(g)):
            g = skolemize(g, names=self.names, skolem_map=smap)
            g = miniscope(simplify(g))
            self.log("skolemized: %s" % print_formula(g))
        result = self.solve(g, pred, arity, outer, frozenset(smap))
        if smap:
            result, ok = unskolemize(result, set(smap))
            if not ok:
                raise _Blocked("un-Skolemization failed", result)
            self.log("unskolemized: %s" % print_formula(result))
        result = simplify(result)
        self.log("result for %s: %s" % (pred, print_formula(result)))
        return result

    def solve(self, g, pred, arity, outer, skolems):
        self.cases += 1
        if self.cases > MAX_CASES:
            raise _Blocked("too many cases", g)
        g = simplify(g)
        if not _mentions(g, pred):
            return g
        if isinstance(g, Or):
            self.log("case split on %d disjuncts" % len(g.args))
            return simplify(disj(self.solve(d, pred, arity, outer, skolems) for d in g.args))
        try:
            out = purity_delete(g, pred)
            self.log("purity deletion of %s: %s" % (pred, print_formula(out)))
            return out
        except NotApplicable:
            pass
        conjs = _conjuncts(g)
        try:
            af = _shape(conjs, pred, outer, ("positive", "dual"), skolems, arity)
        except NotApplicable as e:
            reason = str(e)
        else:
            self.log("%s Ackermann form, %s(%s) := %s" % (
                af.orientation, pred, ",".join(af.params), print_formula(af.definition)))
            return simplify(apply_ackermann(af))
        for i, c in enumerate(conjs):
            if isinstance(c, Or) and _mentions(c, pred):
                self.log("distributing %s" % print_formula(c))
                branches = [conj(conjs[:i] + [d] + conjs[i + 1:]) for d in c.args]
                return simplify(disj(self.solve(b, pred, arity, outer, skolems) for b in branches))
        raise _Blocked("no Ackermann form for %s (%s)" % (pred, reason), g)


def eliminate(f: Formula) -> ElimOutcome:
    """Remove every predicate quantifier of ``f``, innermost first."""
    e = _Eliminator(f)
    try:
        result = e.walk(f)
    except _Blocked as b:
        e.log("failed: %s" % b.reason)
        return ElimOutcome("failed", f, tuple(e.trace), b.subproblem, b.reason)
    except NotApplicable as b:
        e.log("failed: %s" % b)
        return ElimOutcome("failed", f, tuple(e.trace), None, str(b))
    result = tidy_binders(miniscope(simplify(result)))
    if any(isinstance(g, (ForallPred, ExistsPred)) for g in subformulas(result)):
        return ElimOutcome("failed", f, tuple(e.trace), result, "predicate quantifier left")
    return ElimOutcome("eliminated", result, tuple(e.trace))


_NAMES = ("X", "Y", "Z", "U", "W")


def tidy_binders(f: Formula) -> Formula:
    """Rename individual binders to X, Y, Z, U, W, X1, ... in order of appearance."""
    avoid = set(free_vars(f)) | all_variable_names(f)
    supply = iter(_binder_names())

    def next_name():
        while True:
            n = next(supply)
            if n not in avoid:
                return n

    def walk(g):
        if isinstance(g, (Forall, Exists)) and isinstance(g.var, str):
            new = next_name()
            body = substitute(g.body, {Var(g.var): Var(new)}) if new != g.var else g.body
            return type(g)(new, walk(body))
        kids = children(g)
        if not kids:
            return g
        return rebuild(g, [walk(c) for c in kids])

    return walk(f)


def _binder_names():
    yield from _NAMES
    k = 1
    while True:
        for n in _NAMES:
            yield "%s%d" % (n, k)
        k += 1


def eliminated_predicates(f: Formula) -> set:
    return {g.pred for g in subformulas(f) if isinstance(g, (ForallPred, ExistsPred))}
