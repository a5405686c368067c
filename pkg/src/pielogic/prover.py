"""Validity checking by a connection tableau over the clause form of the negation.

The search follows the lean connection calculus: start from an all-negative
clause, close each open literal by a lemma, a reduction against a complementary
ancestor on its path, or an extension with a fresh copy of a clause containing
a complementary literal.  Path length is bounded and the bound is raised by
iterative deepening.  Equality is handled by adding its axioms.

Predicate quantifiers are removed beforehand by :func:`ground_so_quantifiers`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .formula import (
    FALSE, TRUE, And, App, Atom, Const, Eq, Exists, ExistsPred, Forall, ForallPred,
    Formula, Lambda, Not, Or, Quoted, Signature, Var, all_predicate_names,
    all_variable_names, children, conj, disj, fresh_name, free_symbols, free_vars,
    neq, predicate_arities, rebuild, subformulas, substitute,
)
from .normal import SkolemNames, clausify, skolemize, to_nnf


class GroundingError(ValueError):
    """A predicate quantifier pattern the instantiation scheme cannot handle."""


@dataclass(frozen=True)
class Budget:
    max_seconds: float = 10.0
    max_depth: int = 12
    max_inferences: int = 5_000_000

    def __post_init__(self):
        if self.max_seconds <= 0 or self.max_depth <= 0 or self.max_inferences <= 0:
            raise ValueError("budget limits must be positive")


@dataclass(frozen=True)
class ProofStep:
    """One closing step of the tableau.

    ``kind`` is start, extension, reduction or lemma.  ``literal`` is the id
    of the open literal being closed (None for start); ``clause`` indexes the
    clause list and ``instance`` is its instantiated copy; ``connected`` is the
    index of the literal of the instance used for the connection, or for
    reduction and lemma steps the id of the literal connected with.  ``ids``
    are the ids assigned to the new open literals.
    """
    kind: str
    literal: Optional[int]
    clause: Optional[int] = None
    instance: tuple = ()
    connected: Optional[int] = None
    ids: tuple = ()


@dataclass(frozen=True)
class CaseProof:
    """Closed tableau for one case of the refutation."""
    clauses: tuple
    steps: tuple


@dataclass(frozen=True)
class ProofResult:
    """Outcome of a validity check.

    The negation is refuted case by case; ``clauses`` holds the clause list of
    every case and ``trace`` one :class:`CaseProof` per case when proved.
    """
    verdict: str                 # proved | exhausted | timeout
    inferences: int = 0
    depth: int = 0
    elapsed: float = 0.0
    trace: Optional[tuple] = None
    clauses: tuple = ()

    @property
    def proved(self) -> bool:
        return self.verdict == "proved"

    def __post_init__(self):
        if self.verdict == "proved" and self.trace is None:
            raise ValueError("a proof needs a trace")


# -------------------------------------------------- predicate quantifiers

def ground_so_quantifiers(f: Formula, names=None) -> Formula:
    """Remove predicate quantifiers for the purpose of proving ``f`` valid.

    Works on the negation normal form of ``f``.  A universal predicate
    quantifier there is replaced by a fresh predicate (with extra arguments
    for enclosing existential individual variables).  An existential one is
    replaced by the disjunction of its instances with every same-arity
    predicate symbol of the formula and with the always-true and always-false
    relations.  Existentials whose bodies hold further predicate quantifiers are
    expanded first, the remaining ones last, so they see all fresh symbols.
    The result is first-order and its validity implies that of ``f``.
    """
    g = to_nnf(f)
    if not any(isinstance(h, (ForallPred, ExistsPred)) for h in subformulas(g)):
        return g
    used = set(all_predicate_names(g)) | set(all_variable_names(g))
    used |= {c for c in free_symbols(g).constants}
    while True:
        g, changed = _skolemize_pred_universals(g, used)
        if changed:
            continue
        nested = _outer_nested_exists(g)
        if nested is not None:
            g = _expand_exists(g, nested)
            continue
        if any(isinstance(h, ExistsPred) for h in subformulas(g)):
            g = _expand_exists(g, None)
            continue
        return g


def _fresh_pred(base: str, used: set) -> str:
    stem = base.lower().lstrip("_") or "q"
    if not stem[0].isalpha():
        stem = "q" + stem
    name = fresh_name(stem, used)
    used.add(name)
    return name


def _skolemize_pred_universals(g, used):
    changed = False

    def walk(h, ex_vars):
        nonlocal changed
        if isinstance(h, ExistsPred):
            return h
        if isinstance(h, ForallPred):
            changed = True
            body = h.body
            deps = [v for v in ex_vars if v in free_vars(body)]
            new = _fresh_pred(h.pred, used)
            if deps:
                if any(q.base == h.pred for q in free_symbols(body).quoted):
                    raise GroundingError(
                        "quoted constant of %s would depend on %s" % (h.pred, ", ".join(deps)))
                params = tuple(fresh_name("A", set(deps) | all_variable_names(body) | {"A"})
                               + str(i) for i in range(h.arity))
                lam = Lambda(params, Atom(new, tuple(Var(v) for v in deps) + tuple(Var(p) for p in params)))
                body = substitute(body, {h.pred: lam})
            else:
                body = substitute(body, {h.pred: new})
            return walk(body, ex_vars)
        if isinstance(h, Exists):
            if isinstance(h.var, Quoted):
                return Exists(h.var, walk(h.body, ex_vars))
            return Exists(h.var, walk(h.body, ex_vars + [h.var]))
        kids = children(h)
        if not kids:
            return h
        return rebuild(h, [walk(c, ex_vars) for c in kids])

    out = walk(g, [])
    return out, changed


def _outer_nested_exists(g):
    """The first outermost ExistsPred whose body contains a predicate quantifier."""
    for h in subformulas(g):
        if isinstance(h, ExistsPred) and any(
                isinstance(k, (ForallPred, ExistsPred)) for k in subformulas(h.body)):
            return h
    return None


def _expand_exists(g, target):
    """Expand ``target`` (or every ExistsPred when None) into a disjunction of instances."""
    arities = predicate_arities(g)

    def instances(h):
        cands = sorted(p for p, n in arities.items() if n == h.arity)
        quoted_free = any(q.base == h.pred for q in free_symbols(h.body).quoted)
        out = [substitute(h.body, {h.pred: c}) for c in cands]
        if not quoted_free:
            params = tuple("A%d" % i for i in range(1, h.arity + 1))
            out.append(substitute(h.body, {h.pred: Lambda(params, TRUE)}))
            out.append(substitute(h.body, {h.pred: Lambda(params, FALSE)}))
        return disj(out)

    def walk(h):
        if isinstance(h, ExistsPred) and (target is None or h is target):
            if target is None:
                # innermost first keeps the instances first-order
                inner = walk(h.body)
                return instances(ExistsPred(h.pred, h.arity, inner))
            return instances(h)
        kids = children(h)
        if not kids:
            return h
        return rebuild(h, [walk(c) for c in kids])

    return walk(g)


# ------------------------------------------------------------ equality

def equality_axioms(sig: Signature) -> list:
    """Reflexivity, symmetry, transitivity and one congruence axiom per symbol."""
    X, Y, Z = Var("X"), Var("Y"), Var("Z")
    axioms = [
        Forall("X", Eq(X, X)),
        Forall("X", Forall("Y", Or((neq(X, Y), Eq(Y, X))))),
        Forall("X", Forall("Y", Forall("Z", Or((neq(X, Y), neq(Y, Z), Eq(X, Z)))))),
    ]
    # one substitution axiom per argument position
    X, Y = Var("X"), Var("Y")
    for p, n in sorted(sig.predicates.items()):
        for i in range(n):
            zs = [Var("Z%d" % j) for j in range(1, n + 1)]
            left, right = list(zs), list(zs)
            left[i], right[i] = X, Y
            body = Or((neq(X, Y), Not(Atom(p, tuple(left))), Atom(p, tuple(right))))
            axioms.append(_close(body, [X, Y] + zs[:i] + zs[i + 1:]))
    for fn, n in sorted(sig.functions.items()):
        for i in range(n):
            zs = [Var("Z%d" % j) for j in range(1, n + 1)]
            left, right = list(zs), list(zs)
            left[i], right[i] = X, Y
            body = Or((neq(X, Y), Eq(App(fn, tuple(left)), App(fn, tuple(right)))))
            axioms.append(_close(body, [X, Y] + zs[:i] + zs[i + 1:]))
    return axioms


def _close(body, vs):
    for v in reversed(vs):
        body = Forall(v.name, body)
    return body


# -------------------------------------------------- internal clause form

def _term(t, vmap):
    if isinstance(t, Var):
        if t.name not in vmap:
            vmap[t.name] = len(vmap)
        return vmap[t.name]
    if isinstance(t, Const):
        return t.name
    if isinstance(t, Quoted):
        return str(t)
    if isinstance(t, App):
        return (t.fn,) + tuple(_term(a, vmap) for a in t.args)
    raise TypeError(t)


def compile_clauses(cs) -> list:
    """Convert a ClauseSet into prover clauses ``(nvars, ((sign, pred, args), ...))``."""
    out = []
    for c in cs:
        vmap: dict = {}
        lits = []
        for l in c:
            a = l.atom
            if isinstance(a, Eq):
                lits.append((l.positive, "=", (_term(a.left, vmap), _term(a.right, vmap))))
            else:
                lits.append((l.positive, a.pred, tuple(_term(x, vmap) for x in a.args)))
        out.append((len(vmap), tuple(lits)))
    return out


def _clause_signature(cs) -> Signature:
    preds: dict = {}
    funcs: dict = {}
    consts: set = set()

    def term(t):
        if isinstance(t, tuple):
            funcs[t[0]] = len(t) - 1
            for a in t[1:]:
                term(a)
        elif isinstance(t, str):
            consts.add(t)

    for _, lits in cs:
        for _, p, args in lits:
            if p != "=":
                preds[p] = len(args)
            for a in args:
                term(a)
    return Signature(preds, funcs, frozenset(consts))


# ------------------------------------------------------------- search

class _Stop(Exception):
    def __init__(self, reason):
        self.reason = reason


class ConnectionProver:
    """Connection tableau search over compiled clauses."""

    def __init__(self, clauses, budget: Budget):
        self.clauses = clauses
        self.budget = budget
        self.bind: list = []
        self.trail: list = []
        self.inferences = 0
        self.index: dict = {}
        order = sorted(range(len(clauses)), key=lambda i: (len(clauses[i][1]), i))
        for ci in order:
            nv, lits = clauses[ci]
            for li, (s, p, _) in enumerate(lits):
                self.index.setdefault((s, p), []).append((ci, li, nv == 0))
        self.steps: list = []
        self.next_id = 0
        self.cut = False
        self.max_inferences = budget.max_inferences

    # -- terms
    def deref(self, t):
        bind = self.bind
        while type(t) is int:
            b = bind[t]
            if b is None:
                return t
            t = b
        return t

    def new_vars(self, n):
        base = len(self.bind)
        self.bind.extend([None] * n)
        return base

    def instantiate(self, ci):
        nv, lits = self.clauses[ci]
        if nv == 0:
            return lits
        base = self.new_vars(nv)

        def copy(t):
            if type(t) is int:
                return t + base
            if type(t) is tuple:
                return (t[0],) + tuple(copy(a) for a in t[1:])
            return t

        return tuple((s, p, tuple(copy(a) for a in args)) for s, p, args in lits)

    def occurs(self, v, t):
        t = self.deref(t)
        if t == v and type(t) is int:
            return True
        if type(t) is tuple:
            return any(self.occurs(v, a) for a in t[1:])
        return False

    def unify(self, a, b):
        a = self.deref(a)
        b = self.deref(b)
        if a is b or (type(a) is type(b) and a == b and type(a) is not tuple):
            return True
        if type(a) is int:
            if self.occurs(a, b):
                return False
            self.bind[a] = b
            self.trail.append(a)
            return True
        if type(b) is int:
            if self.occurs(b, a):
                return False
            self.bind[b] = a
            self.trail.append(b)
            return True
        if type(a) is tuple and type(b) is tuple:
            if a[0] != b[0] or len(a) != len(b):
                return False
            for x, y in zip(a[1:], b[1:]):
                if not self.unify(x, y):
                    return False
            return True
        return False

    def unify_args(self, xs, ys):
        for x, y in zip(xs, ys):
            if not self.unify(x, y):
                return False
        return True

    def undo(self, mark):
        trail, bind = self.trail, self.bind
        while len(trail) > mark:
            bind[trail.pop()] = None

    def identical(self, a, b):
        a = self.deref(a)
        b = self.deref(b)
        if type(a) is tuple and type(b) is tuple:
            return a[0] == b[0] and len(a) == len(b) and all(
                self.identical(x, y) for x, y in zip(a[1:], b[1:]))
        return a == b and type(a) is type(b)

    def same_lit(self, l1, l2):
        return (l1[0] == l2[0] and l1[1] == l2[1]
                and all(self.identical(x, y) for x, y in zip(l1[2], l2[2])))

    def resolve(self, t):
        t = self.deref(t)
        if type(t) is tuple:
            return (t[0],) + tuple(self.resolve(a) for a in t[1:])
        return t

    # -- budget
    def tick(self):
        self.inferences += 1
        if self.inferences >= self.max_inferences:
            raise _Stop("inferences")
        if not self.inferences & 1023 and time.monotonic() > self.deadline:
            raise _Stop("time")

    # -- search
    def prove(self, deadline):
        self.deadline = deadline
        starts = [ci for ci, (_, lits) in enumerate(self.clauses)
                  if lits and all(not s for s, _, _ in lits)]
        if any(not lits for _, lits in self.clauses):
            empty = next(ci for ci, (_, lits) in enumerate(self.clauses) if not lits)
            self.steps = [ProofStep("start", None, empty, (), None, ())]
            self.proof = tuple(self.steps)
            return True, 0
        depth = self.depth = 0
        for limit in range(1, self.budget.max_depth + 1):
            depth = self.depth = limit
            self.cut_by_limit = False
            for ci in starts:
                self.bind = []
                self.trail = []
                self.steps = []
                self.next_id = 0
                inst = self.instantiate(ci)
                ids = self.fresh_ids(len(inst))
                self.steps.append(ProofStep("start", None, ci, inst, None, ids))
                goals = tuple(zip(inst, ids))
                for _ in self.solve(goals, (), (), limit):
                    # read the trace before the search unwinds
                    self.proof = self.final_trace()
                    return True, limit
            if not self.cut_by_limit:
                return False, depth
        return False, depth

    def fresh_ids(self, n):
        ids = tuple(range(self.next_id, self.next_id + n))
        self.next_id += n
        return ids

    def solve(self, goals, path, lemmas, limit):
        """Close every literal in ``goals``; yields once per way of doing so."""
        if not goals:
            yield
            return
        # regularity: no open literal may repeat one on its path
        for lit, _ in goals:
            for p, _ in path:
                if self.same_lit(lit, p):
                    return
        (lit, lid), rest = goals[0], goals[1:]
        mark = len(self.trail)
        nbind = len(self.bind)
        for _ in self.solve_lit(lit, lid, path, lemmas, limit):
            # closed without binding an older variable: other ways of closing
            # ``lit`` leave the remaining goals exactly as they are now
            clean = all(v >= nbind for v in self.trail[mark:])
            yield from self.solve(rest, path, lemmas + ((lit, lid),), limit)
            if clean or self.cut:
                return

    def solve_lit(self, lit, lid, path, lemmas, limit):
        # cleanup sits in finally blocks because callers may abandon this
        # generator early
        sign, pred, args = lit
        steps = self.steps
        for lem, lem_id in lemmas:
            if self.same_lit(lit, lem):
                self.tick()
                steps.append(ProofStep("lemma", lid, connected=lem_id))
                try:
                    yield
                finally:
                    steps.pop()
                # an identical lemma closes the literal in every way at once
                return
        for p, pid in reversed(path):
            if p[0] != sign and p[1] == pred:
                self.tick()
                mark = len(self.trail)
                try:
                    if self.unify_args(args, p[2]):
                        steps.append(ProofStep("reduction", lid, connected=pid))
                        try:
                            yield
                        finally:
                            steps.pop()
                finally:
                    self.undo(mark)
        cands = self.index.get((not sign, pred), ())
        new_path = path + ((lit, lid),)
        for ci, li, ground in cands:
            if not ground and len(path) >= limit:
                self.cut_by_limit = True
                continue
            self.tick()
            mark = len(self.trail)
            nbind = len(self.bind)
            try:
                inst = self.instantiate(ci)
                if self.unify_args(args, inst[li][2]):
                    others = inst[:li] + inst[li + 1:]
                    saved = self.next_id
                    ids = self.fresh_ids(len(others))
                    steps.append(ProofStep("extension", lid, ci, inst, li, ids))
                    try:
                        yield from self.solve(tuple(zip(others, ids)), new_path, lemmas, limit)
                    finally:
                        steps.pop()
                        self.next_id = saved
            finally:
                self.undo(mark)
                del self.bind[nbind:]

    def final_trace(self):
        out = []
        for st in self.steps:
            inst = tuple((s, p, tuple(self.resolve(a) for a in args)) for s, p, args in st.instance)
            out.append(ProofStep(st.kind, st.literal, st.clause, inst, st.connected, st.ids))
        return tuple(out)


# ------------------------------------------------------------- checking

def check_trace(clauses, trace) -> bool:
    """Replay a proof trace against the clause list it was found for."""
    if not trace or trace[0].kind != "start":
        return False
    lits: dict = {}
    parent: dict = {}
    closed: list = []
    order: dict = {}

    def matches(template, inst):
        nv, tl = template
        if len(tl) != len(inst):
            return False
        sub: dict = {}

        def m(t, u):
            if type(t) is int:
                if t in sub:
                    return sub[t] == u
                sub[t] = u
                return True
            if type(t) is tuple:
                return (type(u) is tuple and len(t) == len(u) and t[0] == u[0]
                        and all(m(a, b) for a, b in zip(t[1:], u[1:])))
            return t == u

        return all(s1 == s2 and p1 == p2 and len(a1) == len(a2) and all(m(x, y) for x, y in zip(a1, a2))
                   for (s1, p1, a1), (s2, p2, a2) in zip(tl, inst))

    def path_of(i):
        out = []
        while parent.get(i) is not None:
            i = parent[i]
            out.append(i)
        return out

    def complementary(a, b):
        return a[0] != b[0] and a[1] == b[1] and a[2] == b[2]

    first = trace[0]
    if first.clause is None or not (0 <= first.clause < len(clauses)):
        return False
    if not clauses[first.clause][1]:
        return len(trace) == 1
    if not matches(clauses[first.clause], first.instance):
        return False
    for i, l in zip(first.ids, first.instance):
        lits[i] = l
        parent[i] = None
    for n, st in enumerate(trace[1:], 1):
        lid = st.literal
        if lid not in lits or lid in order:
            return False
        lit = lits[lid]
        if st.kind == "extension":
            if not (0 <= st.clause < len(clauses)) or not matches(clauses[st.clause], st.instance):
                return False
            if not complementary(lit, st.instance[st.connected]):
                return False
            others = st.instance[:st.connected] + st.instance[st.connected + 1:]
            if len(others) != len(st.ids):
                return False
            for i, l in zip(st.ids, others):
                if i in lits:
                    return False
                lits[i] = l
                parent[i] = lid
        elif st.kind == "reduction":
            if st.connected not in path_of(lid) or not complementary(lit, lits[st.connected]):
                return False
        elif st.kind == "lemma":
            src = st.connected
            if src not in order or lits[src] != lit:
                return False
            # src must be an earlier-closed sibling of lid or of one of its ancestors
            if parent[src] is not None and parent[src] not in path_of(lid):
                return False
        else:
            return False
        order[lid] = n
        closed.append(lid)
    return set(order) == set(lits)


# ------------------------------------------------------------- driver

MAX_CASES = 16
RENAME_ABOVE = 16
RESTRICTED_SHARE = 5   # the restricted pass may use 1/5 of the inferences left


def negation_cases(f: Formula) -> list:
    """Skolemized negation of first-order ``f``, split into cases.

    A closed top-level disjunction with at least two quantified operands is
    split, giving one case per operand; the negation is unsatisfiable iff
    every case is.
    """
    names = SkolemNames(_all_names(f))
    neg = skolemize(to_nnf(Not(f)), names=names)
    return split_cases(neg)


def split_cases(g: Formula, max_cases: int = MAX_CASES) -> list:
    pending = [_conjuncts(g)]
    done = []
    while pending:
        items = pending.pop(0)
        i = next((k for k, c in enumerate(items) if _splittable(c)), None)
        if i is None or len(done) + len(pending) + len(items[i].args) > max_cases:
            done.append(items)
            continue
        rest = items[:i] + items[i + 1:]
        pending[0:0] = [rest + _conjuncts(d) for d in items[i].args]
    return [conj(items) for items in done]


def _conjuncts(g):
    if isinstance(g, And):
        out = []
        for a in g.args:
            out.extend(_conjuncts(a))
        return out
    return [g]


def _splittable(g) -> bool:
    if not isinstance(g, Or):
        return False
    quantified = sum(1 for a in g.args if any(isinstance(h, Forall) for h in subformulas(a)))
    return quantified >= 2


def case_clauses(g: Formula) -> list:
    """Prover clauses of one Skolemized case, plus equality axioms when needed."""
    avoid = _all_names(g)
    cs = clausify(g, rename_above=RENAME_ABOVE, names=SkolemNames(avoid, "def"))
    compiled = compile_clauses(cs)
    if any(p == "=" for _, lits in compiled for _, p, _ in lits):
        sig = _clause_signature(compiled)
        for ax in equality_axioms(sig):
            if isinstance(ax, Forall) and isinstance(ax.body, Eq):
                # the clausifier drops reflexivity as a tautology
                compiled.append((1, ((True, "=", (0, 0)),)))
            else:
                compiled.extend(compile_clauses(clausify(ax)))
    return compiled


def prepare_clauses(f: Formula) -> list:
    """Clause lists, one per case, refuting the negation of first-order ``f``."""
    return [case_clauses(g) for g in negation_cases(f)]


def _all_names(f):
    fs = free_symbols(f)
    return set(fs.constants) | {n for n, _ in fs.functions} | set(all_predicate_names(f))


def _search(clauses, budget: Budget, allowance: int, deadline: float):
    """Restricted backtracking first, then the complete search.

    Returns (outcome, inferences used, depth, steps) with outcome one of
    proved, exhausted, timeout.
    """
    used = 0
    depth = 0
    first = ConnectionProver(clauses, budget)
    first.cut = True
    first.max_inferences = max(1, allowance // RESTRICTED_SHARE)
    try:
        found, depth = first.prove(deadline)
        if found:
            return "proved", first.inferences, depth, first.proof
    except _Stop as stop:
        if stop.args[0] == "time":
            return "timeout", first.inferences, first.depth, None
    used = first.inferences
    full = ConnectionProver(clauses, budget)
    full.max_inferences = max(1, allowance - used)
    try:
        found, depth = full.prove(deadline)
    except _Stop:
        return "timeout", used + full.inferences, full.depth, None
    if found:
        return "proved", used + full.inferences, depth, full.proof
    return "exhausted", used + full.inferences, depth, None


def prove_valid(f: Formula, budget: Optional[Budget] = None) -> ProofResult:
    """Try to prove ``f`` valid; predicate quantifiers are grounded first."""
    budget = budget or Budget()
    start = time.monotonic()
    deadline = start + budget.max_seconds
    if any(isinstance(g, (ForallPred, ExistsPred)) for g in subformulas(f)):
        f = ground_so_quantifiers(f)
    problems = tuple(tuple(c) for c in prepare_clauses(f))
    used = 0
    depth = 0
    proofs = []
    for clauses in problems:
        outcome, n, d, steps = _search(clauses, budget, budget.max_inferences - used, deadline)
        used += n
        depth = max(depth, d)
        if outcome != "proved":
            return ProofResult(outcome, used, depth, time.monotonic() - start, None, problems)
        proofs.append(CaseProof(clauses, steps))
    return ProofResult("proved", used, depth, time.monotonic() - start, tuple(proofs), problems)


def check_proof(result: ProofResult, f: Optional[Formula] = None) -> bool:
    """Replay every case of a proof; with ``f`` also recompute the cases."""
    if not result.proved:
        return False
    if f is not None:
        if any(isinstance(g, (ForallPred, ExistsPred)) for g in subformulas(f)):
            f = ground_so_quantifiers(f)
        expected = tuple(tuple(c) for c in prepare_clauses(f))
        if expected != tuple(cp.clauses for cp in result.trace):
            return False
    return all(check_trace(cp.clauses, cp.steps) for cp in result.trace)


def format_trace(result: ProofResult) -> list:
    """Numbered inference lines for reports."""
    lines = []
    cases = result.trace or ()
    for k, cp in enumerate(cases, 1):
        if len(cases) > 1:
            lines.append("case %d of %d:" % (k, len(cases)))
        for n, st in enumerate(cp.steps, 1):
            inst = " | ".join(_fmt_lit(l) for l in st.instance) or "[]"
            if st.kind == "start":
                lines.append("%d. start with clause %d: %s" % (n, st.clause, inst))
            elif st.kind == "extension":
                lines.append("%d. extend literal %d with clause %d: %s" % (n, st.literal, st.clause, inst))
            elif st.kind == "reduction":
                lines.append("%d. reduce literal %d against ancestor %d" % (n, st.literal, st.connected))
            else:
                lines.append("%d. literal %d closed by lemma %d" % (n, st.literal, st.connected))
    return lines


def _fmt_term(t):
    if type(t) is int:
        return "_V%d" % t
    if type(t) is tuple:
        return "%s(%s)" % (t[0], ",".join(_fmt_term(a) for a in t[1:]))
    return t


def _fmt_lit(l):
    s, p, args = l
    if p == "=":
        body = "%s %s %s" % (_fmt_term(args[0]), "=" if s else "!=", _fmt_term(args[1]))
        return body
    text = p if not args else "%s(%s)" % (p, ",".join(_fmt_term(a) for a in args))
    return text if s else "~" + text
