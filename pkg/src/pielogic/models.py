"""Finite interpretations, evaluation and exhaustive model search.

:func:`eval_formula` is the plain Tarskian evaluator; predicate quantifiers
enumerate every relation on the domain.  The searches (:func:`find_model`,
:func:`find_countermodel`, :func:`check_so_equivalence`) cover every
interpretation of each domain size: constants are assigned up to renaming of
domain elements, and the relations are explored by grounding the formula over
the domain into a hashed and/not graph and deciding it with a small
conflict-learning search.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Optional

from .formula import (
    And, App, Atom, Const, Eq, Exists, ExistsPred, Falsity, Forall, ForallPred,
    Formula, Iff, Implies, MacroCall, Not, Or, Quoted, Truth, Var, free_symbols,
    predicate_arities, subformulas,
)


class ResourceError(RuntimeError):
    """The requested search is too large to carry out."""


class UnboundSymbol(KeyError):
    pass


# ------------------------------------------------------ interpretations

@dataclass(frozen=True)
class Interpretation:
    """Finite structure over the domain 1..size.

    ``consts`` maps constant names and :class:`Quoted` constants to elements,
    ``funcs`` maps function names to dicts from argument tuples to elements
    and ``preds`` maps predicate names to sets of tuples.
    """
    size: int
    consts: dict = field(default_factory=dict)
    funcs: dict = field(default_factory=dict)
    preds: dict = field(default_factory=dict)

    @property
    def domain(self):
        return range(1, self.size + 1)

    def describe(self) -> list:
        lines = ["domain: {%s}" % ", ".join(str(d) for d in self.domain)]
        for c in sorted(self.consts, key=_const_key):
            lines.append("%s = %d" % (c, self.consts[c]))
        for fn in sorted(self.funcs):
            table = self.funcs[fn]
            items = ", ".join("%s->%d" % (_tuple_text(k), v) for k, v in sorted(table.items()))
            lines.append("%s: {%s}" % (fn, items))
        for p in sorted(self.preds):
            rel = self.preds[p]
            lines.append("%s: {%s}" % (p, ", ".join(_tuple_text(t) for t in sorted(rel))))
        return lines


def _tuple_text(t):
    return "(" + ",".join(str(x) for x in t) + ")" if len(t) != 1 else str(t[0])


def _const_key(c):
    if isinstance(c, Quoted):
        return (1, c.base, c.negated)
    return (0, c, False)


@dataclass
class EvalStats:
    relations_tried: int = 0


def eval_formula(i: Interpretation, f: Formula, env: Optional[dict] = None,
                 stats: Optional[EvalStats] = None) -> bool:
    """Truth of ``f`` in ``i``.

    ``env`` maps variable names to elements and bound predicate names to sets
    of tuples.  Each relation tried by a predicate quantifier is counted in
    ``stats``.
    """
    return _Evaluator(i, stats or EvalStats()).eval(f, dict(env or {}))


class _Evaluator:
    def __init__(self, i, stats):
        self.i = i
        self.stats = stats

    def term(self, t, env):
        if isinstance(t, Var):
            if t.name not in env:
                raise UnboundSymbol("unbound variable %s" % t.name)
            return env[t.name]
        if isinstance(t, Quoted):
            if t in env:
                return env[t]
            if t not in self.i.consts:
                raise UnboundSymbol("unbound constant %s" % t)
            return self.i.consts[t]
        if isinstance(t, Const):
            if t.name not in self.i.consts:
                raise UnboundSymbol("unbound constant %s" % t.name)
            return self.i.consts[t.name]
        if isinstance(t, App):
            args = tuple(self.term(a, env) for a in t.args)
            try:
                return self.i.funcs[t.fn][args]
            except KeyError:
                raise UnboundSymbol("function %s undefined at %r" % (t.fn, args)) from None
        raise TypeError("not a term: %r" % (t,))

    def eval(self, f, env):
        if isinstance(f, Truth):
            return True
        if isinstance(f, Falsity):
            return False
        if isinstance(f, Atom):
            args = tuple(self.term(a, env) for a in f.args)
            key = ("pred", f.pred)
            if key in env:
                return args in env[key]
            if f.pred not in self.i.preds:
                raise UnboundSymbol("unbound predicate %s" % f.pred)
            return args in self.i.preds[f.pred]
        if isinstance(f, Eq):
            return self.term(f.left, env) == self.term(f.right, env)
        if isinstance(f, Not):
            return not self.eval(f.arg, env)
        if isinstance(f, And):
            return all(self.eval(a, env) for a in f.args)
        if isinstance(f, Or):
            return any(self.eval(a, env) for a in f.args)
        if isinstance(f, Implies):
            return (not self.eval(f.left, env)) or self.eval(f.right, env)
        if isinstance(f, Iff):
            return self.eval(f.left, env) == self.eval(f.right, env)
        if isinstance(f, (Forall, Exists)):
            want = isinstance(f, Exists)
            key = f.var if isinstance(f.var, Quoted) else f.var
            for d in self.i.domain:
                inner = dict(env)
                inner[key] = d
                if self.eval(f.body, inner) == want:
                    return want
            return not want
        if isinstance(f, (ForallPred, ExistsPred)):
            want = isinstance(f, ExistsPred)
            tuples = list(itertools.product(self.i.domain, repeat=f.arity))
            for bits in range(2 ** len(tuples)):
                self.stats.relations_tried += 1
                rel = frozenset(t for k, t in enumerate(tuples) if bits >> k & 1)
                inner = dict(env)
                inner[("pred", f.pred)] = rel
                if self.eval(f.body, inner) == want:
                    return want
            return not want
        if isinstance(f, MacroCall):
            raise ValueError("expand macros before evaluation")
        raise TypeError("not a formula: %r" % (f,))


# ------------------------------------------------------- and/not graphs

TRUE_LIT = 1


class Circuit:
    """And/not graph with structural hashing.

    Literals are signed node numbers; node 1 is the constant true, so ``-1``
    is false.  And nodes are n-ary over a sorted tuple of distinct literals,
    and positive and-inputs are merged into their parent.
    """

    def __init__(self, max_nodes: int = 2_000_000):
        self.kinds: list = [None, ("true",)]
        self.table: dict = {}
        self.max_nodes = max_nodes

    def _new(self, kind):
        if len(self.kinds) >= self.max_nodes:
            raise ResourceError("ground formula exceeds %d nodes" % self.max_nodes)
        self.kinds.append(kind)
        return len(self.kinds) - 1

    def input(self, key) -> int:
        node = self.table.get(("in", key))
        if node is None:
            node = self._new(("in", key))
            self.table[("in", key)] = node
        return node

    def conj(self, lits) -> int:
        items = set()
        for l in lits:
            if l == TRUE_LIT:
                continue
            if l == -TRUE_LIT:
                return -TRUE_LIT
            kind = self.kinds[l] if l > 0 else None
            if kind is not None and kind[0] == "and":
                items.update(kind[1])
            else:
                items.add(l)
        for l in items:
            if -l in items:
                return -TRUE_LIT
        if not items:
            return TRUE_LIT
        if len(items) == 1:
            return next(iter(items))
        key = ("and", tuple(sorted(items)))
        node = self.table.get(key)
        if node is None:
            node = self._new(key)
            self.table[key] = node
        return node

    def disj(self, lits) -> int:
        return -self.conj([-l for l in lits])

    def iff(self, a, b) -> int:
        return self.conj([-self.conj([a, -b]), -self.conj([-a, b])])

    def clauses(self, root: int):
        """Definitional clauses for the nodes below ``root`` plus the unit ``root``."""
        out = [[TRUE_LIT], [root]]
        seen = set()
        stack = [abs(root)]
        while stack:
            n = stack.pop()
            if n in seen:
                continue
            seen.add(n)
            kind = self.kinds[n]
            if kind[0] == "and":
                ins = kind[1]
                for l in ins:
                    out.append([-n, l])
                    stack.append(abs(l))
                out.append([n] + [-l for l in ins])
        return out


# ------------------------------------------------------------ the solver

class SatSolver:
    """Conflict-driven clause learning with two watched literals."""

    def __init__(self, nvars: int):
        self.n = nvars
        self.clauses: list = []
        self.watches: dict = {}
        self.value = [0] * (nvars + 1)
        # truth value of literal l is lits[l + n]
        self.lits = [0] * (2 * nvars + 1)
        self.level = [0] * (nvars + 1)
        self.reason: list = [None] * (nvars + 1)
        self.phase = [False] * (nvars + 1)
        self.activity = [0.0] * (nvars + 1)
        self.inc = 1.0
        self.heap = [(0.0, v) for v in range(1, nvars + 1)]
        heapq.heapify(self.heap)
        self.trail: list = []
        self.limits: list = []
        self.qhead = 0
        self.ok = True
        self.conflicts = 0

    def lit_value(self, l):
        return self.lits[l + self.n]

    def add_clause(self, lits):
        if not self.ok:
            return
        lits = list(dict.fromkeys(lits))
        present = set(lits)
        if any(-l in present for l in lits):
            return
        lits = [l for l in lits if self.lit_value(l) != -1 or self.level[abs(l)] > 0]
        if any(self.lit_value(l) == 1 and self.level[abs(l)] == 0 for l in lits):
            return
        if not lits:
            self.ok = False
            return
        if len(lits) == 1:
            self.enqueue(lits[0], None)
            if self.propagate() is not None:
                self.ok = False
            return
        ci = len(self.clauses)
        self.clauses.append(lits)
        self.watches.setdefault(lits[0], []).append(ci)
        self.watches.setdefault(lits[1], []).append(ci)

    def enqueue(self, l, reason):
        v = abs(l)
        self.value[v] = 1 if l > 0 else -1
        self.lits[self.n + l] = 1
        self.lits[self.n - l] = -1
        self.level[v] = len(self.limits)
        self.reason[v] = reason
        self.trail.append(l)

    def propagate(self):
        clauses, watches, lv, n = self.clauses, self.watches, self.lits, self.n
        while self.qhead < len(self.trail):
            p = self.trail[self.qhead]
            self.qhead += 1
            false_lit = -p
            ws = watches.get(false_lit)
            if not ws:
                continue
            keep = []
            conflict = None
            k = 0
            while k < len(ws):
                ci = ws[k]
                k += 1
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                if lv[c[0] + n] == 1:
                    keep.append(ci)
                    continue
                moved = False
                for j in range(2, len(c)):
                    if lv[c[j] + n] != -1:
                        c[1], c[j] = c[j], c[1]
                        watches.setdefault(c[1], []).append(ci)
                        moved = True
                        break
                if moved:
                    continue
                keep.append(ci)
                if lv[c[0] + n] == -1:
                    conflict = ci
                    keep.extend(ws[k:])
                    break
                self.enqueue(c[0], ci)
            watches[false_lit] = keep
            if conflict is not None:
                return conflict
        return None

    def bump(self, v):
        self.activity[v] += self.inc
        if self.activity[v] > 1e100:
            self.activity = [a * 1e-100 for a in self.activity]
            self.inc *= 1e-100
            self.heap = [(-self.activity[u], u) for u in range(1, self.n + 1) if self.value[u] == 0]
            heapq.heapify(self.heap)
        heapq.heappush(self.heap, (-self.activity[v], v))

    def analyze(self, conflict):
        seen = set()
        learnt = [0]
        counter = 0
        current = len(self.limits)
        c = self.clauses[conflict]
        p = None
        idx = len(self.trail) - 1
        while True:
            for q in (c if p is None else c[1:]):
                v = abs(q)
                if v not in seen and self.level[v] > 0:
                    seen.add(v)
                    self.bump(v)
                    if self.level[v] == current:
                        counter += 1
                    else:
                        learnt.append(q)
            while abs(self.trail[idx]) not in seen:
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            seen.discard(abs(p))
            counter -= 1
            if counter == 0:
                break
            c = self.clauses[self.reason[abs(p)]]
        learnt[0] = -p
        if len(learnt) == 1:
            back = 0
        else:
            best = max(range(1, len(learnt)), key=lambda j: self.level[abs(learnt[j])])
            learnt[1], learnt[best] = learnt[best], learnt[1]
            back = self.level[abs(learnt[1])]
        self.inc *= 1.05
        return learnt, back

    def backtrack(self, lvl):
        if len(self.limits) <= lvl:
            return
        start = self.limits[lvl]
        for l in self.trail[start:]:
            v = abs(l)
            self.phase[v] = l > 0
            self.value[v] = 0
            self.lits[self.n + v] = 0
            self.lits[self.n - v] = 0
            self.reason[v] = None
            heapq.heappush(self.heap, (-self.activity[v], v))
        del self.trail[start:]
        del self.limits[lvl:]
        self.qhead = len(self.trail)

    def pick(self):
        while self.heap:
            _, v = heapq.heappop(self.heap)
            if self.value[v] == 0:
                return v if self.phase[v] else -v
        return None

    def solve(self, assumptions=()) -> bool:
        """Satisfiability under ``assumptions``; the model is left in ``value``."""
        if not self.ok:
            return False
        self.backtrack(0)
        if self.propagate() is not None:
            self.ok = False
            return False
        restart_at = 100
        since = 0
        while True:
            conflict = self.propagate()
            if conflict is not None:
                self.conflicts += 1
                since += 1
                if len(self.limits) == 0:
                    self.ok = False
                    return False
                learnt, back = self.analyze(conflict)
                self.backtrack(back)
                if len(learnt) == 1:
                    self.enqueue(learnt[0], None)
                else:
                    ci = len(self.clauses)
                    self.clauses.append(learnt)
                    self.watches.setdefault(learnt[0], []).append(ci)
                    self.watches.setdefault(learnt[1], []).append(ci)
                    self.enqueue(learnt[0], ci)
                continue
            if since >= restart_at:
                since = 0
                restart_at = int(restart_at * 1.5)
                self.backtrack(0)
                continue
            if len(self.limits) < len(assumptions):
                a = assumptions[len(self.limits)]
                val = self.lit_value(a)
                if val == -1:
                    return False
                self.limits.append(len(self.trail))
                if val == 0:
                    self.enqueue(a, None)
                continue
            lit = self.pick()
            if lit is None:
                return True
            self.limits.append(len(self.trail))
            self.enqueue(lit, None)


# -------------------------------------------------------------- grounding

DEFAULT_RELATION_LIMIT = 512


class _Grounder:
    """Ground a formula over a domain into a :class:`Circuit`.

    ``polarity`` is +1 when the subformula's truth is asserted, -1 when its
    falsity is, and 0 when both matter.  An existential predicate quantifier
    under polarity +1 (or a universal one under -1) becomes fresh inputs that
    the search may choose; otherwise it is expanded over every relation.
    """

    def __init__(self, size, consts, circuit, relation_limit):
        self.size = size
        self.consts = consts
        self.c = circuit
        self.fresh = itertools.count()
        self.relation_limit = relation_limit
        self.memo: dict = {}
        self.deps: dict = {}

    def term(self, t, venv):
        if isinstance(t, Var):
            if t.name not in venv:
                raise UnboundSymbol("unbound variable %s" % t.name)
            return venv[t.name]
        if isinstance(t, Quoted):
            return venv[t] if t in venv else self.consts[t]
        if isinstance(t, Const):
            return self.consts[t.name]
        if isinstance(t, App):
            raise ResourceError("model search does not support function symbols")
        raise TypeError("not a term: %r" % (t,))

    def junction(self, conjunctive, lits):
        # stop at the first part that decides the whole
        stop = -TRUE_LIT if conjunctive else TRUE_LIT
        parts = []
        for l in lits:
            if l == stop:
                return stop
            parts.append(l)
        return self.c.conj(parts) if conjunctive else self.c.disj(parts)

    def dependencies(self, f):
        # every variable, quoted constant and predicate name occurring in f
        found = self.deps.get(id(f))
        if found is None:
            names, quoted, preds = set(), set(), set()

            def walk_term(t):
                if isinstance(t, Var):
                    names.add(t.name)
                elif isinstance(t, Quoted):
                    quoted.add(t)
                elif isinstance(t, App):
                    for a in t.args:
                        walk_term(a)

            for g in subformulas(f):
                if isinstance(g, Atom):
                    preds.add(g.pred)
                    for a in g.args:
                        walk_term(a)
                elif isinstance(g, Eq):
                    walk_term(g.left)
                    walk_term(g.right)
            found = (f, sorted(names), sorted(quoted, key=_const_key), sorted(preds))
            self.deps[id(f)] = found
        return found[1:]

    def ground(self, f, pol, venv, penv):
        if isinstance(f, (Atom, Eq, Truth, Falsity)):
            return self._ground(f, pol, venv, penv)
        names, quoted, preds = self.dependencies(f)
        key = (id(f), pol,
               tuple(venv.get(n) for n in names),
               tuple(venv.get(q) for q in quoted),
               tuple(penv.get(p) for p in preds))
        lit = self.memo.get(key)
        if lit is None:
            lit = self._ground(f, pol, venv, penv)
            self.memo[key] = lit
        return lit

    def _ground(self, f, pol, venv, penv):
        c = self.c
        if isinstance(f, Truth):
            return TRUE_LIT
        if isinstance(f, Falsity):
            return -TRUE_LIT
        if isinstance(f, Atom):
            args = tuple(self.term(a, venv) for a in f.args)
            bound = penv.get(f.pred)
            if bound is None:
                return c.input(("atom", f.pred, args))
            if bound[0] == "rel":
                return TRUE_LIT if args in bound[1] else -TRUE_LIT
            return c.input(("fresh", bound[1], args))
        if isinstance(f, Eq):
            same = self.term(f.left, venv) == self.term(f.right, venv)
            return TRUE_LIT if same else -TRUE_LIT
        if isinstance(f, Not):
            return -self.ground(f.arg, -pol, venv, penv)
        if isinstance(f, And):
            return self.junction(True, (self.ground(a, pol, venv, penv) for a in f.args))
        if isinstance(f, Or):
            return self.junction(False, (self.ground(a, pol, venv, penv) for a in f.args))
        if isinstance(f, Implies):
            left = -self.ground(f.left, -pol, venv, penv)
            if left == TRUE_LIT:
                return TRUE_LIT
            return c.disj([left, self.ground(f.right, pol, venv, penv)])
        if isinstance(f, Iff):
            if pol == 0:
                return c.iff(self.ground(f.left, 0, venv, penv), self.ground(f.right, 0, venv, penv))
            # each side is grounded once per polarity it occurs with
            a_pos, a_neg = self.ground(f.left, 1, venv, penv), self.ground(f.left, -1, venv, penv)
            b_pos, b_neg = self.ground(f.right, 1, venv, penv), self.ground(f.right, -1, venv, penv)
            if pol == 1:
                return c.conj([c.disj([-a_neg, b_pos]), c.disj([-b_neg, a_pos])])
            return -c.disj([c.conj([a_pos, -b_neg]), c.conj([-a_neg, b_pos])])
        if isinstance(f, (Forall, Exists)):
            def instances():
                for d in range(1, self.size + 1):
                    inner = dict(venv)
                    inner[f.var] = d
                    yield self.ground(f.body, pol, inner, penv)

            return self.junction(isinstance(f, Forall), instances())
        if isinstance(f, (ForallPred, ExistsPred)):
            existential = isinstance(f, ExistsPred)
            if (existential and pol == 1) or (not existential and pol == -1):
                inner = dict(penv)
                inner[f.pred] = ("fresh", next(self.fresh))
                return self.ground(f.body, pol, venv, inner)
            tuples = list(itertools.product(range(1, self.size + 1), repeat=f.arity))
            count = 2 ** len(tuples)
            if count > self.relation_limit:
                raise ResourceError("%d relations of arity %d on %d elements exceed the limit %d"
                                    % (count, f.arity, self.size, self.relation_limit))
            def instances():
                for bits in range(count):
                    rel = frozenset(t for k, t in enumerate(tuples) if bits >> k & 1)
                    inner = dict(penv)
                    inner[f.pred] = ("rel", rel)
                    yield self.ground(f.body, pol, venv, inner)

            return self.junction(not existential, instances())
        if isinstance(f, MacroCall):
            raise ValueError("expand macros before model search")
        raise TypeError("not a formula: %r" % (f,))


def constants_of(*fs) -> list:
    out = set()
    for f in fs:
        fs_ = free_symbols(f)
        out |= set(fs_.constants)
        out |= set(fs_.quoted)
        if fs_.functions:
            raise ResourceError("model search does not support function symbols")
    return sorted(out, key=_const_key)


def constant_maps(consts, size):
    """Assignments of constants to 1..size up to renaming of elements, in lexicographic order."""
    def rec(k, used, acc):
        if k == len(consts):
            yield dict(acc)
            return
        for d in range(1, min(size, used + 1) + 1):
            acc[consts[k]] = d
            yield from rec(k + 1, max(used, d), acc)
        acc.pop(consts[k], None)

    yield from rec(0, 0, {})


def _free_pred_arities(*fs):
    out = {}
    for f in fs:
        free = free_symbols(f).predicates
        for p, n in predicate_arities(f).items():
            if p in free:
                out[p] = n
    return out


class _Problem:
    """A circuit turned into clauses plus a solver."""

    def __init__(self, circuit, root):
        self.circuit = circuit
        self.solver = SatSolver(len(circuit.kinds) - 1)
        for cl in circuit.clauses(root):
            self.solver.add_clause(cl)

    def atom_var(self, pred, args):
        return self.circuit.table.get(("in", ("atom", pred, args)))

    def solve(self, assumptions=()):
        return self.solver.solve(assumptions)


def _search(build, arities, consts, min_size, max_size, relation_limit, minimize=True):
    for n in range(min_size, max_size + 1):
        for cmap in constant_maps(consts, n):
            circuit = Circuit()
            g = _Grounder(n, cmap, circuit, relation_limit)
            root = build(g)
            if root == -TRUE_LIT:
                continue
            prob = _Problem(circuit, root)
            if not prob.solve():
                continue
            return _extract(prob, n, cmap, arities, minimize)
    return None


def _extract(prob, n, cmap, arities, minimize):
    """Read the model; with ``minimize`` make it lexicographically least."""
    atoms = []
    for p in sorted(arities):
        for args in itertools.product(range(1, n + 1), repeat=arities[p]):
            atoms.append((p, args))
    fixed = []
    values = {}
    for p, args in atoms:
        v = prob.atom_var(p, args)
        if v is None:
            values[(p, args)] = False
            continue
        if minimize:
            if prob.solve(fixed + [-v]):
                fixed.append(-v)
            else:
                fixed.append(v)
            values[(p, args)] = fixed[-1] > 0
    if minimize:
        prob.solve(fixed)
    else:
        for p, args in atoms:
            v = prob.atom_var(p, args)
            if v is not None:
                values[(p, args)] = prob.solver.value[v] == 1
    preds = {p: frozenset(args for (q, args), val in values.items() if q == p and val)
             for p in arities}
    return Interpretation(n, dict(cmap), {}, preds)


def find_model(f: Formula, max_size: int = 4, min_size: int = 1,
               relation_limit: int = DEFAULT_RELATION_LIMIT) -> Optional[Interpretation]:
    """Least model of ``f`` (smallest domain, then lexicographically least), or None."""
    _check_closed(f)
    return _search(lambda g: g.ground(f, 1, {}, {}), _free_pred_arities(f),
                   constants_of(f), min_size, max_size, relation_limit)


def find_countermodel(f: Formula, max_size: int = 4, min_size: int = 1,
                      relation_limit: int = DEFAULT_RELATION_LIMIT) -> Optional[Interpretation]:
    """Least interpretation falsifying ``f``, or None if every one up to ``max_size`` satisfies it."""
    _check_closed(f)
    return _search(lambda g: -g.ground(f, -1, {}, {}), _free_pred_arities(f),
                   constants_of(f), min_size, max_size, relation_limit)


def check_so_equivalence(f: Formula, g: Formula, max_size: int = 3, min_size: int = 1,
                         relation_limit: int = DEFAULT_RELATION_LIMIT) -> bool:
    """Whether ``f <-> g`` holds in every interpretation with at most ``max_size`` elements."""
    _check_closed(f)
    _check_closed(g)

    def build(gr):
        c = gr.c
        left = c.conj([gr.ground(f, 1, {}, {}), -gr.ground(g, -1, {}, {})])
        right = c.conj([-gr.ground(f, -1, {}, {}), gr.ground(g, 1, {}, {})])
        return c.disj([left, right])

    found = _search(build, _free_pred_arities(f, g), constants_of(f, g),
                    min_size, max_size, relation_limit, minimize=False)
    return found is None


def distinguishing_interpretation(f: Formula, g: Formula, max_size: int = 3,
                                  relation_limit: int = DEFAULT_RELATION_LIMIT):
    """Least interpretation where ``f`` and ``g`` differ, or None."""
    _check_closed(f)
    _check_closed(g)

    def build(gr):
        c = gr.c
        left = c.conj([gr.ground(f, 1, {}, {}), -gr.ground(g, -1, {}, {})])
        right = c.conj([-gr.ground(f, -1, {}, {}), gr.ground(g, 1, {}, {})])
        return c.disj([left, right])

    return _search(build, _free_pred_arities(f, g), constants_of(f, g), 1, max_size, relation_limit)


def _check_closed(f):
    fv = free_symbols(f).variables
    if fv:
        raise UnboundSymbol("free variables %s" % ", ".join(sorted(fv)))
    if any(isinstance(h, MacroCall) for h in subformulas(f)):
        raise ValueError("expand macros before model search")
