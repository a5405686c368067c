import itertools

import pytest
from hypothesis import given, settings, strategies as st

from randgen import FO_CONSTS, FO_PREDS, interpretations, random_fo, rng_for

from pielogic.corpus import load_corpus, task_by_id
from pielogic.formula import Quoted
from pielogic.macros import ExpansionState, expand
from pielogic.models import (
    Circuit, EvalStats, Interpretation, ResourceError, SatSolver, UnboundSymbol,
    check_so_equivalence, distinguishing_interpretation, eval_formula, find_countermodel,
    find_model,
)
from pielogic.parser import parse_formula

P = parse_formula
seeds = st.integers(min_value=0, max_value=10 ** 9)


# -------------------------------------------------------------- evaluation

def test_eval_examples():
    assert eval_formula(Interpretation(1), P("true"))
    assert eval_formula(Interpretation(1, {}, {}, {"r": frozenset()}), P("all X: ~r(X,X)"))
    i = Interpretation(2, {"c": 1, "d": 2})
    assert eval_formula(i, P("ex2 P/1: (P(c) & ~P(d))"))
    assert not eval_formula(Interpretation(2, {"c": 1}), P("ex2 P/1: (P(c) & ~P(c))"))


def test_eval_quoted_constants_and_env():
    i = Interpretation(2, {Quoted("g"): 2}, {}, {"pos": frozenset({(1, 2)})})
    assert eval_formula(i, P("pos(X,'g')"), {"X": 1})
    with pytest.raises(UnboundSymbol):
        eval_formula(i, P("pos(Y,'g')"))


def test_eval_respects_alpha_equivalence():
    i = Interpretation(2, {"a": 1}, {}, {"q": frozenset({(1, 2), (2, 2)})})
    assert eval_formula(i, P("all X: ex Y: q(X,Y)")) == eval_formula(i, P("all Z: ex W: q(Z,W)"))
    assert eval_formula(i, P("all2 R/1: (R(a) -> ex X: R(X))"))


@pytest.mark.parametrize("n,k", [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2), (2, 3)])
def test_relation_enumeration_is_exhaustive(n, k):
    args = ",".join("X%d" % j for j in range(k))
    f = P("all2 R/%d: all %s: (R(%s) | ~R(%s))" % (k, " ".join("X%d" % j for j in range(k)), args, args))
    stats = EvalStats()
    assert eval_formula(Interpretation(n), f, stats=stats)
    assert stats.relations_tried == 2 ** (n ** k)


# ------------------------------------------------------------ the solver

def test_sat_solver_pigeonhole():
    # four pigeons, three holes
    var = lambda p, h: 3 * p + h + 1
    s = SatSolver(12)
    for p in range(4):
        s.add_clause([var(p, h) for h in range(3)])
    for h in range(3):
        for p, q in itertools.combinations(range(4), 2):
            s.add_clause([-var(p, h), -var(q, h)])
    assert not s.solve()


def test_sat_solver_assumptions():
    s = SatSolver(3)
    s.add_clause([1, 2])
    s.add_clause([-1, 3])
    assert s.solve([1])
    assert s.value[3] == 1
    assert not s.solve([1, -3])
    assert s.solve([-1])
    assert s.value[2] == 1


def test_circuit_hashing():
    c = Circuit()
    a, b = c.input("a"), c.input("b")
    assert c.conj([a, b]) == c.conj([b, a])
    assert c.conj([a, -a]) == -1
    assert c.disj([a, 1]) == 1


# ---------------------------------------------------------- model search

def test_excluded_middle_has_no_countermodel():
    for n in (1, 2, 3, 4):
        assert find_countermodel(P("p | ~p"), max_size=n) is None


def test_countermodel_is_smallest():
    assert find_countermodel(P("ex X: ex Y: X != Y")).size == 1
    m = find_countermodel(P("all X: all Y: X = Y"))
    assert m.size == 2


def test_find_model():
    m = find_model(P("p(a) & ~p(b) & all X: (p(X) | q(X))"))
    assert m.size == 2 and m.consts == {"a": 1, "b": 2}
    assert m.preds["q"] == frozenset({(2,)})


def test_function_symbols_rejected():
    with pytest.raises(ResourceError):
        find_countermodel(P("p(f(a))"))


def test_free_variables_rejected():
    with pytest.raises(UnboundSymbol):
        find_countermodel(P("p(X)"))


def test_relation_limit():
    # an existential predicate quantifier in a countermodel search is expanded
    f = P("ex2 R/2: all X: R(X,X)")
    assert find_countermodel(f, max_size=2, relation_limit=16) is None
    with pytest.raises(ResourceError):
        find_countermodel(f, max_size=3, relation_limit=16)


def _least_number(consts, n):
    for values in itertools.product(range(1, n + 1), repeat=len(consts)):
        top = 0
        ok = True
        for v in values:
            if v > top + 1:
                ok = False
                break
            top = max(top, v)
        if ok:
            yield dict(zip(consts, values))


def _naive_countermodel(f, max_size):
    """Least falsifying interpretation by plain enumeration in the search order."""
    names = sorted(FO_PREDS)
    for n in range(1, max_size + 1):
        atoms = [(p, args) for p in names for args in itertools.product(range(1, n + 1), repeat=FO_PREDS[p])]
        for cmap in _least_number(list(FO_CONSTS), n):
            for bits in itertools.product((False, True), repeat=len(atoms)):
                preds = {p: frozenset(a for (q, a), b in zip(atoms, bits) if q == p and b) for p in names}
                i = Interpretation(n, cmap, {}, preds)
                if not eval_formula(i, f):
                    return i
    return None


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_finder_agrees_with_naive_enumeration(seed):
    f = random_fo(rng_for(seed), 4)
    want = _naive_countermodel(f, 2)
    got = find_countermodel(f, max_size=2)
    assert (got is None) == (want is None)
    if got is not None:
        assert not eval_formula(got, f)
        assert got.size == want.size
        used = set(got.preds)
        assert {p: want.preds[p] for p in used} == got.preds
        assert {c: want.consts[c] for c in got.consts} == got.consts


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_so_equivalence_agrees_with_eval(seed):
    rng = rng_for(seed)
    f, g = random_fo(rng, 3), random_fo(rng, 3)
    naive = all(eval_formula(i, f) == eval_formula(i, g)
                for n in (1, 2) for i in interpretations(n, FO_PREDS, FO_CONSTS))
    assert check_so_equivalence(f, g, max_size=2) == naive
    assert check_so_equivalence(f, f, max_size=2)


def test_so_equivalence_examples():
    assert check_so_equivalence(P("ex2 P/1: P(c)"), P("true"), max_size=3)
    assert not check_so_equivalence(P("ex2 P/1: P(c)"), P("false"), max_size=3)
    m = distinguishing_interpretation(P("ex2 P/1: P(c)"), P("false"))
    assert m.size == 1


# ------------------------------------------------------------------ corpus

@pytest.fixture(scope="module")
def corpus():
    return load_corpus()


@pytest.mark.parametrize("tid", ["NV1", "NV2"])
def test_corpus_countermodels(corpus, tid):
    kb, tasks = corpus
    f = expand(ExpansionState(kb), task_by_id(tasks, tid).parsed)
    m = find_countermodel(f, max_size=4)
    assert m is not None and m.size <= 4
    assert not eval_formula(m, f)
    # nothing smaller exists
    if m.size > 1:
        assert find_countermodel(f, max_size=m.size - 1) is None


def test_countermodel_sizes_are_two(corpus):
    kb, tasks = corpus
    for tid in ("NV1", "NV2"):
        f = expand(ExpansionState(kb), task_by_id(tasks, tid).parsed)
        assert find_countermodel(f).size == 2


def test_describe_lists_relations(corpus):
    m = Interpretation(2, {"v": 1, Quoted("g"): 2}, {}, {"r": frozenset({(2, 1)})})
    assert m.describe() == ["domain: {1, 2}", "v = 1", "'g' = 2", "r: {(2,1)}"]
