import pytest
from hypothesis import given, settings, strategies as st

from randgen import FO_CONSTS, FO_PREDS, interpretations, random_fo, random_nnf, rng_for

from pielogic.corpus import load_corpus
from pielogic.formula import (
    And, App, Atom, Const, Exists, Forall, Var, alpha_equal, forall_all, free_symbols, subformulas,
)
from pielogic.macros import ExpansionState, expand_call
from pielogic.models import check_so_equivalence, eval_formula
from pielogic.normal import (
    NormalFormError, SkolemNames, clause_form, clausify, is_nnf, polarity_of, simplify,
    skolemize, to_implicational, to_nnf, unskolemize,
)
from pielogic.parser import parse_formula

seeds = st.integers(min_value=0, max_value=10 ** 9)
P = parse_formula


def _same_truth(f, g, sizes=(1, 2), preds=FO_PREDS, consts=FO_CONSTS):
    for n in sizes:
        for i in interpretations(n, preds, consts):
            if eval_formula(i, f) != eval_formula(i, g):
                return False
    return True


# -------------------------------------------------------------------- NNF

def test_nnf_examples():
    assert to_nnf(P("~~p")) == P("p")
    assert to_nnf(P("~(p & q)")) == P("~p | ~q")
    assert to_nnf(P("p -> q")) == P("~p | q")
    assert to_nnf(P("~all X: ex Y: r(X,Y)")) == P("ex X: all Y: ~r(X,Y)")


def test_nnf_keeps_predicate_quantifiers():
    f = to_nnf(P("~all2 Q/1: (Q(a) -> Q(b))"))
    assert f == P("ex2 Q/1: (Q(a) & ~Q(b))")
    assert is_nnf(f)


def test_nnf_of_ax_1_lr_by_enumeration():
    kb, _ = load_corpus()
    f = expand_call(ExpansionState(kb), "ax_1_lr(v,top)")
    assert check_so_equivalence(f, to_nnf(f), max_size=3)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_nnf_and_simplify_preserve_truth(seed):
    f = random_fo(rng_for(seed), 4)
    g = to_nnf(f)
    assert is_nnf(g)
    assert _same_truth(f, g)
    assert _same_truth(f, simplify(f))


def test_polarity():
    assert polarity_of(P("p(a) & ~(q -> p(b))"), "p") == {"+", "-"}
    assert polarity_of(P("(p(a) <-> q)"), "p") == {"+", "-"}
    assert polarity_of(P("~ex X: p(X)"), "p") == {"-"}


# --------------------------------------------------------------- simplify

def test_simplify_examples():
    assert simplify(P("p & true")) == P("p")
    assert simplify(P("all X: (X = c -> p(X))")) == P("p(c)")
    assert simplify(P("ex X: (X = c & p(X))")) == P("p(c)")
    assert simplify(P("p | ~p")) == P("true")
    assert simplify(P("~~(a = a) & (q & (r & q))")) == P("q & r")
    assert simplify(P("all X: p(a)")) == P("p(a)")


def test_simplify_is_a_fixpoint():
    for seed in range(50):
        g = simplify(random_fo(rng_for(seed), 5))
        assert simplify(g) == g


# ----------------------------------------------------------- Skolemization

def test_skolemize_examples():
    assert skolemize(P("ex X: p(X)")) == P("p(sk1)")
    f = skolemize(P("all Y: ex X: q(X,Y)"))
    assert f == Forall("Y", Atom("q", (App("sk1", (Var("Y"),)), Var("Y"))))


def test_skolem_names_avoid_symbols():
    f = skolemize(P("sk1 = sk1 & ex X: p(X)"))
    assert "sk2" in free_symbols(f).constants


def test_skolemize_rejects_predicate_quantifiers():
    with pytest.raises(NormalFormError):
        skolemize(P("ex2 Q/1: Q(a)"))


def _sat(f, n, funcs=None, consts=FO_CONSTS):
    return any(eval_formula(i, f) for i in interpretations(n, FO_PREDS, consts, funcs))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_skolemize_preserves_satisfiability(seed):
    f = random_fo(rng_for(seed), 3)
    smap = {}
    g = skolemize(to_nnf(f), skolem_map=smap)
    funcs = {n: k for n, (_, k) in smap.items() if k > 0}
    consts = FO_CONSTS + tuple(n for n, (_, k) in smap.items() if k == 0)
    if sum(2 ** k for k in funcs.values()) > 4:
        return
    for n in (1, 2):
        models = [i for i in interpretations(n, FO_PREDS, consts, funcs) if eval_formula(i, g)]
        # a model of the Skolem form is a model of the input
        assert all(eval_formula(i, f) for i in models)
        assert bool(models) == _sat(f, n)


# ----------------------------------------------------------- clausification

def test_clausify_examples():
    assert clausify(P("(p | q) & r")).as_sets() == {frozenset({"p", "q"}), frozenset({"r"})}
    assert clausify(to_nnf(P("p <-> q"))).as_sets() == {frozenset({"~p", "q"}), frozenset({"~q", "p"})}


def test_clausify_rejects_existentials():
    with pytest.raises(NormalFormError):
        clausify(P("ex X: p(X)"))


def test_clause_form_of_lemma_task_is_refutable():
    from pielogic.corpus import task_by_id
    from pielogic.prover import prove_valid
    kb, tasks = load_corpus()
    f = expand_call(ExpansionState(kb), "~(" + task_by_id(tasks, "V9").formula + ")")
    cs = clause_form(f)
    assert len(cs) > 0
    assert prove_valid(f.arg).proved


def _universal_nnf(rng):
    while True:
        f = random_nnf(rng, 4, (), FO_PREDS, FO_CONSTS)
        if not any(isinstance(g, Exists) for g in subformulas(f)):
            return f


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_clausify_is_equivalent(seed):
    f = _universal_nnf(rng_for(seed))
    assert _same_truth(f, clausify(f).formula())


def test_clausify_with_renaming_is_satisfiability_preserving():
    f = P("(p & q) | (r & s) | (t & u)")
    plain = clausify(f)
    renamed = clausify(f, rename_above=2)
    assert len(plain) == 8
    assert any(l.atom.pred.startswith("def") for c in renamed for l in c)


# -------------------------------------------------------- un-Skolemization

def test_unskolemize_examples():
    f, ok = unskolemize(P("p(sk1)"), {"sk1"})
    assert ok and alpha_equal(f, P("ex X: p(X)"))
    g = Forall("Y", Atom("q", (App("sk2", (Var("Y"),)), Var("Y"))))
    f, ok = unskolemize(g, {"sk2"})
    assert ok and alpha_equal(f, P("all Y: ex X: q(X,Y)"))


def test_unskolemize_reports_failure():
    # a Skolem term over a constant cannot be re-bound
    g = Atom("q", (App("sk1", (Const("a"),)), Const("a")))
    f, ok = unskolemize(g, {"sk1"})
    assert not ok and f == g


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_unskolemize_inverts_skolemize(seed):
    rng = rng_for(seed)
    k = rng.randint(1, 3)
    universals = tuple("X%d" % i for i in range(k))
    bound = universals + ("Z",)
    matrix = random_nnf(rng, 3, bound, FO_PREDS, FO_CONSTS)
    while any(isinstance(g, (Forall, Exists)) for g in subformulas(matrix)):
        matrix = random_nnf(rng, 3, bound, FO_PREDS, FO_CONSTS)
    # the Skolem term must depend on every universal for the placement to be the original one
    matrix = And((matrix, Atom("q", (Var(universals[-1]), Var("Z")))))
    f = to_nnf(forall_all(universals, Exists("Z", matrix)))
    smap = {}
    sk = skolemize(f, names=SkolemNames(prefix="sk"), skolem_map=smap)
    back, ok = unskolemize(sk, set(smap))
    assert ok
    assert alpha_equal(back, f)


def test_to_implicational_is_equivalent():
    for seed in range(30):
        f = random_fo(rng_for(seed), 4)
        assert _same_truth(f, to_implicational(simplify(to_nnf(f))), sizes=(1, 2))
