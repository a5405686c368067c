import pytest
from hypothesis import given, settings, strategies as st

from randgen import random_ast, random_fo, rng_for

from pielogic.formula import (
    TRUE, And, Atom, Const, Eq, ExistsPred, Forall, Implies, Not, Quoted, Var,
    alpha_equal, connective_counts, free_symbols, free_vars, signature, substitute,
)
from pielogic.macros import ExpansionState, expand
from pielogic.corpus import load_corpus
from pielogic.parser import ArityError, ParseError, parse_formula
from pielogic.printer import print_formula

seeds = st.integers(min_value=0, max_value=10 ** 9)


# ------------------------------------------------------------------ parse

def test_parse_identity_schema():
    X = Var("X")
    assert parse_formula("all X: (p(X) -> p(X))") == Forall("X", Implies(Atom("p", (X,)), Atom("p", (X,))))


def test_parse_quoted_constant():
    f = parse_formula("world(V) -> pos(V,'g')")
    assert f == Implies(Atom("world", (Var("V"),)), Atom("pos", (Var("V"), Quoted("g"))))


def test_quoted_constant_differs_from_plain_constant():
    assert parse_formula("p('g')") != parse_formula("p(g)")
    assert parse_formula("p('~g')").args[0] == Quoted("g", True)


def test_quantifier_binds_tightly():
    f = parse_formula("all X: p(X) -> q")
    assert isinstance(f, Implies) and isinstance(f.left, Forall)


def test_precedence_and_associativity():
    f = parse_formula("~a & b | c -> d -> e <-> g")
    assert print_formula(f) == "~a & b | c -> d -> e <-> g"
    assert isinstance(f.right, Atom)          # <-> loosest
    assert isinstance(f.left.right, Implies)  # -> to the right


def test_predicate_quantifier_arity():
    f = parse_formula("ex2 P/2: P(v,x)")
    assert f == ExistsPred("P", 2, Atom("P", (Const("v"), Const("x"))))


def test_inequality_sugar():
    assert parse_formula("X != c") == Not(Eq(Var("X"), Const("c")))


def test_syntax_error_has_position():
    with pytest.raises(ParseError) as e:
        parse_formula("p(X) &\n  & q")
    assert (e.value.line, e.value.col) == (2, 3)


def test_arity_clash():
    with pytest.raises(ArityError):
        parse_formula("p(a) & p(a,b)")


def test_bound_predicate_may_shadow_arity():
    f = parse_formula("p(a) & all2 p/2: p(a,b)")
    assert f.args[1].arity == 2


# ------------------------------------------------------------------ print

def test_print_truth_and_atoms():
    assert print_formula(TRUE) == "true"
    r = Atom("r", (Const("v"), Const("w")))
    assert print_formula(r) == "r(v,w)"
    assert print_formula(r, "latex") == "\\mathsf{r}(\\mathsf{v},\\mathsf{w})"


def test_print_unicode():
    f = parse_formula("all X: (pos(X,'~g') -> ~(X = a) | ex2 P/1: P(X))")
    assert print_formula(f, "unicode") == "∀X (pos(X,⟨¬g⟩) → X ≠ a ∨ ∃P P(X))"


def test_print_rejects_unknown_style():
    with pytest.raises(ValueError):
        print_formula(TRUE, "html")


def test_shared_quantifier_head():
    assert print_formula(parse_formula("all X: all Y: r(X,Y)")) == "all X: all Y: r(X,Y)"
    assert print_formula(parse_formula("all X: all Y: r(X,Y)"), "unicode") == "∀X ∀Y r(X,Y)"


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_round_trip_random(seed):
    f = random_ast(rng_for(seed), 5)
    assert parse_formula(print_formula(f)) == f


def test_printing_injective_on_corpus_up_to_alpha():
    kb, _ = load_corpus()
    seen = {}
    for d in kb.user_defs():
        text = print_formula(d.body)
        if text in seen:
            assert alpha_equal(seen[text], d.body)
        seen[text] = d.body


# ---------------------------------------------------------- free symbols

def test_free_symbols_examples():
    fs = free_symbols(parse_formula("all X: p(X)"))
    assert (fs.variables, fs.predicates, fs.constants) == (frozenset(), {"p"}, frozenset())
    fs = free_symbols(parse_formula("ex2 P/2: P(v,x)"))
    assert (fs.variables, fs.predicates, fs.constants) == (frozenset(), frozenset(), {"v", "x"})


def test_free_symbols_of_pre_thm_3():
    kb, _ = load_corpus()
    f = expand(ExpansionState(kb), parse_formula("pre_thm_3(v)", macros=kb.keys()))
    preds = free_symbols(f).predicates
    assert {"r", "world", "e", "g"} <= preds
    assert "ess" not in preds


def test_signature_collects_arities():
    sig = signature(parse_formula("p(f(a)) & q(X,b)"))
    assert sig.predicates == {"p": 1, "q": 2}
    assert sig.functions == {"f": 1}
    assert sig.constants == {"a", "b"}


# ---------------------------------------------------------- substitution

def test_substitute_term():
    assert substitute(parse_formula("p(X)"), {Var("X"): Const("c")}) == parse_formula("p(c)")


def test_substitute_avoids_capture():
    f = substitute(parse_formula("all X: q(X,Y)"), {Var("Y"): Var("X")})
    assert isinstance(f, Forall) and f.var != "X"
    assert f.body == Atom("q", (Var(f.var), Var("X")))


def test_substitute_predicate_renames_quoted():
    f = substitute(parse_formula("ess(V,'Q') & Q(V)"), {"Q": "g"})
    assert f == parse_formula("ess(V,'g') & g(V)")


def test_substitute_arity_mismatch():
    from pielogic.formula import Lambda
    with pytest.raises(ArityError):
        substitute(parse_formula("P(a)"), {"P": Lambda(("X", "Y"), TRUE)})


def _random_map(rng, f):
    names = sorted(free_vars(f)) or ["X"]
    target = rng.choice(names)
    repl = rng.choice([Var("X0"), Var("X1"), Const("a"), Var("Y")])
    return {Var(target): repl}


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_substitute_keeps_connectives_and_free_symbols(seed):
    rng = rng_for(seed)
    closed = random_fo(rng, 4)
    # open it up by dropping the outermost binders
    f = closed
    while isinstance(f, Forall):
        f = f.body
    sigma = _random_map(rng, f)
    g = substitute(f, sigma)
    assert connective_counts(g) == connective_counts(f)
    (var, term), = sigma.items()
    expected = set(free_vars(f)) - {var.name}
    if var.name in free_vars(f) and isinstance(term, Var):
        expected.add(term.name)
    assert set(free_vars(g)) <= expected
    assert free_symbols(g).predicates <= free_symbols(f).predicates


def test_alpha_equal():
    assert alpha_equal(parse_formula("all X: p(X)"), parse_formula("all Y: p(Y)"))
    assert not alpha_equal(parse_formula("all X: q(X,Y)"), parse_formula("all Y: q(Y,Y)"))
    assert And((TRUE, TRUE)) == And((TRUE, TRUE))
