"""Quantified modal formulas and their standard translation.

The translation uses varying domains: worlds are individuals related by
``r``, ``e(W,X)`` says that X exists in world W, and every modal predicate
gets the world as an extra first argument.  Individual quantifiers are
guarded by ``e`` and world quantifiers by ``r``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .formula import (
    FALSE, TRUE, And, Atom, Const, Eq, Exists, Falsity, Forall, Formula, Iff, Implies,
    Not, Or, Term, Truth, Var, conj, subformulas, term_vars,
)
from .macros import ExpansionState
from .parser import ParseError, Parser, parse_formula, tokenize
from .printer import print_term

ACCESS = "r"
EXISTS_IN = "e"


class ModalFormula:
    __slots__ = ()

    def __str__(self):
        return print_modal(self)


@dataclass(frozen=True)
class MAtom(ModalFormula):
    pred: str
    args: tuple = ()


@dataclass(frozen=True)
class MEq(ModalFormula):
    left: Term
    right: Term


@dataclass(frozen=True)
class MTruth(ModalFormula):
    value: bool = True


@dataclass(frozen=True)
class MNot(ModalFormula):
    arg: ModalFormula


@dataclass(frozen=True)
class MAnd(ModalFormula):
    args: tuple


@dataclass(frozen=True)
class MOr(ModalFormula):
    args: tuple


@dataclass(frozen=True)
class MImplies(ModalFormula):
    left: ModalFormula
    right: ModalFormula


@dataclass(frozen=True)
class MIff(ModalFormula):
    left: ModalFormula
    right: ModalFormula


@dataclass(frozen=True)
class MForall(ModalFormula):
    var: str
    body: ModalFormula


@dataclass(frozen=True)
class MExists(ModalFormula):
    var: str
    body: ModalFormula


@dataclass(frozen=True)
class Box(ModalFormula):
    arg: ModalFormula


@dataclass(frozen=True)
class Diamond(ModalFormula):
    arg: ModalFormula


# ---------------------------------------------------------------- parsing

@dataclass(frozen=True)
class _BoxMark(Formula):
    arg: Formula


@dataclass(frozen=True)
class _DiaMark(Formula):
    arg: Formula


def parse_modal(text: str) -> ModalFormula:
    """Parse the formula syntax extended with prefix operators ``box`` and ``dia``."""
    p = Parser(tokenize(text), unary_ops={"box": _BoxMark, "dia": _DiaMark})
    f = p.formula()
    p.finish()
    return _from_classical(f)


def _from_classical(f) -> ModalFormula:
    if isinstance(f, _BoxMark):
        return Box(_from_classical(f.arg))
    if isinstance(f, _DiaMark):
        return Diamond(_from_classical(f.arg))
    if isinstance(f, Atom):
        return MAtom(f.pred, f.args)
    if isinstance(f, Eq):
        return MEq(f.left, f.right)
    if isinstance(f, Not):
        return MNot(_from_classical(f.arg))
    if isinstance(f, And):
        return MAnd(tuple(_from_classical(a) for a in f.args))
    if isinstance(f, Or):
        return MOr(tuple(_from_classical(a) for a in f.args))
    if isinstance(f, Implies):
        return MImplies(_from_classical(f.left), _from_classical(f.right))
    if isinstance(f, Iff):
        return MIff(_from_classical(f.left), _from_classical(f.right))
    if isinstance(f, (Forall, Exists)):
        if not isinstance(f.var, str):
            raise ParseError("quoted binders are not modal formulas")
        kind = MForall if isinstance(f, Forall) else MExists
        return kind(f.var, _from_classical(f.body))
    if isinstance(f, Truth):
        return MTruth(True)
    if isinstance(f, Falsity):
        return MTruth(False)
    raise ParseError("%s is not allowed in a modal formula" % type(f).__name__)


# --------------------------------------------------------------- printing

_PREC = {MIff: 1, MImplies: 2, MOr: 3, MAnd: 4}


def print_modal(m: ModalFormula) -> str:
    return _pm(m, 0)


def _pm(m, ctx):
    if isinstance(m, MAtom):
        if not m.args:
            return m.pred
        return "%s(%s)" % (m.pred, ",".join(print_term(a) for a in m.args))
    if isinstance(m, MEq):
        text = "%s = %s" % (print_term(m.left), print_term(m.right))
        return "(" + text + ")" if ctx > 0 else text
    if isinstance(m, MTruth):
        return "true" if m.value else "false"
    if isinstance(m, MNot):
        return "~" + _pm(m.arg, 5)
    if isinstance(m, (Box, Diamond)):
        return ("box " if isinstance(m, Box) else "dia ") + _pm(m.arg, 5)
    if isinstance(m, (MForall, MExists)):
        head = "all" if isinstance(m, MForall) else "ex"
        return "%s %s: %s" % (head, m.var, _pm(m.body, 5))
    prec = _PREC[type(m)]
    if isinstance(m, (MAnd, MOr)):
        op = " & " if isinstance(m, MAnd) else " | "
        text = op.join(_pm(a, prec + 1) for a in m.args)
    else:
        op = " -> " if isinstance(m, MImplies) else " <-> "
        # both arrows associate to the right
        text = _pm(m.left, prec + 1) + op + _pm(m.right, prec)
    return "(" + text + ")" if ctx > prec else text


# ------------------------------------------------------------- translation

def modal_free_vars(m: ModalFormula) -> set:
    if isinstance(m, MAtom):
        out: set = set()
        for a in m.args:
            term_vars(a, out)
        return out
    if isinstance(m, MEq):
        return term_vars(m.left, set()) | term_vars(m.right, set())
    if isinstance(m, MTruth):
        return set()
    if isinstance(m, (MNot, Box, Diamond)):
        return modal_free_vars(m.arg)
    if isinstance(m, (MAnd, MOr)):
        return set().union(*(modal_free_vars(a) for a in m.args))
    if isinstance(m, (MImplies, MIff)):
        return modal_free_vars(m.left) | modal_free_vars(m.right)
    if isinstance(m, (MForall, MExists)):
        return modal_free_vars(m.body) - {m.var}
    raise TypeError("not a modal formula: %r" % (m,))


def _world_term(world: Union[Term, str]) -> Term:
    if isinstance(world, str):
        return Var(world) if world[:1].isupper() or world[:1] == "_" else Const(world)
    return world


def standard_translate(m: ModalFormula, world: Union[Term, str] = "v",
                       state: Optional[ExpansionState] = None) -> Formula:
    """Classical counterpart of ``m`` evaluated at ``world``.

    Fresh world variables come from ``state``'s fresh-name supply.
    """
    state = state if state is not None else ExpansionState()
    return _st(m, _world_term(world), state)


def _guard_vars(m):
    return [Var(x) for x in sorted(modal_free_vars(m))]


def _st(m, w, state):
    if isinstance(m, MAtom):
        return Atom(m.pred, (w,) + tuple(m.args))
    if isinstance(m, MEq):
        return Eq(m.left, m.right)
    if isinstance(m, MTruth):
        return TRUE if m.value else FALSE
    if isinstance(m, MNot):
        return Not(_st(m.arg, w, state))
    if isinstance(m, MAnd):
        return And(tuple(_st(a, w, state) for a in m.args))
    if isinstance(m, MOr):
        return Or(tuple(_st(a, w, state) for a in m.args))
    if isinstance(m, MImplies):
        return Implies(_st(m.left, w, state), _st(m.right, w, state))
    if isinstance(m, MIff):
        return Iff(_st(m.left, w, state), _st(m.right, w, state))
    if isinstance(m, MExists):
        return Exists(m.var, And((Atom(EXISTS_IN, (w, Var(m.var))), _st(m.body, w, state))))
    if isinstance(m, MForall):
        return Forall(m.var, Implies(Atom(EXISTS_IN, (w, Var(m.var))), _st(m.body, w, state)))
    if isinstance(m, (Diamond, Box)):
        name = state.fresh()
        u = Var(name)
        guards = [Atom(ACCESS, (w, u))] + [Atom(EXISTS_IN, (u, x)) for x in _guard_vars(m.arg)]
        body = _st(m.arg, u, state)
        if isinstance(m, Diamond):
            return Exists(name, conj(guards + [body]))
        return Forall(name, Implies(conj(guards), body))
    raise TypeError("not a modal formula: %r" % (m,))


# ------------------------------------------------------- frame conditions

FRAME_CONDITIONS = {
    "reflexive": "all X: r(X,X)",
    "symmetric": "all X: all Y: (r(X,Y) -> r(Y,X))",
    "euclidean": "all X: all Y: all Z: (r(X,Y) & r(X,Z) -> r(Z,Y))",
    "frame_cond_simp": "all X: all Y: all Z: (r(X,Y) & r(X,Z) & Y != X & Y != Z -> r(Y,X) | r(Y,Z))",
    "r_world_1": "all V: all W: (r(V,W) -> world(W))",
}

CONSTANT_DOMAIN_AXIOMS = {
    "increasing": "all V: all W: (r(V,W) -> all X: (e(V,X) -> e(W,X)))",
    "decreasing": "all V: all W: (r(V,W) -> all X: (e(W,X) -> e(V,X)))",
}


def frame_condition(name: str) -> Formula:
    try:
        return parse_formula(FRAME_CONDITIONS[name])
    except KeyError:
        raise KeyError("unknown frame condition %r; known: %s"
                       % (name, ", ".join(sorted(FRAME_CONDITIONS)))) from None


def constant_domain_axioms() -> list:
    """Axioms making every world's domain the same along ``r``; not used by default."""
    return [parse_formula(CONSTANT_DOMAIN_AXIOMS[k]) for k in ("increasing", "decreasing")]


def is_relativized(f: Formula) -> bool:
    """Whether every quantifier of ``f`` is guarded by an ``e`` or ``r`` atom on its variable."""
    for g in subformulas(f):
        if isinstance(g, (Forall, Exists)):
            body = g.body
            if isinstance(g, Forall):
                if not isinstance(body, Implies):
                    return False
                body = body.left
            first = body.args[0] if isinstance(body, And) else body
            if not (isinstance(first, Atom) and first.pred in (ACCESS, EXISTS_IN)
                    and len(first.args) == 2 and first.args[1] == Var(g.var)):
                return False
    return True
