"""Literate checking of logical arguments.

Formulas with predicate quantifiers and quoted predicate constants, a macro
knowledge base, a connection-tableau prover, a finite model finder,
Ackermann-style predicate quantifier elimination and a document processor.
"""

from .corpus import load_corpus
from .document import parse_document, process_document, run_task
from .macros import ExpansionState, KnowledgeBase, expand
from .models import Interpretation, check_so_equivalence, eval_formula, find_countermodel
from .parser import parse_formula
from .printer import print_formula
from .prover import Budget, prove_valid
from .soqe import eliminate

__version__ = "0.1.0"

__all__ = [
    "Budget", "ExpansionState", "Interpretation", "KnowledgeBase", "check_so_equivalence",
    "eliminate", "eval_formula", "expand", "find_countermodel", "load_corpus",
    "parse_document", "parse_formula", "print_formula", "process_document", "prove_valid",
    "run_task",
]
