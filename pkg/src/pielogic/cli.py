"""Command line interface.

Exit status: 0 when every task or check passes, 1 when one fails, 2 for
usage and input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .corpus import CorpusError, corpus_text
from .document import Options, parse_document, render_latex, render_markdown, run_document
from .formula import ArityError, ExistsPred, ForallPred, subformulas
from .macros import ExpansionState, KnowledgeBase, MacroError, expand, parse_definitions
from .models import ResourceError, UnboundSymbol, find_countermodel
from .normal import NormalFormError
from .parser import ParseError, parse_formula
from .printer import print_formula
from .prover import Budget, GroundingError, format_trace, ground_so_quantifiers, prove_valid
from .soqe import eliminate
from .tptp import TPTPError, export_tptp

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError("cannot read %s: %s" % (path, e.strerror or e)) from None


def _document_text(path):
    return corpus_text() if path is None else _read(path)


def load_kb_file(path) -> KnowledgeBase:
    """A KB from a document (``def`` fences) or from a file of bare definitions."""
    if path is None:
        return parse_document(corpus_text()).kb
    text = _read(path)
    if "```def" in text:
        return parse_document(text).kb
    kb = KnowledgeBase()
    parse_definitions(text, kb)
    return kb


def _formula(args):
    kb = load_kb_file(args.kb)
    state = ExpansionState(kb)
    return expand(state, parse_formula(args.formula, macros=kb.keys()))


def _options(args, **extra):
    budget = Budget(max_seconds=args.budget_seconds) if getattr(args, "budget_seconds", None) else Budget()
    return Options(budget=budget, max_domain=getattr(args, "max_domain", 4),
                   trace=getattr(args, "trace", False),
                   timestamps=not getattr(args, "no_timestamps", False), **extra)


# -------------------------------------------------------------- commands

def cmd_check(args, out):
    doc = parse_document(_document_text(args.doc))
    report = run_document(doc, _options(args))
    for r in report.results:
        line = "%-4s %-5s %-10s %-16s" % ("ok" if r.passed else "FAIL", r.task.id, r.task.kind, r.verdict)
        if not args.no_timestamps:
            line += " %6.2fs" % r.elapsed
        if r.message and not r.passed:
            line += "  " + r.message
        print(line.rstrip(), file=out)
    c = report.counts()
    summary = "%d/%d tasks passed" % (c["passed"], c["total"])
    if not args.no_timestamps:
        summary += " in %.2fs" % report.wall_time
    print(summary, file=out)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_render(args, out):
    doc = parse_document(_document_text(args.doc))
    report = run_document(doc, _options(args))
    text = render_latex(report) if args.latex else render_markdown(report)
    if args.output == "-":
        out.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_expand(args, out):
    kb = load_kb_file(args.kb)
    f = expand(ExpansionState(kb), parse_formula(args.call, macros=kb.keys()))
    print(print_formula(f, args.style), file=out)
    return EXIT_PASS


def cmd_prove(args, out):
    f = _formula(args)
    res = prove_valid(f, Budget(max_seconds=args.budget_seconds))
    print("%s (inferences %d, depth %d)" % (res.verdict, res.inferences, res.depth), file=out)
    if args.trace and res.proved:
        for line in format_trace(res):
            print(line, file=out)
    return EXIT_PASS if res.proved else EXIT_FAIL


def cmd_eliminate(args, out):
    f = _formula(args)
    res = eliminate(f)
    if args.trace:
        for line in res.trace:
            print("  " + line, file=out)
    if res.eliminated:
        print(print_formula(res.result, args.style), file=out)
        return EXIT_PASS
    print("failed: %s" % res.reason, file=out)
    return EXIT_FAIL


def cmd_countermodel(args, out):
    f = _formula(args)
    m = find_countermodel(f, args.max_domain)
    if m is None:
        print("no countermodel up to domain size %d" % args.max_domain, file=out)
        return EXIT_FAIL
    for line in m.describe():
        print(line, file=out)
    return EXIT_PASS


def cmd_export_tptp(args, out):
    f = _formula(args)
    if any(isinstance(g, (ForallPred, ExistsPred)) for g in subformulas(f)):
        f = ground_so_quantifiers(f)
    text = export_tptp(f, args.role) + "\n"
    if args.output == "-":
        out.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
    return EXIT_PASS


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pielogic", description="Check literate logic documents.")
    sub = p.add_subparsers(dest="command", required=True)

    def doc_cmd(name, help_text):
        s = sub.add_parser(name, help=help_text)
        s.add_argument("doc", nargs="?", help="document file (default: the bundled corpus)")
        s.add_argument("--max-domain", type=int, default=4, help="largest countermodel domain")
        s.add_argument("--budget-seconds", type=float, default=None, help="prover time per task")
        s.add_argument("--trace", action="store_true", help="include proof and elimination traces")
        s.add_argument("--no-timestamps", action="store_true", help="omit all timings")
        return s

    s = doc_cmd("check", "run every task of a document")
    s.set_defaults(func=cmd_check)
    s = doc_cmd("render", "run a document and write a report")
    s.add_argument("-o", "--output", default="-", help="report file (default: stdout)")
    s.add_argument("--latex", action="store_true", help="LaTeX instead of Markdown")
    s.set_defaults(func=cmd_render)

    def kb_cmd(name, help_text, arg="formula"):
        s = sub.add_parser(name, help=help_text)
        s.add_argument(arg)
        s.add_argument("--kb", default=None, help="definitions or document file (default: the bundled corpus)")
        s.add_argument("--style", choices=("ascii", "unicode", "latex"), default="ascii")
        return s

    s = kb_cmd("expand", "expand a macro call", arg="call")
    s.set_defaults(func=cmd_expand)
    s = kb_cmd("prove", "prove a formula valid")
    s.add_argument("--budget-seconds", type=float, default=10.0)
    s.add_argument("--trace", action="store_true")
    s.set_defaults(func=cmd_prove)
    s = kb_cmd("eliminate", "eliminate predicate quantifiers")
    s.add_argument("--trace", action="store_true")
    s.set_defaults(func=cmd_eliminate)
    s = kb_cmd("countermodel", "search for a finite countermodel")
    s.add_argument("--max-domain", type=int, default=4)
    s.set_defaults(func=cmd_countermodel)
    s = kb_cmd("export-tptp", "write a formula as a TPTP FOF problem")
    s.add_argument("--role", default="conjecture", choices=("conjecture", "axiom", "hypothesis"))
    s.add_argument("-o", "--output", default="-")
    s.set_defaults(func=cmd_export_tptp)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (InputError, ParseError, MacroError, ArityError, CorpusError, TPTPError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_USAGE
    except (ResourceError, GroundingError, NormalFormError, UnboundSymbol) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
