"""Literate documents: prose, macro definitions and reasoning tasks.

Format::

    Plain text paragraphs are prose.

    ```def
    def name(X,P) := formula where Q = quote(P).
    ```

    #check valid [ID] [[LABEL]]: formula
    #check notvalid [ID] [[LABEL]]: formula
    #eliminate [ID] [[LABEL]]: formula
    #expect: formula

A directive continues on following lines that start with whitespace.
``#expect`` may directly follow ``#eliminate`` and names the formula the
elimination result must be provably equivalent to.  Tasks run in document
order; each successful elimination becomes the value of ``last_result``.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .formula import Atom, Formula, Iff, MacroCall, subformulas
from .macros import ExpansionState, KnowledgeBase, MacroDef, MacroError, parse_definitions
from .models import ResourceError, UnboundSymbol, eval_formula, find_countermodel
from .normal import NormalFormError, to_implicational
from .parser import ParseError, Parser, tokenize
from .printer import print_formula
from .prover import Budget, GroundingError, ProofResult, check_proof, format_trace, prove_valid
from .soqe import ElimOutcome, eliminate

KINDS = ("valid", "notvalid", "eliminate")
ID_PREFIX = {"valid": "V", "notvalid": "NV", "eliminate": "E"}

_CHECK = re.compile(r"#check\s+(valid|notvalid)\b(?:\s+([A-Za-z_][\w-]*))?(?:\s*\[([^\]]*)\])?\s*:(.*)$")
_ELIM = re.compile(r"#eliminate\b(?:\s+([A-Za-z_][\w-]*))?(?:\s*\[([^\]]*)\])?\s*:(.*)$")
_EXPECT = re.compile(r"#expect\s*:(.*)$")


@dataclass(frozen=True)
class Prose:
    text: str
    line: int


@dataclass(frozen=True)
class Definition:
    macro: MacroDef
    line: int


@dataclass(frozen=True)
class Task:
    id: str
    kind: str
    formula: str
    expectation: str
    commentary: str = ""
    line: int = 0
    expect: Optional[str] = None
    parsed: Optional[Formula] = field(default=None, compare=False, repr=False)
    expect_parsed: Optional[Formula] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Directive:
    task: Task

    @property
    def line(self):
        return self.task.line


@dataclass
class Document:
    blocks: list = field(default_factory=list)
    kb: KnowledgeBase = field(default_factory=KnowledgeBase)

    def definitions(self) -> list:
        return [b.macro for b in self.blocks if isinstance(b, Definition)]

    def tasks(self) -> list:
        return [b.task for b in self.blocks if isinstance(b, Directive)]


# --------------------------------------------------------------- parsing

def _expectation(kind):
    return {"valid": "proved", "notvalid": "countermodel", "eliminate": "eliminated"}[kind]


def _parse_formula_at(text, line, col, kb):
    p = Parser(tokenize(text, line=line, col=col), macros=kb.keys(), arities={})
    f = p.formula()
    p.finish()
    return f


def parse_document(text: str) -> Document:
    """Split ``text`` into prose, definitions and directives.

    Raises :class:`ParseError` with a line number for malformed blocks and
    for references to macros defined further down.
    """
    doc = Document()
    lines = text.split("\n")
    prose: list = []
    prose_start = 0
    ids: set = set()
    counters = {k: 0 for k in KINDS}
    def_lines: dict = {}

    def flush():
        nonlocal prose
        if prose:
            doc.blocks.append(Prose("\n".join(prose), prose_start))
        prose = []

    i = 0
    while i < len(lines):
        raw = lines[i]
        lineno = i + 1
        stripped = raw.strip()
        if stripped == "```def":
            flush()
            j = i + 1
            while j < len(lines) and lines[j].strip() != "```":
                j += 1
            if j == len(lines):
                raise ParseError("unterminated def block", lineno)
            body = "\n".join(lines[i + 1:j])
            try:
                defs = parse_definitions(body, doc.kb, line=lineno + 1)
            except MacroError as e:
                raise ParseError(str(e), lineno) from None
            for d in defs:
                doc.blocks.append(Definition(d, lineno))
                def_lines[d.key] = lineno
            i = j + 1
            continue
        if stripped.startswith("#"):
            flush()
            j = i + 1
            parts = [raw.strip()]
            while j < len(lines) and lines[j][:1] in (" ", "\t") and lines[j].strip():
                parts.append(lines[j].strip())
                j += 1
            directive = " ".join(parts)
            m_check, m_elim, m_exp = _CHECK.match(directive), _ELIM.match(directive), _EXPECT.match(directive)
            if m_exp:
                last = doc.blocks[-1] if doc.blocks else None
                if not (isinstance(last, Directive) and last.task.kind == "eliminate"
                        and last.task.expect is None):
                    raise ParseError("#expect must directly follow an #eliminate directive", lineno)
                src = m_exp.group(1).strip()
                exp = _parse_formula_at(src, lineno, 1, doc.kb)
                t = last.task
                doc.blocks[-1] = Directive(Task(t.id, t.kind, t.formula, t.expectation, t.commentary,
                                                t.line, src, t.parsed, exp))
                i = j
                continue
            if m_check:
                kind, tid, label, src = m_check.groups()
            elif m_elim:
                kind = "eliminate"
                tid, label, src = m_elim.groups()
            else:
                raise ParseError("unknown directive %r" % directive.split(":")[0], lineno)
            counters[kind] += 1
            if tid is None:
                tid = "%s%d" % (ID_PREFIX[kind], counters[kind])
            if tid in ids:
                raise ParseError("duplicate task id %s" % tid, lineno)
            ids.add(tid)
            src = src.strip()
            if not src:
                raise ParseError("directive %s has no formula" % tid, lineno)
            f = _parse_formula_at(src, lineno, 1, doc.kb)
            doc.blocks.append(Directive(Task(tid, kind, src, _expectation(kind), (label or "").strip(),
                                             lineno, None, f, None)))
            i = j
            continue
        if stripped.startswith("```"):
            # other fenced blocks are kept verbatim as prose
            flush()
            j = i + 1
            while j < len(lines) and lines[j].strip() != "```":
                j += 1
            doc.blocks.append(Prose("\n".join(lines[i:j + 1]), lineno))
            i = j + 1
            continue
        if stripped:
            if not prose:
                prose_start = lineno
            prose.append(raw.rstrip())
        else:
            flush()
        i += 1
    flush()
    _check_forward_references(doc, def_lines)
    return doc


def _referenced(f: Formula) -> set:
    out = set()
    for g in subformulas(f):
        if isinstance(g, MacroCall):
            out.add((g.name, len(g.args)))
        elif isinstance(g, Atom):
            out.add((g.pred, len(g.args)))
    return out


def _check_forward_references(doc, def_lines):
    for b in doc.blocks:
        if isinstance(b, Definition):
            formulas, line = [b.macro.body], b.line
            name = "definition of %s" % b.macro.name
            order = _def_order(doc, b.macro.key)
        elif isinstance(b, Directive):
            formulas = [f for f in (b.task.parsed, b.task.expect_parsed) if f is not None]
            line, name = b.line, "task %s" % b.task.id
            order = _block_order(doc, b)
        else:
            continue
        for key in sorted(set().union(*(_referenced(f) for f in formulas))):
            if key not in def_lines:
                continue
            if _def_order(doc, key) > order:
                raise ParseError("%s refers to %s/%d, which is defined later (line %d)"
                                 % (name, key[0], key[1], def_lines[key]), line)


def _def_order(doc, key):
    for n, b in enumerate(doc.blocks):
        if isinstance(b, Definition) and b.macro.key == key:
            return n
    return -1


def _block_order(doc, block):
    for n, b in enumerate(doc.blocks):
        if b is block:
            return n
    return -1


# ------------------------------------------------------------- execution

@dataclass(frozen=True)
class Options:
    budget: Budget = field(default_factory=Budget)
    max_domain: int = 4
    trace: bool = False
    timestamps: bool = True


@dataclass
class TaskResult:
    task: Task
    passed: bool
    verdict: str
    elapsed: float = 0.0
    expanded: Optional[Formula] = None
    proof: Optional[ProofResult] = None
    countermodel: object = None
    elimination: Optional[ElimOutcome] = None
    expect_proof: Optional[ProofResult] = None
    message: str = ""


def run_task(state: ExpansionState, task: Task, options: Optional[Options] = None) -> TaskResult:
    """Execute one task; eliminations update ``state.last_result``."""
    from .macros import expand
    options = options or Options()
    start = time.monotonic()
    try:
        f = expand(state, task.parsed)
    except MacroError as e:
        if task.kind == "eliminate":
            state.last_result = None
        return TaskResult(task, False, "error", time.monotonic() - start, message=str(e))
    try:
        if task.kind == "valid":
            res = prove_valid(f, options.budget)
            ok = res.proved and check_proof(res, f)
            verdict = res.verdict if ok or not res.proved else "unchecked proof"
            return TaskResult(task, ok, verdict, time.monotonic() - start, f, proof=res)
        if task.kind == "notvalid":
            model = find_countermodel(f, options.max_domain)
            if model is None:
                return TaskResult(task, False, "no countermodel", time.monotonic() - start, f,
                                  message="no countermodel up to size %d" % options.max_domain)
            if eval_formula(model, f):
                return TaskResult(task, False, "error", time.monotonic() - start, f,
                                  message="countermodel does not falsify the formula")
            return TaskResult(task, True, "countermodel", time.monotonic() - start, f, countermodel=model)
        out = eliminate(f)
        if not out.eliminated:
            state.last_result = None
            return TaskResult(task, False, "failed", time.monotonic() - start, f, elimination=out,
                              message=out.reason)
        state.last_result = out.result
        expect_proof = None
        ok = True
        if task.expect_parsed is not None:
            expected = expand(state, task.expect_parsed)
            expect_proof = prove_valid(Iff(out.result, expected), options.budget)
            ok = expect_proof.proved
        return TaskResult(task, ok, "eliminated" if ok else "unconfirmed", time.monotonic() - start, f,
                          elimination=out, expect_proof=expect_proof,
                          message="" if ok else "result not proved equivalent to the expected formula")
    except (ResourceError, GroundingError, NormalFormError, UnboundSymbol, MacroError) as e:
        if task.kind == "eliminate":
            state.last_result = None
        return TaskResult(task, False, "error", time.monotonic() - start, f, message=str(e))


@dataclass
class Report:
    document: Document
    results: list
    wall_time: float
    options: Options

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def counts(self) -> dict:
        out = {"passed": sum(r.passed for r in self.results), "total": len(self.results)}
        for k in KINDS:
            out[k] = sum(1 for r in self.results if r.task.kind == k)
        return out


def run_document(doc: Document, options: Optional[Options] = None) -> Report:
    options = options or Options()
    state = ExpansionState(doc.kb)
    start = time.monotonic()
    results = [run_task(state, t, options) for t in doc.tasks()]
    return Report(doc, results, time.monotonic() - start, options)


def process_document(path, options: Optional[Options] = None) -> Report:
    text = Path(path).read_text(encoding="utf-8")
    return run_document(parse_document(text), options)


# ------------------------------------------------------------- rendering

_KIND_TEXT = {"valid": "validity", "notvalid": "non-validity", "eliminate": "elimination"}


def _show(f, style):
    return print_formula(to_implicational(f) if style != "ascii" else f, style)


def render_markdown(report: Report, timestamps: Optional[bool] = None) -> str:
    """Markdown report with unicode formulas; ``timestamps=False`` drops all timings."""
    stamp = report.options.timestamps if timestamps is None else timestamps
    out = []
    results = iter(report.results)
    for b in report.document.blocks:
        if isinstance(b, Prose):
            out.append(b.text)
            out.append("")
        elif isinstance(b, Definition):
            d = b.macro
            where = ""
            if d.where:
                where = " where " + ", ".join(str(w) for w in d.where)
            out.append("> **%s** := %s%s" % (d.header(), print_formula(d.body, "unicode"), where))
            out.append("")
        elif isinstance(b, Directive):
            out.extend(_task_markdown(next(results), stamp, report.options.trace))
            out.append("")
    c = report.counts()
    out.append("## Summary")
    out.append("")
    out.append("| task | kind | verdict | status |" + (" seconds |" if stamp else ""))
    out.append("|---|---|---|---|" + ("---|" if stamp else ""))
    for r in report.results:
        row = "| %s | %s | %s | %s |" % (r.task.id, r.task.kind, r.verdict, "pass" if r.passed else "FAIL")
        if stamp:
            row += " %.2f |" % r.elapsed
        out.append(row)
    out.append("")
    line = "%d of %d tasks passed" % (c["passed"], c["total"])
    if stamp:
        line += " in %.2f s" % report.wall_time
    out.append(line + ".")
    return "\n".join(out) + "\n"


def _task_markdown(r: TaskResult, stamp: bool, trace: bool) -> list:
    t = r.task
    label = " [%s]" % t.commentary if t.commentary else ""
    status = "pass" if r.passed else "FAIL"
    out = ["### %s%s: %s task, %s" % (t.id, label, _KIND_TEXT[t.kind], status), ""]
    out.append("Input: %s" % print_formula(t.parsed, "unicode"))
    out.append("")
    if t.kind == "valid":
        p = r.proof
        if r.passed:
            out.append("Proved valid.")
        else:
            out.append("Not proved (%s). %s" % (r.verdict, r.message))
        if p is not None:
            stats = "inferences: %d, depth: %d" % (p.inferences, p.depth)
            if stamp:
                stats += ", %.2f s" % p.elapsed
            out.append("")
            out.append(stats)
            if trace and p.proved:
                out.append("")
                out.append("```")
                out.extend(format_trace(p))
                out.append("```")
    elif t.kind == "notvalid":
        if r.countermodel is not None:
            out.append("Not valid; countermodel:")
            out.append("")
            out.append("```")
            out.extend(r.countermodel.describe())
            out.append("```")
        else:
            out.append("No countermodel found (%s). %s" % (r.verdict, r.message))
    else:
        e = r.elimination
        if e is not None and e.eliminated:
            out.append("Elimination result: %s" % _show(e.result, "unicode"))
            if t.expect_parsed is not None:
                out.append("")
                verdict = r.expect_proof.verdict if r.expect_proof else "not checked"
                out.append("Expected: %s (equivalence %s)" % (print_formula(t.expect_parsed, "unicode"), verdict))
        else:
            out.append("Elimination failed: %s" % r.message)
        if trace and e is not None:
            out.append("")
            out.append("```")
            out.extend(e.trace)
            out.append("```")
    if stamp:
        out.append("")
        out.append("Time: %.2f s" % r.elapsed)
    return out


def _latex_escape(text: str) -> str:
    for a, b in (("\\", "\\textbackslash{}"), ("&", "\\&"), ("%", "\\%"), ("$", "\\$"),
                 ("#", "\\#"), ("_", "\\_"), ("{", "\\{"), ("}", "\\}")):
        if a == "\\":
            text = text.replace(a, "\x00")
        else:
            text = text.replace(a, b)
    return text.replace("\x00", "\\textbackslash{}")


def render_latex(report: Report, timestamps: Optional[bool] = None) -> str:
    stamp = report.options.timestamps if timestamps is None else timestamps
    out = ["\\documentclass{article}", "\\usepackage{amsmath,amssymb}", "\\begin{document}", ""]
    results = iter(report.results)
    for b in report.document.blocks:
        if isinstance(b, Prose):
            out.append(_latex_escape(b.text))
            out.append("")
        elif isinstance(b, Definition):
            d = b.macro
            head = _latex_escape(d.header())
            out.append("\\noindent\\textbf{%s} $:=$ $%s$\\par" % (head, print_formula(d.body, "latex")))
            out.append("")
        elif isinstance(b, Directive):
            r = next(results)
            t = r.task
            label = " [%s]" % _latex_escape(t.commentary) if t.commentary else ""
            out.append("\\paragraph{%s%s (%s)}" % (_latex_escape(t.id), label, "pass" if r.passed else "FAIL"))
            out.append("$%s$\\par" % print_formula(t.parsed, "latex"))
            if t.kind == "valid":
                out.append("Proved valid." if r.passed else "Not proved (%s)." % _latex_escape(r.verdict))
            elif t.kind == "notvalid":
                if r.countermodel is not None:
                    out.append("Not valid; countermodel: %s."
                               % _latex_escape("; ".join(r.countermodel.describe())))
                else:
                    out.append("No countermodel found.")
            else:
                e = r.elimination
                if e is not None and e.eliminated:
                    out.append("Elimination result: $%s$" % _show(e.result, "latex"))
                else:
                    out.append("Elimination failed: %s." % _latex_escape(r.message))
            if stamp:
                out.append("(%.2f s)" % r.elapsed)
            out.append("")
    c = report.counts()
    line = "%d of %d tasks passed" % (c["passed"], c["total"])
    if stamp:
        line += " in %.2f s" % report.wall_time
    out.append(line + ".")
    out.append("\\end{document}")
    return "\n".join(out) + "\n"
