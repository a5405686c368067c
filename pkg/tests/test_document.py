import pytest

from pielogic.corpus import corpus_text, load_document
from pielogic.document import (
    Definition, Directive, Options, Prose, parse_document, process_document, render_latex,
    render_markdown, run_document,
)
from pielogic.parser import ParseError
from pielogic.prover import Budget

E1_AND_V5 = """#eliminate E1 [D2]: all2 Q/2: val_ess(v,p,x,Q)
#expect: p(v,x) & all Y: all Z: (e(Y,Z) & p(Y,Z) & r(v,Y) -> Y = v) &
   all Y: all Z: (e(Y,Z) & p(Y,Z) & r(v,Y) -> Z = x)

The built-in macro last_result refers to the result of the latest elimination.

#check valid V5 [D2]: p(v,x) & all W: (r(v,W) -> all Y: (e(W,Y) -> (p(W,Y) -> W = v & Y = x)))
   <-> last_result
"""

V5_AND_E1 = """#check valid V5 [D2]: p(v,x) & all W: (r(v,W) -> all Y: (e(W,Y) -> (p(W,Y) -> W = v & Y = x)))
   <-> last_result

#eliminate E1 [D2]: all2 Q/2: val_ess(v,p,x,Q)
#expect: p(v,x) & all Y: all Z: (e(Y,Z) & p(Y,Z) & r(v,Y) -> Y = v) &
   all Y: all Z: (e(Y,Z) & p(Y,Z) & r(v,Y) -> Z = x)
"""

V10 = "#check valid V10 [T3]: symmetric | euclidean -> (pre_thm_3(v) -> thm_3(v))"
V10_WEAKENED = "#check valid V10 [T3]: pre_thm_3(v) -> thm_3(v)"

SMALL = """Some prose.

```def
def refl := all X: r(X,X).
def ser := all X: ex Y: r(X,Y).
```

#check valid: refl -> ser
#check notvalid: ser -> refl
#eliminate: ex2 P/1: (P(a) & ~P(b))
#expect: a != b
#check valid: last_result <-> ~(a = b)
"""


@pytest.fixture(scope="module")
def corpus_report():
    return run_document(load_document(), Options())


def _by_id(report, tid):
    return next(r for r in report.results if r.task.id == tid)


# ----------------------------------------------------------------- parsing

def test_empty_document():
    doc = parse_document("")
    report = run_document(doc)
    assert doc.blocks == [] and report.results == [] and report.passed


def test_block_kinds():
    doc = parse_document(SMALL)
    kinds = [type(b) for b in doc.blocks]
    assert kinds == [Prose, Definition, Definition, Directive, Directive, Directive, Directive]
    assert [t.id for t in doc.tasks()] == ["V1", "NV1", "E1", "V2"]
    assert doc.tasks()[2].expect == "a != b"


def test_forward_reference_is_rejected():
    text = "#check valid: later\n\n```def\ndef later := p | ~p.\n```\n"
    with pytest.raises(ParseError, match="line 1"):
        parse_document(text)


def test_duplicate_task_id():
    with pytest.raises(ParseError, match="duplicate task id V1"):
        parse_document("#check valid V1: p | ~p\n#check valid V1: p -> p\n")


def test_malformed_directives():
    with pytest.raises(ParseError, match="unknown directive"):
        parse_document("#prove: p")
    with pytest.raises(ParseError, match="#expect"):
        parse_document("#check valid: p | ~p\n#expect: p\n")
    with pytest.raises(ParseError, match="unterminated"):
        parse_document("```def\ndef a := p.\n")
    with pytest.raises(ParseError, match="line 3"):
        parse_document("text\n\n#check valid: p &\n")


# --------------------------------------------------------------- execution

def test_small_document_passes():
    report = run_document(parse_document(SMALL))
    assert report.passed
    assert [r.verdict for r in report.results] == ["proved", "countermodel", "eliminated", "proved"]
    assert report.counts() == {"passed": 4, "total": 4, "valid": 2, "notvalid": 1, "eliminate": 1}


def test_corpus_report_passes(corpus_report):
    assert corpus_report.passed
    assert len(corpus_report.results) == 20


def test_order_of_elimination_matters():
    text = corpus_text()
    assert E1_AND_V5 in text
    report = run_document(parse_document(text.replace(E1_AND_V5, V5_AND_E1)))
    v5 = _by_id(report, "V5")
    assert not v5.passed and v5.verdict == "error" and "last_result" in v5.message
    assert _by_id(report, "E1").passed


def test_weakened_hypothesis_fails():
    text = corpus_text()
    assert V10 in text
    report = run_document(parse_document(text.replace(V10, V10_WEAKENED)),
                          Options(budget=Budget(max_seconds=3)))
    assert not report.passed
    assert [r.task.id for r in report.results if not r.passed] == ["V10"]
    assert _by_id(report, "V10").verdict in ("exhausted", "timeout")


def test_false_claim_fails():
    report = run_document(parse_document("#check valid: p & ~p\n"), Options(budget=Budget(max_seconds=1)))
    assert not report.passed
    assert report.results[0].verdict in ("exhausted", "timeout")


def test_failed_elimination_clears_last_result():
    text = ("#eliminate: ex2 P/1: P(a)\n"
            "#eliminate: all2 P/1: (P(a) & all X: all Y: (P(X) & q(X,Y) -> P(Y)) -> P(b))\n"
            "#check valid: last_result\n")
    report = run_document(parse_document(text), Options(budget=Budget(max_seconds=1)))
    assert [r.verdict for r in report.results] == ["eliminated", "failed", "error"]


def test_process_document(tmp_path):
    path = tmp_path / "small.md"
    path.write_text(SMALL, encoding="utf-8")
    assert process_document(path).passed


# --------------------------------------------------------------- rendering

def test_markdown_is_deterministic_without_timestamps(corpus_report):
    first = render_markdown(corpus_report, timestamps=False)
    second = render_markdown(run_document(load_document()), timestamps=False)
    assert first == second
    assert "seconds" not in first and "20 of 20 tasks passed." in first


def test_markdown_with_timestamps(corpus_report):
    text = render_markdown(corpus_report)
    assert "| seconds |" in text


def test_latex_renders(corpus_report):
    text = render_latex(corpus_report, timestamps=False)
    assert "\\begin{document}" in text and "\\end{document}" in text
    assert text == render_latex(corpus_report, timestamps=False)
