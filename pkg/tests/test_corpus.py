import hashlib

import pytest

from pielogic import corpus as corpus_mod
from pielogic.corpus import (
    CORPUS_SHA256, CorpusError, corpus_path, corpus_text, load_corpus, load_document, task_by_id,
)
from pielogic.document import parse_document
from pielogic.formula import MacroCall, alpha_equal, subformulas
from pielogic.parser import parse_formula


@pytest.fixture(scope="module")
def doc():
    return load_document()


def test_checksum_matches():
    data = corpus_path().read_bytes()
    assert hashlib.sha256(data).hexdigest() == CORPUS_SHA256
    assert corpus_text() == data.decode("utf-8")


def test_checksum_mismatch_is_detected(monkeypatch):
    monkeypatch.setattr(corpus_mod, "CORPUS_SHA256", "0" * 64)
    with pytest.raises(CorpusError, match="corrupted"):
        load_corpus()
    assert corpus_text(verify=False)


def test_definitions(doc):
    defs = doc.definitions()
    assert len(defs) == 37
    assert len({d.key for d in defs}) == 37
    assert ("last_result", 0) not in {d.key for d in defs}
    assert {d.name for d in defs} >= {"ax_3", "pre_lemma_1", "coro", "symmetric", "euclidean",
                                      "frame_cond_simp", "val_ess", "val_ne"}


def test_task_list(doc):
    tasks = doc.tasks()
    kinds = [t.kind for t in tasks]
    assert kinds.count("valid") == 15 and kinds.count("notvalid") == 2 and kinds.count("eliminate") == 3
    assert [t.id for t in tasks] == ["V1", "V2", "V3", "V4", "E1", "V5", "V6", "E2", "V7", "V8",
                                     "V9", "V10", "NV1", "V11", "E3", "V12", "V13", "V14", "NV2", "V15"]
    assert all(t.parsed is not None for t in tasks)
    assert all(t.expect_parsed is not None for t in tasks if t.kind == "eliminate")


def test_selected_tasks(doc):
    tasks = doc.tasks()
    assert task_by_id(tasks, "V2").formula == "pre_lemma_1(v) -> lemma_1(v)"
    nv1 = task_by_id(tasks, "NV1")
    assert nv1.kind == "notvalid" and nv1.expectation == "countermodel"
    e3 = task_by_id(tasks, "E3")
    assert alpha_equal(e3.expect_parsed, parse_formula(
        "all X: all Y: all Z: (r(X,Y) & r(X,Z) -> r(Y,X) | r(Y,Z) | X = Y | Y = Z)"))
    with pytest.raises(KeyError):
        task_by_id(tasks, "V99")


def _reads_last_result(t):
    return any(isinstance(g, MacroCall) and g.name == "last_result" for g in subformulas(t.parsed))


def test_last_result_follows_an_elimination(doc):
    tasks = doc.tasks()
    readers = [t.id for t in tasks if _reads_last_result(t)]
    assert readers == ["V5", "V7", "V12"]
    for tid, source in (("V5", "E1"), ("V7", "E2"), ("V12", "E3")):
        ids = [t.id for t in tasks]
        before = [t for t in tasks[:ids.index(tid)] if t.kind == "eliminate"]
        assert before[-1].id == source


def test_knowledge_base_is_acyclic(doc):
    kb = doc.kb
    state = {}

    def visit(key):
        if state.get(key) == "done":
            return
        assert state.get(key) != "active", key
        state[key] = "active"
        d = kb.lookup(*key)
        for g in subformulas(d.body):
            if isinstance(g, MacroCall) and (g.name, len(g.args)) in kb:
                visit((g.name, len(g.args)))
        state[key] = "done"

    for d in doc.definitions():
        visit(d.key)


def test_corpus_text_parses_identically(doc):
    again = parse_document(corpus_text())
    assert [t.id for t in again.tasks()] == [t.id for t in doc.tasks()]
    assert [str(d) for d in again.definitions()] == [str(d) for d in doc.definitions()]
