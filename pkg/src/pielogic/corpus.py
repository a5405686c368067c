"""The bundled knowledge base and task list (``data/godel.pie``)."""

from __future__ import annotations

import hashlib
from importlib import resources

from .document import Document, parse_document

CORPUS_FILE = "godel.pie"
CORPUS_SHA256 = "82a7097ee97ad02c3ec9391423097b5024dd29879d7d08af018d7d17b20b46e8"


class CorpusError(RuntimeError):
    pass


def corpus_text(verify: bool = True) -> str:
    data = resources.files("pielogic").joinpath("data", CORPUS_FILE).read_bytes()
    if verify:
        digest = hashlib.sha256(data).hexdigest()
        if digest != CORPUS_SHA256:
            raise CorpusError("corpus file %s is corrupted (sha256 %s)" % (CORPUS_FILE, digest))
    return data.decode("utf-8")


def corpus_path():
    """Filesystem location of the bundled corpus document."""
    return resources.files("pielogic").joinpath("data", CORPUS_FILE)


def load_document() -> Document:
    return parse_document(corpus_text())


def load_corpus():
    """``(KnowledgeBase, tasks)`` of the bundled corpus, tasks in document order."""
    doc = load_document()
    return doc.kb, doc.tasks()


def task_by_id(tasks, tid: str):
    for t in tasks:
        if t.id == tid:
            return t
    raise KeyError(tid)
