import io
import subprocess
import sys

import pytest

from pielogic.cli import main
from pielogic.corpus import corpus_text
from pielogic.tptp import parse_tptp

V10 = "#check valid V10 [T3]: symmetric | euclidean -> (pre_thm_3(v) -> thm_3(v))"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_check_corpus():
    code, text = run("check", "--no-timestamps")
    assert code == 0
    lines = text.splitlines()
    assert len(lines) == 21 and lines[-1] == "20/20 tasks passed"
    assert all(l.startswith("ok") for l in lines[:-1])


def test_check_mutated_corpus_exits_1(tmp_path):
    path = tmp_path / "mutated.md"
    path.write_text(corpus_text().replace(V10, "#check valid V10 [T3]: pre_thm_3(v) -> thm_3(v)"),
                    encoding="utf-8")
    code, text = run("check", str(path), "--budget-seconds", "3", "--no-timestamps")
    assert code == 1
    assert [l.split()[1] for l in text.splitlines() if l.startswith("FAIL")] == ["V10"]


def test_missing_file_exits_2(tmp_path, capsys):
    code, _ = run("check", str(tmp_path / "nope.md"))
    assert code == 2
    assert "cannot read" in capsys.readouterr().err


def test_parse_error_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.md"
    path.write_text("#check valid: p &\n", encoding="utf-8")
    assert run("check", str(path))[0] == 2
    assert "line 1" in capsys.readouterr().err


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"], out=io.StringIO())
    assert e.value.code == 2


def test_prove():
    assert run("prove", "p | ~p")[0] == 0
    code, text = run("prove", "p & ~p", "--budget-seconds", "1")
    assert code == 1 and not text.startswith("proved")
    code, text = run("prove", "pre_lemma_1(v) -> lemma_1(v)", "--trace")
    assert code == 0 and text.startswith("proved") and len(text.splitlines()) > 1


def test_expand(tmp_path):
    assert run("expand", "ax_3(v)") == (0, "world(v) -> pos(v,'g')\n")
    kb = tmp_path / "defs.pie"
    kb.write_text("def refl := all X: r(X,X).\n", encoding="utf-8")
    assert run("expand", "refl", "--kb", str(kb), "--style", "unicode") == (0, "∀_G1 r(_G1,_G1)\n")
    # a name with another arity is an ordinary atom
    assert run("expand", "refl(v)", "--kb", str(kb)) == (0, "refl(v)\n")
    assert run("expand", "refl &", "--kb", str(kb))[0] == 2


def test_eliminate():
    code, text = run("eliminate", "ex2 P/1: (P(a) & ~P(b))")
    assert code == 0 and text == "b != a\n"
    code, text = run("eliminate", "all2 g/2: all V: (pre_thm_3(V) -> thm_3(V))", "--trace")
    assert code == 1 and "failed:" in text


def test_countermodel():
    code, text = run("countermodel", "frame_cond_simp -> symmetric | euclidean")
    assert code == 0 and text.startswith("domain: {1, 2}")
    code, text = run("countermodel", "p | ~p", "--max-domain", "2")
    assert code == 1 and "no countermodel" in text


def test_export_tptp(tmp_path):
    code, text = run("export-tptp", "ax_3(v) -> ax_3(v)")
    assert code == 0
    (name, role, _), = parse_tptp(text)
    assert (name, role) == ("c1", "conjecture")
    target = tmp_path / "out.p"
    assert run("export-tptp", "p(a)", "--role", "axiom", "-o", str(target))[0] == 0
    assert target.read_text() == "fof(a1, axiom, p(a)).\n"


def test_render(tmp_path):
    md = tmp_path / "report.md"
    assert run("render", "-o", str(md), "--no-timestamps")[0] == 0
    assert "20 of 20 tasks passed." in md.read_text(encoding="utf-8")
    tex = tmp_path / "report.tex"
    assert run("render", "-o", str(tex), "--latex")[0] == 0
    assert "\\begin{document}" in tex.read_text(encoding="utf-8")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pielogic.cli", "prove", "p -> p"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("proved")
