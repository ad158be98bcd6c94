import io
from pathlib import Path

import pytest

from sealtc.cli import main

ROOT = Path(__file__).parent.parent
P0_FILE = str(ROOT / "demos" / "p0.lvl")
RELABEL_FILE = str(ROOT / "demos" / "relabel.dc")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_typecheck_file():
    code, out, _ = run("typecheck", "--poset", P0_FILE, "--obs", "", RELABEL_FILE)
    assert code == 0
    assert out.strip() == "type: [bool]@L -> [[unit]@H + [unit]@H]@H"


def test_translate_prints_context():
    code, out, _ = run("translate", "--poset", P0_FILE, "--obs", "H", "--ctx", "x:[bool]@L", "unseal@L x")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("context: x:a@L -> bool, c$L$L:a@L -> a@L")
    assert "k$H$0:a@H" in lines[0]
    assert lines[1] == "x (c$H$L k$H$0)"


def test_equiv_related():
    code, out, _ = run("equiv", "--poset", P0_FILE, "--obs", "L", "seal@H (i1 ())", "seal@H (i2 ())",
                       "--type", "[unit+unit]@H")
    assert (code, out.strip()) == (0, "Related")


def test_equiv_not_related_machine():
    code, out, _ = run("equiv", "--obs", "H", "seal@H (i1 ())", "seal@H (i2 ())", "--type", "[bool]@H",
                       "--machine")
    assert code == 1
    assert out.strip() == r"verdict=NotRelated;witness=unseal@H\; i1 () vs i2 ()"


def test_equiv_stlc():
    code, out, _ = run("equiv", "--calc", "stlc", "--ctx", "k:a@H", r"\j:a@H. i1 ()", r"\j:a@H. i2 ()",
                       "--type", "a@H -> bool")
    assert code == 1 and out.startswith("NotRelated")


def test_unknown_exit_code():
    code, out, _ = run("equiv", r"\h:(bool -> bool) -> bool. i1 ()", r"\h:(bool -> bool) -> bool. i1 ()",
                       "--type", "((bool -> bool) -> bool) -> bool")
    assert code == 3 and out.startswith("Unknown")


def test_exit_codes_for_errors():
    assert run("typecheck", "unseal@H (seal@H ())", "--obs", "H")[0] == 0
    assert run("typecheck", "unseal@H (seal@H ())", "--obs", "L")[0] == 1
    assert run("typecheck", "--ctx", "x:[unit]@H", "unseal@H x", "--obs", "L")[0] == 1
    assert run("typecheck", "\\x:")[0] == 2
    assert run("typecheck", "()", "--obs", "Q")[0] == 2
    assert run("typecheck", "()", "--poset", "levels: L L")[0] == 2
    assert run("normalize", r"(\x:unit. x) ((\x:unit. x) ())", "--fuel", "1")[0] == 3
    assert run("bogus")[0] == 2


def test_normalize_each_calculus():
    assert run("normalize", "--obs", "L", "unseal@L (seal@L ())")[1].splitlines()[0] == "()"
    assert run("normalize", "--calc", "dccpc", "bind x = eta@L () in x")[1].splitlines()[0] == "()"
    code, out, _ = run("normalize", "--calc", "stlc", r"\z:unit+unit. p1 ((case z of a => \w:unit. <w, w> "
                       r"| b => \w:unit. <w, w>) ())")
    assert out.splitlines()[0] == r"\z:bool. case z of a => () | b => ()"


def test_untranslate():
    code, out, _ = run("untranslate", "--type", "[[bool]@L -> bool]@L", r"\k:a@L. \f:a@L -> bool. f k")
    assert code == 0 and out.splitlines()[0] == r"seal@L (\f:[bool]@L. unseal@L f)"


def test_dccpc_round_trip_commands():
    code, out, _ = run("to-dccpc", "--obs", "L", r"\x:[bool]@L. unseal@L x")
    assert code == 0 and out.splitlines()[0] == r"\x:T@L bool. bind z = x in z"
    code, out, _ = run("from-dccpc", "--obs", "L", r"\x:T@L bool. bind z = x in z")
    assert code == 0 and out.splitlines()[0] == r"\x:[bool]@L. (\z:bool. z) (unseal@L x)"
    code, out, _ = run("unprotect", "--level", "L", "--type", "T@L bool")
    assert code == 0 and out.splitlines()[0] == r"\x:[[bool]@L]@L. seal@L (unseal@L (unseal@L x))"


def test_ni_and_ctx_equiv():
    code, out, _ = run("ni-check", "--obs", "L", "--ctx", "x:[bool]@H",
                       "seal@H (case unseal@H x of _ => i2 () | _ => i1 ())")
    assert (code, out.strip()) == (0, "Related")
    code, out, _ = run("ctx-equiv", "--obs", "H", "seal@H (i1 ())", "seal@H (i2 ())", "--type", "[bool]@H",
                       "--bound", "8", "--machine")
    assert code == 1 and out.startswith("verdict=NotRelated;witness=")
    code, out, _ = run("ctx-equiv", "--obs", "L", "seal@H (i1 ())", "seal@H (i2 ())", "--type", "[bool]@H",
                       "--bound", "6", "--strict")
    assert code == 3


def test_reps():
    code, out, _ = run("reps", "--type", "bool -> bool", "--obs", "L", "--machine")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 5 and lines[-1] == "count=4;exact=true"


def test_demo_is_deterministic():
    a = run("demo", "tz-counterexample")
    b = run("demo", "tz-counterexample")
    assert a == b and a[0] == 0
    assert a[1] == (ROOT / "tests" / "golden" / "counterexample.txt").read_text(encoding="utf-8")


def test_machine_output_is_stable():
    args = ("reps", "--type", "[bool]@H * bool", "--obs", "H", "--machine")
    assert run(*args) == run(*args)
    assert all("=" in line for line in run(*args)[1].splitlines())


@pytest.mark.parametrize("flag", ["--term-size", "--fuel", "--bound"])
def test_limits_must_be_positive(flag):
    assert run("equiv", "()", "()", "--type", "unit", flag, "0")[0] == 2
