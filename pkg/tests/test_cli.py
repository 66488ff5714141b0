import io
import subprocess
import sys

import pytest

from saa.cli import canonical_from_kv, main, parse_kv
from saa.core import Presentation
from saa.families import FamilyLabel, instantiate_family, label
from saa.fileformat import format_presentation, parse_presentation
from saa.gf import GF


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def family_file(write, F, tag, *params, seed=None):
    lab = label(F, tag, *params)
    if seed is None:
        return write(f"{tag}.saa", format_presentation(instantiate_family(F, lab)))
    code, text = run("random", str(lab), "--field", F.literal(), "--seed", str(seed))
    assert code == 0
    return write(f"{tag}_{seed}.saa", text)


def test_check(write):
    code, out = run("check", family_file(write, GF(5), "P51"))
    assert code == 0
    doc = parse_kv(out)
    assert doc["status"] == "ok" and doc["nilpotent"] == "true" and doc["class"] == "2"


def test_check_parse_errors(write, capsys):
    dup = write("dup.saa", "field: gf(5)\ndim: 10\ntriple y1 y2 y3 = 1\ntriple y1 y2 y3 = 1\n")
    assert run("check", dup)[0] == 2
    assert "line 4" in capsys.readouterr().err
    rep = write("rep.saa", "field: gf(5)\ndim: 10\ntriple x1 x1 y2 = 1\n")
    assert run("check", rep)[0] == 2
    assert "repeated symbol" in capsys.readouterr().err


def test_exit_codes(write, tmp_path):
    F = GF(5)
    assert run("check", str(tmp_path / "missing.saa"))[0] == 2
    assert run("check")[0] == 2
    assert run("bogus")[0] == 2
    assert run("census", "--field", "gf(6)")[0] == 2
    nonnil = write("nn.saa", format_presentation(Presentation(F, 5, {("x1", "x2", "y1"): 1})))
    assert run("canon", nonnil)[0] == 5
    assert run("check", nonnil)[0] == 0  # check reports nilpotency rather than failing
    assert parse_kv(run("check", nonnil)[1])["nilpotent"] == "false"
    small = write("small.saa", format_presentation(Presentation(F, 4, {("y1", "y2", "y3"): 1})))
    assert run("canon", small)[0] == 4


def test_canon_label_and_kv_round_trip(write):
    F = GF(5)
    path = family_file(write, F, "P32", seed=4)
    code, out = run("canon", path, "--format", "kv")
    assert code == 0
    assert parse_kv(out)["label"] == "P10_3_2"
    F2, lab, P = canonical_from_kv(out)
    assert F2 == F and lab == FamilyLabel("P32") and P == instantiate_family(F, lab)
    code, text = run("canon", path)
    assert code == 0 and text.startswith("label: P10_3_2\n") and "trace:" in text


def test_canon_unsupported(write):
    from saa.core import Algebra, random_nilpotent_presentation
    import numpy as np

    F = GF(3)
    rng = np.random.default_rng(5)
    while True:
        P = random_nilpotent_presentation(F, 5, rng, density=0.2)
        Z = Algebra(P).center()
        if Z.dim in (2, 4) and Z.is_isotropic():
            break
    code, out = run("canon", write("u.saa", format_presentation(P)))
    assert code == 4 and parse_kv(out)["label"] == "unsupported"


def test_iso(write):
    F = GF(7)
    a = family_file(write, F, "P36", 1)
    b = family_file(write, F, "P36", 2, seed=3)
    c = family_file(write, F, "P36", 6, seed=8)
    code, out = run("iso", a, b)
    assert code == 0 and parse_kv(out)["isomorphic"] == "false"
    doc = parse_kv(run("iso", a, c)[1])
    assert doc["isomorphic"] == "true" and doc["label.1"] == doc["label.2"] == "P10_3_6(1)"
    assert run("iso", a)[0] == 2


def test_report(write):
    F = GF(5)
    doc = parse_kv(run("report", family_file(write, F, "Q41", 1), "--format", "kv")[1])
    assert doc["center_dim"] == "4" and doc["center_isotropic"] == "false"
    assert "tau_type" not in doc


@pytest.mark.parametrize("field, total", [("gf(3)", "12"), ("gf(4)", "20"), ("gf(2^3)", "12")])
def test_census(field, total):
    code, out = run("census", "--field", field, "--format", "kv")
    doc = parse_kv(out)
    assert code == 0 and doc["total"] == total
    assert doc["count.unsupported"] == "unknown"
    text = run("census", "--field", field)[1]
    assert "unsupported" in text.splitlines()[-2]


def test_random_default_field_and_determinism():
    code, out = run("random", "--seed", "7")
    assert code == 0
    P = parse_presentation(out)
    assert P.field == GF(3) and P.dim == 10 and P.is_nilpotent_form()
    assert run("random", "--seed", "7")[1] == out
    assert run("random", "--seed", "8")[1] != out
    assert parse_presentation(run("random", "--dim", "8")[1]).dim == 8


def test_outputs_are_byte_stable(write):
    F = GF(7)
    path = family_file(write, F, "P38", 1, 3, seed=2)
    for cmd in ("canon", "report", "check"):
        for fmt in ("text", "kv"):
            first = run(cmd, path, "--format", fmt, "--seed", "4")[1]
            assert run(cmd, path, "--format", fmt, "--seed", "4")[1] == first


def test_stdin_input():
    text = format_presentation(instantiate_family(GF(3), FamilyLabel("P51")))
    proc = subprocess.run([sys.executable, "-m", "saa.cli", "check", "-"], input=text,
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "status: ok" in proc.stdout


def test_version():
    assert run("--version")[0] == 0
