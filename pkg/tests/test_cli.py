import json
import os
import subprocess
import sys

import pytest

from surf10.cli import main
from surf10.groebner import read_ideal, write_ideal
from surf10.idealops import is_unit, same_ideal

from _fixtures import I, x0, x1


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_numerology_counts(capsys):
    code, out, _ = run(capsys, "numerology", "--pi", "9", "--chi", "2")
    assert code == 0
    assert "#5=12 #6=3" in out
    code, out, _ = run(capsys, "numerology", "--pi", "9", "--chi", "2", "--json")
    d = json.loads(out)
    assert (d["sharp5"], d["sharp6"], d["K2"]) == (12, 3, -3)
    assert sorted(f["family"] for f in d["families"]) == ["C", "D", "E"]


def test_numerology_table(capsys):
    code, out, _ = run(capsys, "numerology", "--table")
    assert code == 0
    assert len(out.strip().splitlines()) == 9
    code, out, _ = run(capsys, "numerology", "--table", "--json")
    rows = json.loads(out)
    assert [r["family"] for r in rows] == list("ABCDEFGH")


def test_numerology_outside_table(capsys):
    assert run(capsys, "numerology", "--pi", "7")[0] == 3
    assert run(capsys, "numerology", "--pi", "10", "--chi", "1")[0] == 3


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "construct", "Q", "--out", str(tmp_path))[0] == 64
    assert run(capsys, "construct", "A", "--prime", "100", "--out", str(tmp_path))[0] == 64
    assert run(capsys, "construct", "A", "--prime", str(2 ** 31 - 1))[0] == 64
    assert run(capsys, "construct", "A", "--range", "5..2")[0] == 64
    assert run(capsys, "numerology")[0] == 64
    assert run(capsys)[0] == 64
    code, _, err = run(capsys, "frobnicate")
    assert code == 64 and "usage" in err


def test_unparseable_file(capsys, tmp_path):
    bad = tmp_path / "bad.ideal"
    bad.write_text("x0 + + x9\n")
    assert run(capsys, "certify", str(bad), "--family", "A")[0] == 65
    assert run(capsys, "certify", str(tmp_path / "missing.ideal"), "--family", "A")[0] == 65


@pytest.fixture(scope="module")
def built_G(tmp_path_factory):
    out = tmp_path_factory.mktemp("G")
    code = main(["construct", "G", "--prime", "101", "--seed", "7", "--out", str(out)])
    return code, out


def test_construct_writes_artifacts(built_G):
    code, out = built_G
    assert code == 0
    names = set(os.listdir(out))
    assert {"G.ideal", "G.Z.ideal", "G.CI1.ideal", "G.report.json", "G.timings.json",
            "G.betti.txt"} <= names
    rep = json.loads((out / "G.report.json").read_text())
    assert rep["passed"] and rep["prime"] == 101
    assert rep["route"] == "linkage"
    assert "timings" not in rep
    assert read_ideal(out / "G.ideal").p == 101


def test_certify_right_and_wrong_family(capsys, built_G):
    _, out = built_G
    path = str(out / "G.ideal")
    code, text, _ = run(capsys, "certify", path, "--family", "G", "--prime", "101")
    assert code == 0 and text.rstrip().endswith("PASS")
    code, text, _ = run(capsys, "certify", path, "--family", "B", "--prime", "101")
    assert code == 1
    assert "Betti differences" in text


def test_link_command(capsys, built_G, tmp_path):
    _, out = built_G
    dest = tmp_path / "res.ideal"
    code, text, _ = run(capsys, "link", str(out / "G.ideal"), "4", "4", "--out", str(dest))
    assert code == 0
    assert "(6, 2," in text
    assert dest.exists()


def test_link_of_a_plane(capsys, tmp_path):
    src = tmp_path / "plane.ideal"
    write_ideal(I(x0, x1), src)
    code, text, _ = run(capsys, "link", str(src), "1", "1")
    assert code == 0 and "empty" in text
    assert is_unit(read_ideal(tmp_path / "plane.link11.ideal"))


def test_link_impossible(capsys, tmp_path):
    src = tmp_path / "cubics.ideal"
    write_ideal(I(x0 ** 3, x1 ** 3), src)
    assert run(capsys, "link", str(src), "2", "2")[0] == 4


def test_determinism(built_G, tmp_path):
    _, first = built_G
    second = tmp_path / "again"
    assert main(["construct", "G", "--prime", "101", "--seed", "7", "--out", str(second)]) == 0
    for name in ("G.ideal", "G.Z.ideal", "G.report.json", "G.betti.txt"):
        assert (first / name).read_bytes() == (second / name).read_bytes()
    assert same_ideal(read_ideal(first / "G.ideal"), read_ideal(second / "G.ideal"))


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "surf10.cli", "numerology", "--pi", "10", "--chi", "4"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert "#5=6 #6=1" in r.stdout
