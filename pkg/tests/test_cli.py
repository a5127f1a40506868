import io
import subprocess
import sys

import pytest

from binmat import biwheel, biwheel_plus, cycle_K4, fano, read_matroid, write_matroid
from binmat.cli import EXIT_BUDGET, EXIT_NO, EXIT_OK, EXIT_USAGE, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def values(text):
    out = {}
    for line in text.splitlines():
        if "=" in line:
            k, v = line.split("=", 1)
            out.setdefault(k, v)
    return out


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, m in [("fano", fano()), ("k4", cycle_K4()), ("bp4", biwheel_plus(4)), ("bw4", biwheel(4))]:
        paths[name] = str(tmp_path / f"{name}.bmx")
        write_matroid(m, paths[name])
    return paths


def test_family_to_stdout_and_file(tmp_path):
    code, out, _ = call("family", "--name", "biwheel_plus", "--n", "4")
    assert code == EXIT_OK
    assert out.splitlines()[:2] == ["matroid biwheel_plus(4)", "rank 5"]
    path = tmp_path / "f.bmx"
    code, out, _ = call("family", "--name", "fano", "-o", str(path))
    assert code == EXIT_OK and values(out)["elements"] == "7"
    assert read_matroid(path) == fano()


def test_family_bad_order():
    code, _, err = call("family", "--name", "mobius_delta", "--n", "3")
    assert code == EXIT_USAGE and "n >= 4" in err


def test_analyze(files):
    code, out, _ = call("analyze", files["fano"])
    v = values(out)
    assert code == EXIT_OK
    assert v["class"] == "internally-4-connected"
    assert (v["triangles"], v["triads"], v["quads"]) == ("7", "0", "7")
    assert v["violator3"] == "none"
    code, out, _ = call("analyze", files["bp4"])
    assert values(out)["family"] == "biwheel_plus(4)"


def test_iso(files):
    code, out, _ = call("iso", files["fano"], files["fano"])
    assert code == EXIT_OK and values(out)["verified"] == "True"
    code, out, _ = call("iso", files["fano"], files["k4"])
    assert code == EXIT_NO and values(out)["isomorphic"] == "no"


def test_minor(files):
    code, out, _ = call("minor", files["fano"], files["k4"])
    assert code == EXIT_OK and values(out)["verified"] == "True"
    code, out, _ = call("minor", files["k4"], files["fano"])
    assert code == EXIT_NO and values(out)["has_minor"] == "no"
    code, _, err = call("minor", files["fano"], files["k4"], "--fix", "zz")
    assert code == EXIT_USAGE and "--fix" in err
    code, out, _ = call("minor", files["bp4"], files["fano"], "--node-budget", "2")
    assert code == EXIT_BUDGET and values(out)["status"] == "resource-exhausted"


def test_split(files):
    code, out, _ = call("split", files["bp4"], files["bw4"])
    assert code == EXIT_NO and values(out)["hypotheses"] == "fail"
    code, out, _ = call("split", files["bp4"], files["bw4"], "--relaxed")
    v = values(out)
    assert code == EXIT_OK and v["certificate"] == "found" and v["verified"] == "True"
    assert v["removed"] in ("1", "2")


def test_verify_and_enum():
    code, out, _ = call("verify", "--suite", "quad4fan", "--catalog", "rank<=3,size<=7,3connected", "--threads", "1")
    assert code == EXIT_OK and out.splitlines()[-1].startswith("PASS suite=quad4fan")
    code, out, _ = call("verify", "--suite", "selftest_quad_only", "--catalog", "rank<=3,size<=7", "--threads", "1")
    assert code == EXIT_NO
    code, _, err = call("verify", "--suite", "quad4fan", "--catalog", "rank<=9")
    assert code == EXIT_USAGE and "limited" in err
    code, out, _ = call("enum", "--catalog", "rank<=3,size<=7", "--classify")
    assert code == EXIT_OK and values(out)["count"] == "9"
    assert "r3n7#0 elements=7 rank=3 class=internally-4-connected" in out


def test_enum_writes_files(tmp_path):
    code, _, _ = call("enum", "--catalog", "rank<=3,size<=7,3connected", "-o", str(tmp_path / "cat"))
    assert code == EXIT_OK
    back = read_matroid(tmp_path / "cat" / "r3n7_0.bmx")
    assert back.name == "r3n7#0" and back.rank == 3 and len(back.circuits(3)) == 7


def test_bench():
    code, out, _ = call("bench", "--queries", "2000")
    v = values(out)
    assert code == EXIT_OK and v["instance"].startswith("bench16") and float(v["queries_per_second"]) > 0


def test_usage_errors(tmp_path):
    assert call("bogus")[0] == EXIT_USAGE
    assert call()[0] == EXIT_USAGE
    assert call("analyze", str(tmp_path / "missing.bmx"))[0] == EXIT_USAGE
    bad = tmp_path / "bad.bmx"
    bad.write_text("matroid x\nrank 1\nelements a\nrow 2\n")
    code, _, err = call("analyze", str(bad))
    assert code == EXIT_USAGE and "line 4" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "binmat.cli", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "binmat" in proc.stdout
