import io
import json
import subprocess
import sys

from wdescend.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_examples():
    assert call("descendant", "--genus", "0", "--weights", "1,2/5,2/5,2/5",
                "--ks", "0,1,0,0")[:2] == (0, "-1\n")
    assert call("genpoly", "--genus", "0", "--weights", "1,1,1,1")[:2] == (0, "t1 + t2 + t3 + t4\n")
    assert call("realize", "--faces", "12,34")[:2] == (0, "infeasible\n")


def test_trace_and_json():
    code, out, _ = call("descendant", "--genus", "0", "--weights", "1,2/5^3", "--ks", "0,1,0,0",
                        "--trace")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 5 and lines[-1] == "value = -1"
    code, out, _ = call("--format", "json", "descendant", "--genus", "0",
                        "--weights", "1,2/5^3", "--ks", "0,1,0,0", "--trace")
    doc = json.loads(out)
    assert doc["value"] == "-1" and len(doc["trace"]) == 4


def test_complex_and_epsilon():
    assert call("complex", "--weights", "1,1,1/10,1/10,1/10")[1] == "1,2,345\n"
    assert call("--epsilon", "1/10", "complex", "--weights", "1,1,e^3")[1] == "1,2,345\n"
    doc = json.loads(call("--format", "json", "complex", "--weights", "1/2,1/2,1/2")[1])
    assert doc == {"complex": "12,13,23", "in_domain": False}


def test_realize_round_trip():
    code, out, _ = call("realize", "--faces", "1,23,24,34")
    assert code == 0
    assert call("complex", "--weights", out.strip())[1] == "1,23,24,34\n"
    assert call("realize", "--faces", "12,13,14,23,24,34", "--domain", "0,0")[1] == "infeasible\n"


def test_numbers():
    assert call("kappa", "--genus", "2", "--ks", "2,3")[1] == "1/240\n"
    assert call("unweighted", "--genus", "2", "--ks", "4")[1] == "1/1152\n"


def test_path_is_seeded():
    args = ("path", "--genus", "2", "--from", "1,1,1", "--to", "1/3,1/3,1/3")
    a, b = call(*args), call("--seed", "0", *args)
    assert a == b and a[1].splitlines()[-1].endswith("add I={1,2,3}")
    assert len(a[1].splitlines()) == 4


def test_verify_and_exit_codes():
    code, out, _ = call("verify", "--suite", "wallcross", "--params", "count=10,nmax=5")
    assert code == 0 and out.splitlines()[-1] == "PASS wallcross: 10 checks, 0 failed"
    code, out, _ = call("verify", "--suite", "string", "--params", "g=0,r=1,n=5",
                        "--failures-only")
    assert code == 0 and out == "PASS string: 35 checks, 0 failed\n"
    assert call("verify", "--suite", "string", "--params", "g=0,r=2,n=5")[0] == 2
    assert call("verify", "--suite", "oracle", "--params", "max=6,bogus=1")[0] == 2


def test_usage_and_capacity_errors():
    assert call("descendant", "--genus", "0", "--weights", "1,x", "--ks", "0,0")[0] == 2
    assert call("descendant", "--genus", "0", "--weights", "1,1", "--ks", "0")[0] == 2
    assert call("nonsense")[0] == 2
    assert call("chambers", "--n", "6")[0] == 3
    assert call("complex", "--weights", ",".join(["1"] * 17))[0] == 3
    code, _, err = call("--format", "json", "chambers", "--n", "6")
    assert code == 3 and json.loads(err)["exit"] == 3


def test_formal_target(tmp_path):
    doc = tmp_path / "p1.txt"
    doc.write_text("[target]\nkind=formal\ndim=1\n[classes]\n1 one 0\nH H 1 0\n"
                   "[products]\nH*H = 0\n[descendants]\n"
                   "g=0 ; (0,H) (0,1) (0,1) ; 1\n")
    base = ("descendant", "--genus", "0", "--weights", "1,1,1", "--target", str(doc))
    assert call(*base, "--ks", "0,0,0", "--classes", "H,1,1")[1] == "1\n"
    assert call(*base, "--ks", "1,0,0", "--classes", "1,1,1")[0] == 3
    assert call("unweighted", "--genus", "0", "--ks", "0,0,0", "--classes", "1,H,1",
                "--target", str(doc))[1] == "1\n"


def test_chambers():
    code, out, _ = call("chambers", "--n", "3")
    assert code == 0 and len(out.splitlines()) == 9
    assert len(call("chambers", "--n", "3", "--decomposition", "coarse")[1].splitlines()) == 2


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "wdescend", "unweighted", "--genus", "1",
                        "--ks", "1"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "1/24\n"
