import subprocess
import sys

import pytest

from quandles.cli import main


def qf(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_table1(capsys, fixtures):
    code, out, _ = qf(capsys, "check", str(fixtures / "q62.txt"))
    assert code == 0
    assert "cyclic type (6,2)" in out and "\nconnected" in out


def test_check_machine(capsys, fixtures):
    code, out, _ = qf(capsys, "--format", "machine", "check", str(fixtures / "r4.txt"))
    assert code == 0
    assert out.splitlines() == ["order=4", "profile={1,1,2}x4", "cyclic_type=4,2", "connected=no"]
    code, out2, _ = qf(capsys, "check", str(fixtures / "r4.txt"), "--format", "machine")
    assert out2 == out


def test_check_violation(capsys, fixtures):
    code, out, _ = qf(capsys, "check", str(fixtures / "q62_broken.txt"))
    assert code == 2
    assert "mu_2 is not a bijection" in out


def test_parse_errors(capsys, tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    code, _, err = qf(capsys, "check", str(empty))
    assert code == 3 and ":1:1:" in err
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n1 x\n2 2\n")
    code, _, err = qf(capsys, "check", str(bad))
    assert code == 3 and ":2:3:" in err
    code, _, _ = qf(capsys, "check", str(tmp_path / "missing.txt"))
    assert code == 3


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 3
    with pytest.raises(SystemExit) as exc:
        main(["enumerate", "--n", "6"])
    assert exc.value.code == 3
    assert qf(capsys, "enumerate", "--n", "5", "--f", "4")[0] == 3
    assert qf(capsys, "construct", "divisible", "7", "4")[0] == 3
    assert qf(capsys, "reproduce", "T9")[0] == 3


def test_construct_and_round_trip(capsys, tmp_path, fixtures):
    code, out, _ = qf(capsys, "construct", "q62")
    assert code == 0 and out == (fixtures / "q62.txt").read_text()
    code, out, _ = qf(capsys, "construct", "dihedral", "4")
    assert out == (fixtures / "r4.txt").read_text()
    path = tmp_path / "order5.perm"
    assert qf(capsys, "construct", "order5", "--output-format", "perms", "-o", str(path))[0] == 0
    assert path.read_text().splitlines()[1] == "(1)(2)(3)(4 5)"
    assert qf(capsys, "check", str(path))[0] == 0


def test_quotients_match_golden(capsys, fixtures):
    code, out, _ = qf(capsys, "quotient", str(fixtures / "q62.txt"))
    assert code == 0 and out == (fixtures / "q62_quotient.txt").read_text()
    code, out, _ = qf(capsys, "quotient", str(fixtures / "r4.txt"))
    assert out == (fixtures / "r4_quotient.txt").read_text()
    code, out, _ = qf(capsys, "quotient", str(fixtures / "q62.txt"), "--partition",
                      "1,3;2,4;5,6")
    assert out == (fixtures / "q62_quotient.txt").read_text()
    assert qf(capsys, "quotient", str(fixtures / "q62.txt"), "--partition", "1,2;3,4;5,6")[0] == 3


def test_iso(capsys, tmp_path, fixtures):
    adj = tmp_path / "adj.txt"
    two = tmp_path / "two.txt"
    qf(capsys, "construct", "two-f", "2", "-o", str(two))
    assert qf(capsys, "adjoin", str(two), "--mu", "(3 4)", "-o", str(adj))[0] == 0
    code, out, _ = qf(capsys, "iso", str(adj), str(fixtures / "order5.txt"))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "isomorphic" and lines[1].startswith("alpha: (")
    assert lines[2].startswith("1 -> ")
    code, out, _ = qf(capsys, "iso", str(fixtures / "q62.txt"), str(fixtures / "order5.txt"))
    assert code == 1 and out.strip() == "not isomorphic"


def test_adjoin_not_commuting(capsys, fixtures):
    code, _, err = qf(capsys, "adjoin", str(fixtures / "q62.txt"), "--mu", "(1 2)")
    assert code == 2 and "commute" in err
    assert qf(capsys, "adjoin", str(fixtures / "q62.txt"), "--mu", "(1 9)")[0] == 3


def test_extract(capsys, fixtures):
    code, out, _ = qf(capsys, "extract", str(fixtures / "order5.txt"), "--g0", "1")
    assert code == 0 and out.startswith("4\n")
    assert qf(capsys, "extract", str(fixtures / "order5.txt"), "--g0", "2")[0] == 3


def test_info(capsys, fixtures):
    code, out, _ = qf(capsys, "info", str(fixtures / "order5.txt"))
    assert code == 0
    assert "common fixed points: {1}" in out
    assert "mu_4: (1)(2 3)(4)(5)" in out


def test_enumerate(capsys):
    code, out, err = qf(capsys, "enumerate", "--n", "6", "--f", "2")
    assert code == 0
    assert out.splitlines()[-1] == "result n=6 f=2 classes=1 labeled=1 exhaustive=yes"
    assert "elapsed" in err and "elapsed" not in out
    code, out2, _ = qf(capsys, "enumerate", "--n", "6", "--f", "2")
    assert out2 == out
    code, out, _ = qf(capsys, "enumerate", "--n", "8", "--f", "2", "--no-prune", "closed-form",
                      "--format", "machine")
    assert "feasibility=Feasible" in out and out.endswith("classes=0 labeled=0 exhaustive=yes\n")
    code, out, _ = qf(capsys, "enumerate", "--n", "7", "--f", "5", "--budget-nodes", "20")
    assert out.splitlines()[-1].endswith("exhaustive=no")
    code, out, _ = qf(capsys, "enumerate", "--n", "5", "--f", "3", "--show-tables")
    assert "# class 1" in out


def test_jobs_env(capsys, monkeypatch):
    monkeypatch.setenv("QF_DEFAULT_JOBS", "2")
    code, out, _ = qf(capsys, "enumerate", "--n", "6", "--f", "4")
    monkeypatch.setenv("QF_DEFAULT_JOBS", "1")
    assert qf(capsys, "enumerate", "--n", "6", "--f", "4")[1] == out
    monkeypatch.setenv("QF_DEFAULT_JOBS", "many")
    assert qf(capsys, "enumerate", "--n", "6", "--f", "4")[0] == 3


def test_reproduce(capsys):
    code, out, _ = qf(capsys, "reproduce", "GCD-28-7")
    assert code == 0 and out.startswith("PASS GCD-28-7")
    code, out, _ = qf(capsys, "--format", "machine", "reproduce", "T1.1b")
    assert out == "claim=T1.1b status=PASS\n"


def test_reproduce_all(capsys):
    code, out, _ = qf(capsys, "reproduce", "all")
    assert code == 0
    assert out.splitlines()[-1].endswith("claims passed")
    assert "FAIL" not in out


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "quandles.cli", "construct", "trivial", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "2\n1 1\n2 2\n"
