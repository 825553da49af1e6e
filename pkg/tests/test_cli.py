from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from wordlab import Word, cli
from wordlab.complexity import TheoremCheck, TheoremReport
from wordlab.debruijn import is_de_bruijn


def run(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def ok(*argv: str) -> str:
    code, out, err = run(*argv)
    assert code == 0, err
    return out


def envelope(*argv: str) -> dict:
    payload = json.loads(ok(*argv))
    assert set(payload) == {"command", "params", "result", "schema_version"}
    assert payload["schema_version"] == cli.SCHEMA_VERSION
    return payload["result"]


class TestComplexity:
    def test_json(self):
        result = envelope("complexity", "01101", "--json")
        assert result["sequence"] == [2, 3, 3, 2, 1]
        assert (result["R"], result["K"]) == (2, 3)
        assert result["special_subwords_by_length"] == {"1": ["1"]}

    def test_special_subwords_by_length(self):
        result = envelope("complexity", "011010", "--json")
        assert result["special_subwords_by_length"] == {"1": ["1"], "2": ["01"]}

    def test_text(self):
        out = ok("complexity", "101100")
        assert "sequence: 2 4 4 3 2 1" in out
        assert "R: 3" in out and "K: 2" in out

    def test_csv(self):
        lines = ok("complexity", "01101", "--csv").splitlines()
        assert lines[0] == "n,p,s0,s1,s2"
        assert lines[1] == "1,2,0,1,1"
        assert len(lines) == 6

    def test_plot_csv(self):
        assert ok("complexity", "0011", "--plot-csv") == "n,p\n1,2\n2,3\n3,2\n4,1\n"

    def test_alphabet_flag_and_engine(self):
        assert envelope("complexity", "01", "--k", "5", "--json")["k"] == 5
        assert envelope("complexity", "0110", "--engine", "naive", "--json")["sequence"] == [2, 3, 2, 1]

    def test_errors(self):
        code, _, err = run("complexity", "01?")
        assert code == 1 and err.count("\n") == 1
        assert run("complexity", "")[0] == 1
        assert run("complexity", "0120", "--k", "2")[0] == 1
        assert run("complexity", "01", "--json", "--csv")[0] == 2


class TestDeBruijn:
    def test_word(self):
        word = ok("debruijn", "--k", "2", "--len", "10").strip()
        assert len(word) == 10 and is_de_bruijn(Word.from_str(word, 2))

    def test_profile_and_json(self):
        assert ok("debruijn", "--k", "2", "--len", "12", "--emit", "profile") == "2 4 8 9 8 7 6 5 4 3 2 1\n"
        result = envelope("debruijn", "--k", "3", "--len", "20", "--emit", "json")
        assert result["de_bruijn"] is True and result["length"] == 20

    def test_graph(self):
        dot = ok("debruijn", "graph", "--k", "2", "--order", "2", "--dot")
        assert dot.startswith('digraph "B_2(2)"') and dot.count("->") == 8
        result = envelope("debruijn", "graph", "--k", "2", "--order", "1", "--json")
        assert result["vertices"] == ["0", "1"]
        assert ["0", "1", "01"] in result["edges"]

    def test_errors(self):
        assert run("debruijn", "--k", "2")[0] == 2
        assert run("debruijn", "--k", "1", "--len", "5")[0] == 1
        assert run("debruijn", "graph", "--k", "2", "--order", "30")[0] == 1
        assert run("debruijn", "--k", "two", "--len", "5")[0] == 2


class TestSturmian:
    def test_fib(self):
        assert ok("sturmian", "fib", "--len", "26") == "01001010010010100101001001\n"
        result = envelope("sturmian", "fib", "--len", "8", "--json")
        assert result["sequence"] == [2, 3, 4, 5, 4, 3, 2, 1]

    def test_mech(self):
        out = ok("sturmian", "mech", "--alpha", "surd:3,-1,2,5", "--rho", "surd:3,-1,2,5", "--len", "26")
        assert out == "01001010010010100101001001\n"
        assert ok("sturmian", "mech", "--alpha", "1/2", "--rho", "0", "--variant", "upper", "--len", "6") == "101010\n"
        assert run("sturmian", "mech", "--alpha", "3/2", "--rho", "0", "--len", "6")[0] == 1
        assert run("sturmian", "mech", "--alpha", "x", "--rho", "0", "--len", "6")[0] == 1

    def test_check(self):
        result = envelope("sturmian", "check", "0011", "--json")
        assert result["balanced"] is False and result["unbalanced_witness"] == ""
        assert (result["R"], result["K"], result["length_is_r_plus_k"]) == (2, 2, True)
        result = envelope("sturmian", "check", "00001000", "--json")
        assert result["finite_sturmian"] is True and result["length_is_r_plus_k"] is True
        text = ok("sturmian", "check", "0011")
        assert "balanced: no" in text and "witness: ε" in text
        assert run("sturmian", "check", "012")[0] == 1

    def test_peak(self):
        assert ok("sturmian", "peak", "--len", "8") == "00001000\n"
        assert envelope("sturmian", "peak", "--len", "7", "--json")["K"] == 4
        assert run("sturmian", "peak", "--len", "1")[0] == 1

    def test_missing_subcommand(self):
        assert run("sturmian")[0] == 2


class TestCensus:
    def test_count(self):
        result = envelope("census", "--k", "2", "--n", "7")
        assert result == {"k": 2, "n": 7, "count": 7}

    def test_list_and_out(self, tmp_path):
        target = tmp_path / "census.json"
        out = ok("census", "--k", "2", "--n", "4", "--list", "--out", str(target))
        assert json.loads(out)["result"]["sequences"] == [[1, 1, 1, 1], [2, 2, 2, 1], [2, 3, 2, 1]]
        assert target.read_text(encoding="utf-8") == out

    def test_budget(self):
        code, _, err = run("census", "--k", "2", "--n", "40")
        assert code == 1 and "budget" in err
        assert run("census", "--k", "2", "--n", "12", "--budget", "1e3")[0] == 1
        assert run("census", "--k", "2", "--n", "12", "--budget", "lots")[0] == 2

    def test_table(self):
        lines = ok("census", "table", "--kmax", "4", "--nmax", "8", "--csv").splitlines()
        assert lines[0] == "n,a_2,a_3,a_4"
        assert lines[8] == "8,9,17,22"
        text = ok("census", "table", "--kmax", "3", "--nmax", "4")
        assert text.splitlines()[0].split() == ["n", "a_2", "a_3"]

    def test_table_marks_cells_over_budget(self):
        lines = ok("census", "table", "--kmax", "2", "--nmax", "12", "--csv", "--budget", "100000").splitlines()
        assert lines[10] == "10,18"
        assert lines[12] == "12,"

    def test_diff(self):
        lines = ok("census", "diff", "--nmax", "10", "--csv").splitlines()
        assert lines[0] == "n,a_3-a_2,a_4-a_3,a_5-a_4,a_6-a_5"
        assert lines[10] == "10,19,12,8,5"

    def test_conjectures(self):
        lines = ok("census", "conjectures", "--nmax", "12", "--kmax", "4", "--diff-nmax", "6").splitlines()
        assert lines[0].startswith("k,n,a,")
        assert "2,11,25," in "\n".join(lines)
        row12 = next(l for l in lines if l.startswith("2,12,"))
        assert row12.endswith(",29,28,0")
        result = envelope("census", "conjectures", "--nmax", "12", "--diff-nmax", "6", "--json")
        assert result["first_failure"] == {"2": 12}
        assert result["holds_through"] == {"2": 11}

    def test_deterministic_across_workers(self):
        one = ok("census", "--k", "3", "--n", "9", "--list", "--jobs", "1")
        many = ok("census", "--k", "3", "--n", "9", "--list", "--jobs", "4")
        assert one == many


class TestVerify:
    def test_generators(self):
        assert ok("verify", "--all", "2", "8") == "checked 256 words, 0 with violations\n"
        assert ok("verify", "--fib", "300").startswith("checked 1 words, 0")
        assert ok("verify", "--debruijn", "3", "40").startswith("checked 1 words, 0")
        assert envelope("verify", "--random", "50", "--k", "4", "--max-len", "30", "--json")["checked"] == 50

    def test_file(self, tmp_path):
        path = tmp_path / "words.txt"
        path.write_text("# sample\n01101\n\n2110\n", encoding="utf-8")
        assert ok("verify", str(path)) == "checked 2 words, 0 with violations\n"
        assert run("verify", str(tmp_path / "missing.txt"))[0] == 1

    def test_violation_exits_nonzero(self, monkeypatch):
        def broken(w):
            return TheoremReport(len(w), [TheoremCheck("unimodal_unit_descent", False, 2)])

        monkeypatch.setattr(cli, "check_profile_theorems", broken)
        code, out, _ = run("verify", "--all", "2", "3")
        assert code == 1
        assert "8 with violations" in out and "unimodal_unit_descent" in out

    def test_usage(self):
        assert run("verify")[0] == 2
        assert run("verify", "--fib", "5", "--all", "2", "3")[0] == 2
        assert run("verify", "--all", "2", "40")[0] == 1


class TestContract:
    def test_unknown_command(self):
        assert run("bogus")[0] == 2
        assert run()[0] == 2
        assert run("complexity", "01", "--frobnicate")[0] == 2

    @pytest.mark.parametrize(
        "argv",
        [
            ("debruijn", "--k", "3", "--len", "30"),
            ("sturmian", "fib", "--len", "50"),
            ("sturmian", "peak", "--len", "9"),
            ("sturmian", "mech", "--alpha", "2/7", "--rho", "1/3", "--len", "40"),
        ],
    )
    def test_round_trip(self, argv, tmp_path):
        word = ok(*argv).strip()
        assert run("complexity", word)[0] == 0
        assert run("complexity", word, "--json")[0] == 0
        if set(word) <= {"0", "1"}:
            assert run("sturmian", "check", word)[0] == 0
        path = tmp_path / "w.txt"
        path.write_text(word + "\n", encoding="utf-8")
        assert run("verify", str(path))[0] == 0

    def test_large_alphabet_round_trip(self):
        word = ok("debruijn", "--k", "40", "--len", "60").strip()
        assert " " in word
        assert envelope("complexity", word, "--json")["k"] == 40

    def test_byte_identical_reruns(self):
        for argv in (("census", "--k", "2", "--n", "12", "--list"), ("debruijn", "--k", "4", "--len", "64", "--emit", "json")):
            assert ok(*argv) == ok(*argv)

    def test_console_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "wordlab", "complexity", "01101", "--json"],
            capture_output=True,
            text=True,
            check=False,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["result"]["sequence"] == [2, 3, 3, 2, 1]
        proc = subprocess.run([sys.executable, "-m", "wordlab", "nope"], capture_output=True, text=True, check=False)
        assert proc.returncode == 2
