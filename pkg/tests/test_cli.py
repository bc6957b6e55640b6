import csv
import io
import json

import pytest

import bicliques.cli as cli
from bicliques.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestEnumerate:
    def test_crown_lines(self, capsys, tmp_path):
        stats = tmp_path / "s.json"
        code, out, _ = run(capsys, "enumerate", "--gen", "crown:3", "--algo", "ips", "--stats", str(stats))
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 6
        assert all(line.startswith("L: ") and " | R: " in line for line in lines)
        report = json.loads(stats.read_text())
        assert report["stats"]["branches"] == 1
        assert report["config"]["tier"] == "ips"
        assert set(report) >= {"dataset", "wall_clock_seconds", "peak_memory_kb", "digest"}

    def test_count_only(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--gen", "crown:15", "--count-only")
        assert code == 0 and out == "32766\n"

    def test_count_subcommand(self, capsys):
        code, out, _ = run(capsys, "count", "--gen", "crown:5", "--algo", "basic", "--ie", "degree")
        assert code == 0 and out == "30\n"

    def test_json(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--gen", "crown:3", "--format", "json")
        rows = [json.loads(line) for line in out.splitlines()]
        assert code == 0 and len(rows) == 6
        assert all(set(r) == {"left", "right"} for r in rows)

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "out.txt"
        code, out, _ = run(capsys, "enumerate", "--gen", "crown:4", "--output", str(path))
        assert code == 0 and out == ""
        assert len(path.read_text().splitlines()) == 14

    def test_input_file(self, capsys, tmp_path):
        path = tmp_path / "g.tsv"
        path.write_text("% bip\n1 1\n2 1\n2 2\n")
        code, out, _ = run(capsys, "enumerate", "--input", str(path), "--algo", "basic")
        assert code == 0
        assert sorted(out.splitlines()) == ["L: 1 2 | R: 1", "L: 2 | R: 1 2"]

    def test_tau(self, capsys):
        code, out, _ = run(capsys, "count", "--gen", "crown:5", "--tau-l", "4", "--tau-r", "1")
        assert code == 0 and out == "5\n"

    def test_missing_input(self, capsys):
        code, out, err = run(capsys, "enumerate", "--input", "no/such/missing.tsv")
        assert code == 2 and out == "" and err

    def test_bad_konect(self, capsys, tmp_path):
        path = tmp_path / "bad.tsv"
        path.write_text("1 1\n1 q\n")
        code, _, err = run(capsys, "enumerate", "--input", str(path))
        assert code == 2 and "2" in err

    def test_limit_truncates(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--gen", "crown:6", "--limit", "3")
        assert code == 3 and len(out.splitlines()) == 3

    def test_time_budget_truncates(self, capsys):
        code, _, _ = run(capsys, "count", "--gen", "crown:16", "--algo", "basic", "--time-budget", "0.01")
        assert code == 3

    @pytest.mark.parametrize(
        "argv",
        [
            ["enumerate", "--gen", "crown:3", "--algo", "fast"],
            ["enumerate"],
            ["enumerate", "--gen", "crown:x"],
            ["enumerate", "--gen", "crown:3", "--tau-l", "0"],
            ["enumerate", "--gen", "crown:3", "--input", "x"],
            ["frobnicate"],
        ],
    )
    def test_usage_errors(self, capsys, argv):
        with pytest.raises(SystemExit) as info:
            code = main(argv)
            raise SystemExit(code)
        assert info.value.code == 1


class TestGenerate:
    def test_roundtrip(self, capsys, tmp_path):
        path = tmp_path / "crown.tsv"
        assert main(["generate", "crown:4", "--output", str(path)]) == 0
        code, out, _ = run(capsys, "count", "--input", str(path))
        assert code == 0 and out == "14\n"

    def test_stdout(self, capsys):
        code, out, _ = run(capsys, "generate", "random:3x3:1.0:seed1")
        assert code == 0
        assert out.splitlines()[0] == "% bip 3 3 9"


class TestVerify:
    def test_single(self, capsys):
        code, out, _ = run(capsys, "verify", "--gen", "random:8x8:0.5:seed7", "--algo", "ips")
        assert code == 0 and "ok" in out

    def test_trials(self, capsys):
        code, _, _ = run(capsys, "verify", "--trials", "100", "--seed", "1", "--algo", "bps", "--ie", "degeneracy")
        assert code == 0

    def test_guard(self, capsys):
        code, _, err = run(capsys, "verify", "--gen", "random:30x30:0.1:seed1")
        assert code == 1 and "guard" in err

    def test_corrupted_build_detected(self, capsys, monkeypatch):
        real = cli.enumerate_bicliques

        def lossy(g, cfg=None, sink=None):
            dropped = []

            def keep(r):
                if dropped:
                    sink(r)
                else:
                    dropped.append(r)

            return real(g, cfg, keep)

        monkeypatch.setattr(cli, "enumerate_bicliques", lossy)
        code, out, err = run(capsys, "verify", "--gen", "crown:4")
        assert code == 4
        assert "DIFF" in out and "only in" in err


class TestBench:
    def suite(self, tmp_path, *entries):
        path = tmp_path / "suite.txt"
        path.write_text("# datasets\n" + "\n".join(entries) + "\n")
        return str(path)

    def rows(self, out):
        return list(csv.DictReader(io.StringIO(out)))

    def test_branch_ordering(self, capsys, tmp_path):
        code, out, _ = run(capsys, "bench", "--suite", self.suite(tmp_path, "crown:12"), "--repeats", "1")
        assert code == 0
        rows = {r["algo"]: int(r["branches"]) for r in self.rows(out)}
        assert rows["ips"] <= rows["bps"] <= rows["basic"]
        assert rows["ips"] == 1

    def test_bad_path_recorded(self, capsys, tmp_path):
        suite = self.suite(tmp_path, "no/such/file.tsv", "crown:4")
        code, out, _ = run(capsys, "bench", "--suite", suite, "--repeats", "1", "--algos", "ips")
        assert code == 0
        rows = self.rows(out)
        assert rows[0]["error"] and rows[1]["outputs"] == "14"

    def test_deterministic(self, capsys, tmp_path):
        suite = self.suite(tmp_path, "random:12x12:0.5:seed3")
        argv = ["bench", "--suite", suite, "--repeats", "1", "--format", "json", "--ie", "off,degeneracy"]
        keys = ("branches", "outputs", "pruned_p1", "pruned_p2", "gamma")
        first = [{k: r[k] for k in keys} for r in json.loads(run(capsys, *argv)[1])]
        second = [{k: r[k] for k in keys} for r in json.loads(run(capsys, *argv)[1])]
        assert first == second
        assert any(r["gamma"] is not None for r in first)

    def test_delay_curve(self, capsys, tmp_path):
        code, out, _ = run(capsys, "bench", "--suite", self.suite(tmp_path, "crown:6"), "--algos", "ips", "--repeats", "2")
        curve = self.rows(out)[0]["delay_curve"]
        assert [int(p.split(":")[0]) for p in curve.split(";")] == [1, 2, 4, 8, 16, 32]

    def test_bad_algo(self, capsys, tmp_path):
        code, _, _ = run(capsys, "bench", "--suite", self.suite(tmp_path, "crown:4"), "--algos", "zip")
        assert code == 1


def test_byte_identical_reruns(capsys):
    argv = ["enumerate", "--gen", "random:9x9:0.6:seed4", "--algo", "bps", "--ie", "unilateral"]
    assert run(capsys, *argv) == run(capsys, *argv)
