import csv
import io
import json
from fractions import Fraction as F

import pytest

from bqgraph import tables
from bqgraph.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def csv_rows(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


class TestCount:
    def test_p3(self, capsys):
        code, out, _ = run(capsys, "count", "--p", "3", "--n-max", "8")
        assert code == 0
        rows = csv_rows(out)
        assert rows[4]["PPO"] == "10"
        assert rows[0]["C_p"] == "5/4"
        assert list(rows[0]) == ["n", "L2", "PO", "PPO", "trace", "C_p"]

    def test_p1(self, capsys):
        _, out, _ = run(capsys, "count", "--p", "1", "--n-max", "5")
        assert [r["PPO"] for r in csv_rows(out)] == ["1", "2", "2", "4", "8", "16"]

    @pytest.mark.parametrize("p", ["0", "2", "-1"])
    def test_bad_p(self, capsys, p):
        code, _, err = run(capsys, "count", "--p", p, "--n-max", "3")
        assert code == 2 and "error" in err

    def test_missing_flag(self, capsys):
        assert run(capsys, "count", "--p", "3")[0] == 2


class TestTabulate:
    def test_table2(self, capsys):
        code, out, _ = run(capsys, "tabulate", "--p", "1", "--r", "3", "--n-max", "8")
        assert code == 0
        rows = csv_rows(out)
        assert [r["oracle_value"] for r in rows] == ["1", "1", "1/2", "1/2", "1/2", "3/4", "3/4", "5/8", "9/16"]
        assert [r["theorem_value"] for r in rows] == [r["oracle_value"] for r in rows]
        assert (rows[7]["P0"], rows[7]["hat_1"], rows[7]["hat_2"]) == ("16", "16", "8")

    def test_table3(self, capsys):
        _, out, _ = run(capsys, "tabulate", "--p", "3", "--r", "1", "--n-max", "6")
        rows = csv_rows(out)
        assert rows[6]["oracle_value"] == "3/8"
        assert rows[4]["P0"] == "6" and rows[4]["hat_1"] == "4" and rows[4]["oracle_value"] == "7/8"

    def test_json_round_trip(self, capsys):
        _, out, _ = run(capsys, "tabulate", "--p", "1", "--r", "2", "--n-max", "6", "--format", "json")
        rows = tables.parse(out, "json")
        assert rows[4]["oracle_value"] == F(3, 4)
        assert tables.render(rows, list(rows[0]), "json") == out

    def test_csv_round_trip(self, capsys):
        _, out, _ = run(capsys, "tabulate", "--p", "1", "--r", "2", "--n-max", "6")
        rows = tables.parse(out, "csv")
        assert tables.render(rows, list(rows[0]), "csv") == out

    def test_budget(self, capsys):
        code, _, err = run(capsys, "tabulate", "--p", "1", "--r", "3", "--n-max", "8", "--budget", "20")
        assert code == 4 and "budget" in err.lower()

    def test_n_max_range(self, capsys):
        assert run(capsys, "tabulate", "--p", "1", "--r", "1", "--n-max", "9")[0] == 2


class TestSimulate:
    def test_writes_manifest(self, capsys, tmp_path):
        out = tmp_path / "sim.csv"
        code, _, _ = run(capsys, "simulate", "--p", "1", "--r", "2", "--samples", "2000", "--seed", "42",
                         "--out", str(out))
        assert code == 0
        text = out.read_text()
        assert text.startswith("# manifest: sim.csv.manifest.json")
        rows = csv_rows(text)
        assert list(rows[0]) == ["n", "theorem_value", "estimate", "std_error", "error", "samples"]
        assert float(rows[0]["estimate"]) == pytest.approx(1)
        man = json.loads((tmp_path / "sim.csv.manifest.json").read_text())
        assert man["command"] == "simulate" and man["seed"] == 42
        assert man["config"]["samples"] == 2000
        assert man["outputs"] == [str(out.resolve())]
        assert len(man["lengths"]) == 8 and "mean_spacing_note" in man

    def test_json_floats_round_trip(self, capsys):
        _, out, _ = run(capsys, "simulate", "--p", "1", "--r", "1", "--samples", "200", "--format", "json")
        rows = tables.parse(out, "json")
        assert isinstance(rows[1]["estimate"], float) and rows[1]["theorem_value"] == 1
        assert tables.render(rows, list(rows[0]), "json") == out

    def test_zero_samples(self, capsys):
        assert run(capsys, "simulate", "--p", "1", "--r", "2", "--samples", "0")[0] == 2

    def test_unwritable(self, capsys, tmp_path):
        bad = tmp_path / "missing" / "x.csv"
        code, _, err = run(capsys, "simulate", "--p", "1", "--r", "2", "--samples", "10", "--out", str(bad))
        assert code == 3 and "error" in err

    def test_threads_do_not_change_output(self, capsys):
        base = ["simulate", "--p", "1", "--r", "2", "--samples", "3000", "--seed", "5"]
        outs = [run(capsys, *base, "--threads", t)[1] for t in ("1", "3")]
        assert outs[0] == outs[1]


class TestConvergence:
    def test_p1(self, capsys):
        code, out, _ = run(capsys, "convergence", "--p", "1", "--r-list", "2,3")
        assert code == 0
        rows = csv_rows(out)
        assert [r["theorem_value"] for r in rows] == ["3/4", "9/16"]
        vals = [F(r["theorem_value"]) for r in rows]
        assert abs(vals[-1] - F(1, 2)) < abs(vals[0] - F(1, 2))

    def test_p3_values(self, capsys):
        _, out, _ = run(capsys, "convergence", "--p", "3", "--r-list", "1,2")
        assert [r["theorem_value"] for r in csv_rows(out)] == ["3/8", "63/64"]

    @pytest.mark.parametrize("extra", [["--r-list", ""], ["--r-list", "2", "--ratio", "1/3"],
                                       ["--r-list", "a"], ["--r-list", "2", "--ratio", "x"]])
    def test_usage(self, capsys, extra):
        assert run(capsys, "convergence", "--p", "1", *extra)[0] == 2


class TestReplay:
    @pytest.mark.parametrize("argv", [
        ["tabulate", "--p", "3", "--r", "1", "--n-max", "5", "--format", "json"],
        ["simulate", "--p", "1", "--r", "2", "--samples", "1500", "--seed", "3"],
        ["count", "--p", "5", "--n-max", "10"],
    ])
    def test_byte_for_byte(self, capsys, tmp_path, argv):
        out = tmp_path / "o.txt"
        assert run(capsys, *argv, "--out", str(out))[0] == 0
        first = out.read_bytes()
        out.unlink()
        assert run(capsys, "replay", str(tmp_path / "o.txt.manifest.json"))[0] == 0
        assert out.read_bytes() == first

    def test_missing_manifest(self, capsys, tmp_path):
        assert run(capsys, "replay", str(tmp_path / "none.json"))[0] == 3


def test_help_lists_columns(capsys):
    assert main(["--help"]) == 0
    assert "column order" in capsys.readouterr().out
