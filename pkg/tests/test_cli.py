import csv
import io
import json
import shutil
import subprocess
import sys
from fractions import Fraction as F

import pytest

from negdom.cli import EXIT_INPUT, EXIT_NO_DOMINANCE, EXIT_OK, EXIT_UNDETERMINED, EXIT_VIOLATED, emit_region, main
from negdom.dominance import Coupling
from negdom.lottery import Lottery, delta
from negdom.orders import Lines

FSTAR = Lottery.uniform((4, -2), (-2, 4))


def write(path, data):
    path.write_text(json.dumps(data))
    return str(path)


class TestReplay:
    def test_prop1(self, capsys):
        assert main(["replay", "prop1"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("prop1: contradiction-reproduced")
        assert "f* ≻ (0,0)" in out

    def test_json_output(self, tmp_path):
        target = tmp_path / "r.json"
        assert main(["replay", "kfact", "--k", "5", "--json", str(target)]) == EXIT_OK
        data = json.loads(target.read_text())
        assert data["verdict"] == "contradiction-reproduced"
        assert data["params"]["k"] == "5"

    def test_precondition_is_input_error(self, capsys):
        assert main(["replay", "prop4", "--alpha", "1/2"]) == EXIT_INPUT
        assert "incomparable" in capsys.readouterr().err

    def test_bad_number(self):
        assert main(["replay", "prop2", "--a", "three"]) == EXIT_INPUT

    def test_unknown_scenario(self):
        assert main(["replay", "prop42"]) == EXIT_INPUT

    def test_manifest_then_check(self, tmp_path, capsys):
        d = tmp_path / "m"
        assert main(["replay", "prop9", "--manifest", str(d)]) == EXIT_OK
        assert {p.name for p in d.iterdir()} == {"manifest.json", "universe.json", "generators.json"}
        report = tmp_path / "report.json"
        argv = [
            "check",
            "--universe", str(d / "universe.json"),
            "--generators", str(d / "generators.json"),
            "--axioms", "preorder,negative-dominance,good-expectations,stochastic-dominance-respect,comparable-independence",
            "--report", str(report),
        ]
        assert main(argv) == EXIT_OK
        data = json.loads(report.read_text())
        assert {r["verdict"] for r in data["reports"]} == {"holds"}

    def test_prop1_manifest_check_finds_violation(self, tmp_path):
        d = tmp_path / "m"
        main(["replay", "prop1", "--manifest", str(d)])
        argv = ["check", "--universe", str(d / "universe.json"), "--generators", str(d / "generators.json"), "--axioms", "negative-dominance"]
        assert main(argv) == EXIT_VIOLATED


class TestCheck:
    def test_not_determinable_exit(self, tmp_path):
        u = write(tmp_path / "u.json", [FSTAR.to_json(), delta(0, 0).to_json()])
        assert main(["check", "--universe", u, "--axioms", "certainty-equivalents"]) == EXIT_UNDETERMINED

    def test_unknown_axiom(self, tmp_path):
        u = write(tmp_path / "u.json", [delta(0, 0).to_json()])
        assert main(["check", "--universe", u, "--axioms", "completeness"]) == EXIT_INPUT

    def test_missing_file(self, tmp_path):
        assert main(["check", "--universe", str(tmp_path / "nope.json"), "--axioms", "preorder"]) == EXIT_INPUT

    def test_malformed_json(self, tmp_path):
        p = tmp_path / "u.json"
        p.write_text("{not json")
        assert main(["check", "--universe", str(p), "--axioms", "preorder"]) == EXIT_INPUT

    def test_dangling_generator(self, tmp_path):
        u = write(tmp_path / "u.json", [delta(0, 0).to_json()])
        g = write(tmp_path / "g.json", {"rules": [], "declared": [{"from": 0, "to": 3}]})
        assert main(["check", "--universe", u, "--generators", g, "--axioms", "preorder"]) == EXIT_INPUT


class TestDominance:
    def test_quadruple(self, tmp_path):
        f = write(tmp_path / "f.json", Lottery.uniform((-2, 4), (4, -2)).to_json())
        g = write(tmp_path / "g.json", Lottery.uniform((-2, 3), (3, -2)).to_json())
        out = tmp_path / "w.json"
        assert main(["dominance", f, g, "--json", str(out)]) == EXIT_OK
        data = json.loads(out.read_text())
        assert data["dominates"] and Coupling.from_json(data["coupling"]).entries

    def test_no_dominance(self, tmp_path):
        f = write(tmp_path / "f.json", FSTAR.to_json())
        g = write(tmp_path / "g.json", delta(0, 0).to_json())
        assert main(["dominance", f, g]) == EXIT_NO_DOMINANCE

    def test_naive_on_russell(self, tmp_path):
        f = write(tmp_path / "f.json", Lottery({(2, 2): F(3, 4), (0, 0): F(1, 4)}).to_json())
        g = write(tmp_path / "g.json", Lottery.uniform((2, 0), (0, 2), (2, 2)).to_json())
        assert main(["dominance", f, g, "--naive"]) == EXIT_OK
        assert main(["dominance", f, g]) == EXIT_NO_DOMINANCE

    def test_bad_lottery(self, tmp_path):
        f = write(tmp_path / "f.json", {"outcomes": [{"coords": ["0", "0"], "prob": "1/2"}]})
        assert main(["dominance", f, f]) == EXIT_INPUT

    def test_bad_order(self, tmp_path):
        f = write(tmp_path / "f.json", delta(0, 0).to_json())
        assert main(["dominance", "--order", "lines:0,1", f, f]) == EXIT_INPUT


class TestRegion:
    def rows(self, text):
        return {(r["x"], r["y"]): r["verdict"] for r in csv.DictReader(io.StringIO(text))}

    def test_examples(self):
        rows = self.rows(emit_region(Lines(2, F(1, 2))))
        assert rows[("1", "3")] == "strictly-above"
        assert rows[("2", "-2")] == "incomparable"
        assert rows[("0", "0")] == "equivalent"
        assert len(rows) == 41 * 41

    def test_row_order(self):
        text = emit_region(Lines(2, F(1, 2)), xs=(F(0), F(1)), ys=(F(0), F(1)), step=F(1))
        assert text.splitlines()[1:3] == ["0,0,equivalent", "1,0,strictly-above"]

    def test_byte_identical(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["region", "--out", str(a)]) == EXIT_OK
        assert main(["region", "--out", str(b)]) == EXIT_OK
        assert a.read_bytes() == b.read_bytes()

    def test_stdout(self, capsys):
        assert main(["region", "--xmin", "0", "--xmax", "1", "--ymin", "0", "--ymax", "1", "--step", "1/2"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[0] == "x,y,verdict"

    @pytest.mark.parametrize("args", [["--xmin", "1", "--xmax", "1"], ["--step", "0"], ["--ref", "0"]])
    def test_bad_grid(self, args):
        assert main(["region", *args]) == EXIT_INPUT


class TestSearch:
    def test_report(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["search", "open-q3", "--seed", "2", "--budget", "5", "--json", str(a)]) == EXIT_OK
        assert main(["search", "open-q3", "--seed", "2", "--budget", "5", "--json", str(b)]) == EXIT_OK
        assert a.read_bytes() == b.read_bytes()
        assert json.loads(a.read_text())["status"] == "evidence"

    def test_bound_flag(self, tmp_path):
        out = tmp_path / "s.json"
        assert main(["search", "conjecture2", "--bound", "unidimensional=false", "--budget", "3", "--json", str(out)]) == EXIT_OK
        assert json.loads(out.read_text())["candidates"] == 0

    def test_bad_bound(self):
        assert main(["search", "open-q3", "--bound", "coord"]) == EXIT_INPUT


def test_unknown_subcommand():
    assert main(["frobnicate"]) == EXIT_INPUT


@pytest.mark.skipif(shutil.which("negdom") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["negdom", "replay", "prop1"], capture_output=True, text=True)
    assert proc.returncode == 0


def test_module_entry():
    proc = subprocess.run([sys.executable, "-m", "negdom.cli", "replay", "vst"], capture_output=True, text=True)
    assert proc.returncode == 0 and "contradiction-reproduced" in proc.stdout
