import csv
import io
import json
import logging
import subprocess
import sys

import pytest

from treeenergy.cli import RunConfig, main, parse_range, resolve_tree
from treeenergy.errors import ParameterError
from treeenergy.trees import bn_tree, canonical_code


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def csv_rows(text):
    body = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


@pytest.fixture
def cache_dir(tmp_path):
    return str(tmp_path / "cache")


class TestHelpers:
    @pytest.mark.parametrize("text,want", [("2..4", [2, 3, 4]), ("7", [7]), ("2,5", [2, 5])])
    def test_parse_range(self, text, want):
        assert parse_range(text) == want

    @pytest.mark.parametrize("text", ["4..2", "a..b", "x"])
    def test_parse_range_bad(self, text):
        with pytest.raises(ParameterError):
            parse_range(text)

    def test_resolve_specs(self):
        assert resolve_tree("cstar:2,3").n == 7
        assert canonical_code(resolve_tree("tstar:10,2")) == canonical_code(bn_tree(1))
        with pytest.raises(ParameterError):
            resolve_tree("tstar:10")
        with pytest.raises(ParameterError):
            resolve_tree("no-such-file.txt")

    def test_config_validation(self):
        with pytest.raises(ParameterError):
            RunConfig("x", format="xml").validate()


class TestAlphaCommand:
    def test_three_rows(self, capsys):
        code, out, _ = run(capsys, "alpha", "--d", "2..4", "--eps", "1e-8")
        assert code == 0
        rows = csv_rows(out)
        assert [r["d"] for r in rows] == ["2", "3", "4"]
        assert float(rows[0]["alpha"]) > 1 > float(rows[1]["alpha"])

    def test_eps_floor_exit_1(self, capsys):
        code, _, err = run(capsys, "alpha", "--d", "2", "--eps", "1e-30")
        assert code == 1 and "floor" in err

    def test_json_tail_bound(self, capsys):
        code, out, _ = run(capsys, "alpha", "--d", "2..3", "--format", "json")
        doc = json.loads(out)
        assert set(doc) >= {"config", "engine_version", "rows"}
        assert all("tail_bound" in r for r in doc["rows"])
        assert doc["config"]["command"] == "alpha"


class TestEnergyCommand:
    def test_bn0(self, capsys, cache_dir):
        code, out, _ = run(capsys, "energy", "bn:0", "--cache-dir", cache_dir)
        assert code == 0
        assert float(csv_rows(out)[0]["energy"]) == pytest.approx(3.4641016151377544, abs=1e-9)

    def test_tstar_equals_bn1(self, capsys):
        _, a, _ = run(capsys, "energy", "tstar:10,2", "--no-cache")
        _, b, _ = run(capsys, "energy", "bn:1", "--no-cache")
        assert float(csv_rows(a)[0]["energy"]) == pytest.approx(float(csv_rows(b)[0]["energy"]), abs=1e-9)

    def test_path_file(self, capsys, tmp_path):
        f = tmp_path / "path4.txt"
        f.write_text("4\n0 1\n1 2\n2 3\n")
        code, out, _ = run(capsys, "energy", str(f), "--no-cache")
        assert code == 0
        assert float(csv_rows(out)[0]["energy"]) == pytest.approx(4.4721360, abs=1e-7)

    def test_graph6_file(self, capsys, tmp_path):
        f = tmp_path / "claw.g6"
        f.write_text("Cs\n")
        _, out, _ = run(capsys, "energy", str(f), "--no-cache")
        assert float(csv_rows(out)[0]["energy"]) == pytest.approx(3.4641016, abs=1e-7)

    @pytest.mark.parametrize("method", ["dense", "polynomial", "cross"])
    def test_methods(self, capsys, method):
        code, out, _ = run(capsys, "energy", "cstar:3,3", "--method", method, "--no-cache")
        row = csv_rows(out)[0]
        assert code == 0 and row["method"] == method

    def test_spectrum_out(self, capsys, tmp_path):
        f = tmp_path / "spec.csv"
        run(capsys, "energy", "path:4", "--no-cache", "--spectrum-out", str(f))
        vals = [float(x) for x in f.read_text().split()]
        assert len(vals) == 4 and vals[0] == pytest.approx(-1.618033988749895)

    def test_parse_error_exit_1(self, capsys, tmp_path):
        f = tmp_path / "bad.txt"
        f.write_text("5\n0 1\n1 2\n3 4\n")
        code, _, err = run(capsys, "energy", str(f), "--no-cache")
        assert code == 1 and "disconnected" in err

    def test_cap_exit_2(self, capsys):
        code, _, err = run(capsys, "energy", "bn:3", "--dense-cap", "10", "--no-cache")
        assert code == 2 and "--dense-cap" in err

    def test_bad_spec_exit_1(self, capsys):
        code, _, _ = run(capsys, "energy", "bn:x", "--no-cache")
        assert code == 1

    def test_argparse_error_exit_1(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["energy"])
        assert exc.value.code == 1


class TestConstructCommand:
    def test_graph6(self, capsys):
        _, out, _ = run(capsys, "construct", "bn:0", "--as", "graph6")
        assert out == "Cs\n"

    def test_edgelist_roundtrip(self, capsys):
        _, out, _ = run(capsys, "construct", "tstar:17,3")
        assert out.splitlines()[0] == "17"

    def test_expansion(self, capsys):
        _, out, _ = run(capsys, "construct", "tstar:10,2", "--as", "expansion", "--format", "json")
        row = json.loads(out)["rows"][0]
        assert row["a"] == [1, 1, 2] and row["terminal"] == "all_c"

    def test_expansion_needs_tstar(self, capsys):
        code, _, _ = run(capsys, "construct", "bn:1", "--as", "expansion")
        assert code == 1


class TestExperimentCommands:
    def test_conjecture1_cache_and_determinism(self, capsys, caplog, cache_dir):
        args = ["conjecture1", "--max-level", "5", "--cache-dir", cache_dir]
        _, first, _ = run(capsys, *args)
        caplog.clear()
        with caplog.at_level(logging.INFO, logger="treeenergy"):
            code, second, _ = run(capsys, *args, "-v")
        err = caplog.text
        _, uncached, _ = run(capsys, "conjecture1", "--max-level", "5", "--no-cache")
        assert code == 0
        assert first == second == uncached
        assert "'hits': 6" in err and "'misses': 0" in err
        rows = csv_rows(first)
        assert rows[0]["vertex_count"] == "4"
        assert float(rows[0]["ratio"]) == pytest.approx(0.8660254, abs=1e-7)

    def test_conjecture1_plot_file(self, capsys, tmp_path):
        plot = tmp_path / "ratio.dat"
        run(capsys, "conjecture1", "--max-level", "3", "--no-cache", "--plot-file", str(plot))
        lines = plot.read_text().splitlines()
        assert lines[0].startswith("#") and len(lines) == 5

    def test_config_embedded(self, capsys):
        _, out, _ = run(capsys, "conjecture1", "--max-level", "2", "--no-cache", "--format", "json")
        doc = json.loads(out)
        assert doc["config"]["params"] == {"max_level": 2}
        assert doc["summary"]["monotone"] is True

    def test_workers_identical(self, capsys):
        _, a, _ = run(capsys, "minimal", "--n", "2..9", "--no-cache")
        _, b, _ = run(capsys, "minimal", "--n", "2..9", "--no-cache", "--workers", "2")
        assert a == b

    def test_minimal_d1(self, capsys):
        _, out, _ = run(capsys, "minimal", "--n", "4", "--d", "1", "--no-cache")
        row = csv_rows(out)[0]
        assert row["count"] == "1" and row["tstar_match"] == ""

    def test_minimal_dump(self, capsys, tmp_path):
        dump = tmp_path / "all.txt"
        run(capsys, "minimal", "--n", "6", "--no-cache", "--dump", str(dump))
        assert dump.read_text().count("\n\n") == 4

    def test_cross_command_consistency(self, capsys, cache_dir):
        _, e, _ = run(capsys, "energy", "tstar:10,2", "--cache-dir", cache_dir)
        _, m, _ = run(capsys, "minimal", "--n", "10", "--cache-dir", cache_dir)
        _, c, _ = run(capsys, "conjecture1", "--max-level", "1", "--cache-dir", cache_dir)
        ev = float(csv_rows(e)[0]["energy"])
        assert float(csv_rows(m)[0]["min_energy"]) == pytest.approx(ev, abs=1e-9)
        assert float(csv_rows(c)[1]["energy"]) == pytest.approx(ev, abs=1e-9)

    def test_hypo_census(self, capsys):
        code, out, _ = run(capsys, "hypo-census", "--max-n", "8", "--tstar-max-n", "30", "--no-cache",
                           "--format", "json")
        doc = json.loads(out)
        assert code == 0
        assert doc["rows"][3]["hypo"] >= 1
        assert doc["summary"]["first_strong_n"] == 9


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "treeenergy", "energy", "bn:0", "--no-cache"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "3.46410161513775" in proc.stdout
