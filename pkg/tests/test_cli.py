import csv
import json
from pathlib import Path

import pytest

from python import notify, settings
from python.app import main
from python.errors import ConvergenceError, InvalidParams, UsageError, exit_code_for

BODIES = Path(__file__).resolve().parents[1] / "bodies"


def _run(capsys, *argv):
    code = main(["--quiet", *argv])
    out, err = capsys.readouterr()
    return code, out, err


def _rows(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


class TestBoundsCommand:
    def test_plane(self, capsys):
        code, out, _ = _run(capsys, "bounds", "--n", "2", "--p", "2")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "n=2 p=2"
        assert lines[-1] == "rounded   [0.298, 0.363]"

    def test_four_dimensions(self, capsys):
        code, out, _ = _run(capsys, "bounds", "--n", "4", "--p", "2")
        assert code == 0
        assert out.splitlines()[-1] == "rounded   [0.139, 0.151]"

    def test_p_one(self, capsys):
        code, out, _ = _run(capsys, "bounds", "--n", "5", "--p", "1")
        assert code == 0
        assert out.splitlines()[-1] == "rounded   [0.000, 0.000]"

    def test_forced_route(self, capsys):
        code, out, _ = _run(capsys, "bounds", "--n", "3", "--p", "2", "--method", "integral-representation")
        assert code == 0
        assert "(integral-representation)" in out

    @pytest.mark.parametrize(
        "argv",
        [
            ("bounds", "--n", "2"),
            ("bounds", "--n", "2.5", "--p", "2"),
            ("bounds", "--n", "1", "--p", "2"),
            ("bounds", "--n", "2", "--p", "0.5"),
            ("bounds", "--n", "two", "--p", "2"),
            ("nosuchcommand",),
        ],
    )
    def test_usage_errors(self, capsys, argv):
        code, _, err = _run(capsys, *argv)
        assert code == 2
        assert err

    def test_errors_ignore_quiet(self, capsys):
        _, _, err = _run(capsys, "bounds", "--n", "2")
        assert "[ERROR]" in err


class TestTableAndCurve:
    def test_table_files(self, capsys, tmp_path):
        code, out, _ = _run(capsys, "table", "--n-range", "2:4:1", "--p-list", "2,3", "--out", str(tmp_path))
        assert code == 0
        rows = _rows(tmp_path / "bounds_table.csv")
        assert len(rows) == 6
        assert (tmp_path / "bounds_table.xlsx").read_bytes()[:2] == b"PK"
        assert out == (tmp_path / "bounds_table.csv").read_text(encoding="utf-8")

    def test_curve_row_matches_bounds(self, capsys, tmp_path):
        code, out, _ = _run(capsys, "curve", "--vary", "n", "--p", "2", "--range", "2:6:1", "--out", str(tmp_path))
        assert code == 0
        csv_path = tmp_path / "curve_n_p2.csv"
        assert str(csv_path) in out
        assert (tmp_path / "curve_n_p2.svg").exists()
        first = _rows(csv_path)[0]
        assert float(first["x"]) == 2.0
        assert round(float(first["lower"]), 3) == 0.298
        assert round(float(first["upper"]), 3) == 0.363

    def test_curve_over_p(self, capsys, tmp_path):
        code, _, _ = _run(capsys, "curve", "--vary", "p", "--n", "3", "--range", "1:20:1", "--loglog",
                          "--out", str(tmp_path))
        assert code == 0
        assert len(_rows(tmp_path / "curve_p_n3.csv")) == 20

    def test_bad_range(self, capsys, tmp_path):
        code, _, _ = _run(capsys, "curve", "--vary", "n", "--range", "10:2", "--out", str(tmp_path))
        assert code == 2


class TestVerifyCommand:
    def test_balls_hold(self, capsys, tmp_path):
        code, _, _ = _run(capsys, "verify", "--bodies", str(BODIES / "balls.json"), "--out", str(tmp_path))
        assert code == 0
        rows = _rows(tmp_path / "verify_deficits.csv")
        assert [float(r["lambda"]) for r in rows] == [0.25, 0.5, 0.75]
        assert all(r["violated"] == "0" for r in rows)

    def test_endpoint_grid(self, capsys, tmp_path):
        code, _, _ = _run(capsys, "verify", "--bodies", str(BODIES / "polygons.json"), "--lambda-grid", "0,1",
                          "--out", str(tmp_path))
        assert code == 0
        assert all(float(r["deficit"]) == 0.0 for r in _rows(tmp_path / "verify_deficits.csv"))

    def test_cones_violate_above_upper_bound(self, capsys, tmp_path):
        code, out, _ = _run(capsys, "verify", "--bodies", str(BODIES / "cones.json"), "--alpha", "0.4",
                            "--lambda-grid", "0.5", "--out", str(tmp_path))
        assert code == 1
        assert _rows(tmp_path / "verify_deficits.csv")[0]["violated"] == "1"

    def test_missing_p(self, capsys, tmp_path):
        doc = json.loads((BODIES / "balls.json").read_text(encoding="utf-8"))
        del doc["p"]
        path = tmp_path / "no_p.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        code, _, err = _run(capsys, "verify", "--bodies", str(path), "--out", str(tmp_path))
        assert code == 2
        assert "--p" in err

    def test_schema_error(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"n": 2, "p": 2, "K": {"kind": "ball"}, "L": {"kind": "ball", "radius": 1}}),
                        encoding="utf-8")
        code, _, err = _run(capsys, "verify", "--bodies", str(path), "--out", str(tmp_path))
        assert code == 2
        assert "K.radius" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = _run(capsys, "verify", "--bodies", str(tmp_path / "absent.json"), "--out", str(tmp_path))
        assert code == 3


@pytest.mark.parametrize(
    "exc,code",
    [(UsageError("x"), 2), (InvalidParams("x"), 2), (ConvergenceError("x"), 3), (OSError("x"), 3), (KeyError("x"), 3)],
)
def test_exit_codes(exc, code):
    assert exit_code_for(exc) == code


class TestCounterexampleCommand:
    def test_invalid_q(self, capsys, tmp_path):
        code, _, _ = _run(capsys, "counterexample", "--n", "2", "--p", "2", "--q", "0", "--out", str(tmp_path))
        assert code == 2

    @pytest.mark.slow
    @pytest.mark.parametrize("q,expected", [(0.5, 1), (0.25, 0)])
    def test_exit_code_follows_witness(self, capsys, tmp_path, q, expected):
        code, _, _ = _run(capsys, "counterexample", "--n", "2", "--p", "2", "--q", str(q), "--out", str(tmp_path))
        assert code == expected
        assert len(_rows(tmp_path / "counterexample.csv")) == expected


class TestAsymptoticsCommand:
    def test_order_and_files(self, capsys, tmp_path):
        code, out, _ = _run(capsys, "asymptotics", "--out", str(tmp_path))
        assert code == 0
        order_line = next(line for line in out.splitlines() if line.startswith("order of"))
        assert float(order_line.split(":")[1]) >= 2.7
        assert len(_rows(tmp_path / "asymptotics_p2.csv")) == 4

    def test_descending_range(self, capsys, tmp_path):
        code, _, _ = _run(capsys, "asymptotics", "--n-range", "400,100", "--out", str(tmp_path))
        assert code == 2


class TestSettings:
    def test_flag_beats_config_file(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# local run\np = 3\nn=2\n", encoding="utf-8")
        code, out, _ = _run(capsys, "--config", str(cfg), "bounds", "--p", "2")
        assert code == 0
        assert out.splitlines()[0] == "n=2 p=2"

    def test_config_file_fills_missing_flags(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("n=3\np=2\n", encoding="utf-8")
        code, out, _ = _run(capsys, "--config", str(cfg), "bounds")
        assert code == 0
        assert out.splitlines()[0] == "n=3 p=2"

    def test_bad_config_line(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("just words\n", encoding="utf-8")
        with pytest.raises(UsageError):
            settings.read_config_file(cfg)

    def test_precedence_order(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("seed=7\nsamples=500\n", encoding="utf-8")
        run = settings.RunSettings({"seed": 11, "samples": None}, str(cfg))
        assert run.get("seed", cast=int) == 11
        assert run.get("samples", cast=int) == 500
        assert run.get("sphere_points", cast=int) == settings.DEFAULTS["sphere_points"]
        assert run.get("missing", default="x") == "x"
        with pytest.raises(UsageError):
            settings.RunSettings({"seed": "abc"}).get("seed", cast=int)

    def test_parse_bool(self):
        assert settings.parse_bool("Yes")
        assert not settings.parse_bool("")
        assert settings.parse_bool(True)


def test_notify_respects_quiet(capsys):
    notify.set_quiet(False)
    notify.notify("info", "hello")
    assert capsys.readouterr().err == "[INFO] hello\n"
    notify.set_quiet(True)
    notify.notify("info", "hidden")
    assert capsys.readouterr().err == ""
