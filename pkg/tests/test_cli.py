import json

import pytest

from hhmeasure.cli import main


@pytest.fixture
def shift_symbol(tmp_path):
    path = tmp_path / "shift.json"
    path.write_text(json.dumps({"type": "finite_band",
                                "coeffs": [{"k": 1, "re": 1.0, "im": 0.0}]}))
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestMeasure:
    def test_density_csv(self, capsys, shift_symbol, tmp_path):
        out = tmp_path / "density.csv"
        code, _, _ = run_cli(capsys, "measure", "--symbol", shift_symbol,
                             "--grid=-1.5,1.5,-1.5,1.5,40,40",
                             "--r", "1.0", "--out", str(out))
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[1] == "x,y,density_re,density_im,valid"
        assert "tail_bound=0" in lines[0]
        # density inside the circle is 1/(2 pi i) = -i/(2 pi)
        rows = [ln.split(",") for ln in lines[2:]]
        inner = min(rows, key=lambda r: abs(float(r[0])) + abs(float(r[1])))
        assert float(inner[2]) == pytest.approx(0.0)
        assert float(inner[3]) == pytest.approx(-1 / (2 * 3.141592653589793), rel=1e-9)

    def test_deterministic_bytes(self, capsys, shift_symbol, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (out1, out2):
            code, _, _ = run_cli(capsys, "measure", "--symbol", shift_symbol,
                                 "--grid=-1.5,1.5,-1.5,1.5,30,30",
                                 "--r", "0.9", "--out", str(out))
            assert code == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_json_format(self, capsys, shift_symbol):
        code, out, _ = run_cli(capsys, "measure", "--symbol", shift_symbol,
                               "--grid=-1.5,1.5,-1.5,1.5,8,8", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["grid"]["nx"] == 8
        assert len(doc["cells"]) == 64
        assert "masked_area_fraction" in doc


class TestTraceCheck:
    def test_report(self, capsys, shift_symbol):
        code, out, _ = run_cli(capsys, "trace-check", "--symbol", shift_symbol,
                               "--p", "x", "--q", "y",
                               "--grid=-1.5,1.5,-1.5,1.5,300,300")
        assert code == 0
        doc = json.loads(out)
        assert doc["lhs"]["im"] == pytest.approx(-0.5, abs=1e-12)
        assert doc["abs_err"] < 1e-3
        assert set(doc) >= {"lhs", "rhs", "abs_err", "quad_err", "N", "grid",
                            "masked_area_fraction"}

    def test_tolerance_gate(self, capsys, shift_symbol):
        code, _, err = run_cli(capsys, "trace-check", "--symbol", shift_symbol,
                               "--p", "x", "--q", "y",
                               "--grid=-1.5,1.5,-1.5,1.5,150,150",
                               "--tol", "1e-15")
        assert code == 3
        assert json.loads(err)["code"] == "tolerance"


class TestValidation:
    def test_malformed_symbol_exits_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"type": "finite_band", "coeffs": [], "x": 1}))
        code, _, err = run_cli(capsys, "measure", "--symbol", str(bad))
        assert code == 2
        assert json.loads(err)["code"] == "schema"

    def test_missing_symbol_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "winding", "--point", "0,0")
        assert code == 2
        assert json.loads(err)["code"] == "schema"

    def test_bad_r_exits_2(self, capsys, shift_symbol):
        code, _, err = run_cli(capsys, "measure", "--symbol", shift_symbol,
                               "--r", "1.5")
        assert code == 2

    def test_grid_guard(self, capsys, shift_symbol):
        code, _, err = run_cli(capsys, "measure", "--symbol", shift_symbol,
                               "--grid=-1,1,-1,1,10000,10000")
        assert code == 2

    def test_unknown_subcommand(self, capsys):
        code = main(["frobnicate"])
        assert code == 2


class TestWinding:
    def test_points(self, capsys, shift_symbol):
        code, out, _ = run_cli(capsys, "winding", "--symbol", shift_symbol,
                               "--point", "0,0", "--point", "2,0", "--r", "1.0")
        assert code == 0
        doc = json.loads(out)
        assert [row["winding"] for row in doc["rows"]] == [1, 0]

    def test_on_curve_exits_3(self, capsys, shift_symbol):
        code, _, err = run_cli(capsys, "winding", "--symbol", shift_symbol,
                               "--point", "1,0", "--r", "1.0", "--tol", "1e-3")
        assert code == 3
        assert json.loads(err)["code"] == "numerical"


class TestIndexCheck:
    def test_sampled_points(self, capsys, shift_symbol):
        code, out, _ = run_cli(capsys, "index-check", "--symbol", shift_symbol,
                               "--grid=-1.5,1.5,-1.5,1.5,120,120",
                               "--count", "10", "--r", "1.0")
        assert code == 0
        doc = json.loads(out)
        assert doc["all_ok"] is True
        assert len(doc["rows"]) == 10


class TestSmoothLimit:
    def test_probe(self, capsys, shift_symbol):
        code, out, _ = run_cli(capsys, "smooth-limit", "--symbol", shift_symbol,
                               "--p", "x", "--q", "y",
                               "--grid=-1.5,1.5,-1.5,1.5,150,150",
                               "--r", "0.9", "--r", "0.99")
        assert code == 0
        doc = json.loads(out)
        assert doc["lhs"]["im"] == pytest.approx(-0.5, abs=1e-12)
        assert len(doc["rows"]) == 2
        assert doc["rows"][1]["diff_prev"] > 0


class TestBesov:
    def test_report(self, capsys, shift_symbol):
        code, out, _ = run_cli(capsys, "besov", "--symbol", shift_symbol, "--p", "2.0")
        assert code == 0
        doc = json.loads(out)
        assert doc["analytic_half"]["verdict"] == "converging"
        assert doc["coanalytic_half"]["seminorm_partial"] == 0.0

    def test_sufficiency(self, capsys, shift_symbol):
        code, out, _ = run_cli(capsys, "besov", "--symbol", shift_symbol,
                               "--p", "2.0", "--q", "2.0")
        assert code == 0
        doc = json.loads(out)
        assert doc["almost_normal_sufficient"]["verdict"] == "met"

    def test_bad_conjugates(self, capsys, shift_symbol):
        code, _, err = run_cli(capsys, "besov", "--symbol", shift_symbol,
                               "--p", "3.0", "--q", "1.4")
        assert code == 2


class TestGallery:
    def test_json(self, capsys):
        code, out, _ = run_cli(capsys, "gallery")
        assert code == 0
        doc = json.loads(out)
        cases = {row["case"] for row in doc["rows"]}
        assert {"weighted_shift", "cesaro", "hilbert_schmidt"} <= cases

    def test_csv(self, capsys):
        code, out, _ = run_cli(capsys, "gallery", "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "case,quantity,computed,closed_form"

    def test_deterministic(self, capsys):
        _, out1, _ = run_cli(capsys, "gallery")
        _, out2, _ = run_cli(capsys, "gallery")
        assert out1 == out2
