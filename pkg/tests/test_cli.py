"""Command-line interface: each subcommand's flags and output formats."""

import json

import numpy as np
import pytest

from icvkde.cli import main
from icvkde.crossval import icv_capped, minimize_lscv, oversmoothed_bandwidth
from icvkde.densities import standard_suite
from icvkde.kernels import model_params


@pytest.fixture
def data_file(tmp_path):
    f = standard_suite()["gaussian"]
    data = f.sample(120, seed=5)
    path = tmp_path / "data.txt"
    path.write_text("\n".join(f"{x:.17g}" for x in data) + "\n")
    return path, data


class TestSelect:
    def test_default_icv_capped(self, data_file, capsys):
        path, data = data_file
        assert main(["select", "--input", str(path)]) == 0
        out = json.loads(capsys.readouterr().out)
        ref = icv_capped(data, *model_params(data.size))
        assert out["method"] == "ICV_capped"
        assert out["bandwidth"] == pytest.approx(ref.bandwidth, rel=1e-10)
        assert out["n"] == data.size

    def test_lscv_method(self, data_file, capsys):
        path, data = data_file
        assert main(["select", "--input", str(path),
                     "--method", "lscv"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["method"] == "LSCV"
        assert out["bandwidth"] == pytest.approx(
            minimize_lscv(data).bandwidth, rel=1e-10)

    def test_oversmoothed_method(self, data_file, capsys):
        path, data = data_file
        assert main(["select", "--input", str(path), "--method", "os"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["bandwidth"] == pytest.approx(
            oversmoothed_bandwidth(data), rel=1e-12)

    def test_explicit_kernel_parameters(self, data_file, capsys):
        path, data = data_file
        assert main(["select", "--input", str(path), "--method", "icv",
                     "--alpha", "6", "--sigma", "6"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["selection_bandwidth"] > 0

    def test_trace_emission(self, data_file, tmp_path, capsys):
        path, _ = data_file
        trace = tmp_path / "trace.csv"
        assert main(["select", "--input", str(path), "--method", "lscv",
                     "--emit-trace", str(trace)]) == 0
        lines = trace.read_text().strip().splitlines()
        assert lines[0] == "h,criterion"
        assert len(lines) > 100

    def test_stdin_input(self, monkeypatch, capsys):
        import io
        monkeypatch.setattr("sys.stdin", io.StringIO("0.1\n0.9\n-0.4\n1.3\n"
                                                     "0.2\n-1.1\n0.5\n"))
        assert main(["select", "--method", "lscv"]) == 0
        assert json.loads(capsys.readouterr().out)["n"] == 7


class TestDensity:
    def test_csv_grid_output(self, data_file, capsys):
        path, data = data_file
        assert main(["density", "--input", str(path), "--grid=-2:2:0.5",
                     "--bandwidth", "0.4"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "x,fhat"
        assert len(lines) == 1 + 9
        xs = [float(l.split(",")[0]) for l in lines[1:]]
        np.testing.assert_allclose(xs, np.arange(-2, 2.25, 0.5), atol=1e-12)
        vals = [float(l.split(",")[1]) for l in lines[1:]]
        assert all(v >= 0 for v in vals)


class TestLocal:
    def test_csv_with_true_density(self, data_file, capsys):
        path, _ = data_file
        assert main(["local", "--input", str(path), "--grid=-1:1:0.5",
                     "--window", "0.3", "--alpha", "6", "--sigma", "6",
                     "--density", "gaussian"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "x,bandwidth,fhat_local,f_true"
        assert len(lines) == 1 + 5
        f = standard_suite()["gaussian"]
        for line in lines[1:]:
            x, bw, fh, ft = (float(p) for p in line.split(","))
            assert bw > 0
            assert ft == pytest.approx(f(x), rel=1e-12)


class TestTheory:
    def test_json_fields(self, capsys):
        assert main(["theory", "--alpha", "2.4233", "--n", "10000"]) == 0
        out = json.loads(capsys.readouterr().out)
        for key in ("a_alpha", "c_alpha", "d_alpha", "sigma_opt", "mse_opt",
                    "s_n", "b_n_bias", "rescale_constant"):
            assert key in out and out[key] > 0


class TestSimulate:
    def test_small_study_writes_csvs(self, tmp_path, capsys):
        rec = tmp_path / "records.csv"
        summ = tmp_path / "summary.csv"
        assert main(["simulate", "--density", "gaussian", "--n", "100",
                     "--reps", "3", "--seed", "1",
                     "--out", str(rec), str(summ)]) == 0
        rec_lines = rec.read_text().strip().splitlines()
        assert rec_lines[0].startswith("seed,h0_hat,h_ucv")
        assert len(rec_lines) == 1 + 3
        summ_lines = summ.read_text().strip().splitlines()
        assert len(summ_lines) == 1 + 1
        assert "gaussian" in capsys.readouterr().out
