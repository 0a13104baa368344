"""Tests for the figure-rendering script.

CSV inputs come either from the pcmkit CLI (its published output format) or
from small handwritten files covering edge cases.
"""

import subprocess
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from render import FigureError, FigureJob, main, render  # noqa: E402


def run_cli(*args, out):
    subprocess.run(
        [sys.executable, "-m", "pcmkit.cli", *args, "--out", str(out)],
        check=True,
        capture_output=True,
    )


@pytest.fixture(scope="module")
def scatter_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("csv") / "scatter.csv"
    run_cli("study", "scatter", "--x", "im", "--y", "re", "--n", "4",
            "--count", "60", "--seed", "5", out=path)
    return path


@pytest.fixture(scope="module")
def scan_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("csv") / "scan.csv"
    run_cli("study", "scan", "--index", "ci", "--points", "81", out=path)
    return path


def csv_data_rows(path):
    lines = path.read_text().splitlines()
    return [ln for ln in lines if ln and not ln.startswith("#")][1:]


class TestScatter:
    def test_point_count_matches_csv(self, scatter_csv, tmp_path):
        out = tmp_path / "fig.png"
        info = render(FigureJob(scatter_csv, "scatter", out))
        assert out.exists() and out.stat().st_size > 0
        assert info.n_points == len(csv_data_rows(scatter_csv))

    def test_highlight_ids(self, scatter_csv, tmp_path):
        out = tmp_path / "fig.png"
        info = render(FigureJob(scatter_csv, "scatter", out, highlight_ids=(3, 17)))
        assert info.n_highlighted == 2

    def test_unknown_highlight_id_errors(self, scatter_csv, tmp_path):
        job = FigureJob(scatter_csv, "scatter", tmp_path / "fig.png",
                        highlight_ids=(999999,))
        with pytest.raises(FigureError, match="highlight ids"):
            render(job)


class TestScan:
    def test_annotation_is_argmin_row_string(self, scan_csv, tmp_path):
        rows = csv_data_rows(scan_csv)
        argmin_row = min(rows, key=lambda r: float(r.split(",")[1]))
        expected_x = argmin_row.split(",")[0]

        info = render(FigureJob(scan_csv, "scan", tmp_path / "fig.png"))
        assert info.annotation_x == expected_x
        assert info.n_points == len(rows)

    def test_annotation_uses_csv_text_verbatim(self, tmp_path):
        # x values written with deliberate trailing zeros: a reformat would
        # not round-trip, so this pins "pure function of the CSV".
        path = tmp_path / "scan.csv"
        path.write_text("x,value\n0.50,3.0\n1.50,0.25\n4.50,2.0\n")
        info = render(FigureJob(path, "scan", tmp_path / "fig.png"))
        assert info.annotation_x == "1.50"


class TestErrors:
    def test_header_only_csv(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("x,value\n")
        with pytest.raises(FigureError, match="no data rows"):
            render(FigureJob(path, "scan", tmp_path / "fig.png"))

    def test_wrong_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(FigureError, match="expected columns"):
            render(FigureJob(path, "scatter", tmp_path / "fig.png"))

    def test_missing_file(self, tmp_path):
        job = FigureJob(tmp_path / "nope.csv", "scan", tmp_path / "fig.png")
        with pytest.raises(FigureError, match="cannot read"):
            render(job)


class TestCli:
    def test_scatter_end_to_end(self, scatter_csv, tmp_path, capsys):
        out = tmp_path / "fig1.png"
        rc = main(["--kind", "scatter", "--in", str(scatter_csv),
                   "--out", str(out), "--highlight", "1,2"])
        assert rc == 0
        assert out.exists()
        assert "wrote" in capsys.readouterr().out

    def test_error_exit_and_message(self, tmp_path, capsys):
        path = tmp_path / "empty.csv"
        path.write_text("x,value\n")
        rc = main(["--kind", "scan", "--in", str(path),
                   "--out", str(tmp_path / "fig.png")])
        assert rc == 1
        assert "error:" in capsys.readouterr().err

    def test_bad_highlight_value(self, tmp_path, capsys):
        rc = main(["--kind", "scatter", "--in", str(tmp_path / "x.csv"),
                   "--out", str(tmp_path / "fig.png"), "--highlight", "1,zap"])
        assert rc == 1
        assert "highlight" in capsys.readouterr().err
