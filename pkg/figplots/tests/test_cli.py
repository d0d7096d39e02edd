import json

import pytest

from figplots.cli import main


def test_usage_exit_64():
    with pytest.raises(SystemExit) as exc:
        main(["plot"])  # missing --spec
    assert exc.value.code == 64


def test_plot_and_dump_table(sweep_csv, tmp_path, capsys):
    out = tmp_path / "curve.png"
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"kind": "mse_curve",
                                "inputs": [str(sweep_csv)],
                                "out": str(out)}))
    assert main(["plot", "--spec", str(spec), "--dump-table"]) == 0
    assert out.exists()
    # the dumped table is exactly the input file
    assert capsys.readouterr().out == sweep_csv.read_text()


def test_schema_error_exit_1(recovery_csv, tmp_path, capsys):
    out = tmp_path / "x.png"
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"kind": "mse_heatmap",
                                "inputs": [str(recovery_csv)],
                                "out": str(out)}))
    assert main(["plot", "--spec", str(spec)]) == 1
    assert "missing columns" in capsys.readouterr().err
    assert not out.exists()


def test_missing_spec_file_exit_1(capsys):
    assert main(["plot", "--spec", "/nonexistent/spec.json"]) == 1
