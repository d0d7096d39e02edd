import pytest

from figplots.render import render
from figplots.spec import PlotSpec, SpecError


def test_curve_three_traces(sweep_csv, literature_csv, tmp_path):
    out = tmp_path / "curve.png"
    spec = PlotSpec(kind="mse_curve",
                    inputs=(str(sweep_csv), str(literature_csv)),
                    out=str(out), title="MSE vs oversampling")
    tables = render(spec)
    assert out.exists() and out.stat().st_size > 0
    algos = {row[0] for t in tables for row in t.rows}
    assert algos == {"b2r2", "hod", "cpf"}


def test_heatmap(grid_csv, tmp_path):
    out = tmp_path / "heat.png"
    render(PlotSpec(kind="mse_heatmap", inputs=(str(grid_csv),), out=str(out)))
    assert out.exists() and out.stat().st_size > 0


def test_heatmap_needs_algorithm_when_ambiguous(sweep_csv, tmp_path):
    out = tmp_path / "heat.png"
    spec = PlotSpec(kind="mse_heatmap", inputs=(str(sweep_csv),), out=str(out))
    with pytest.raises(SpecError, match="algorithm"):
        render(spec)
    assert not out.exists()  # nothing written on failure
    render(PlotSpec(kind="mse_heatmap", inputs=(str(sweep_csv),),
                    out=str(out), algorithm="hod"))
    assert out.exists()


def test_waveform_overlay(recovery_csv, tmp_path):
    out = tmp_path / "wave.png"
    render(PlotSpec(kind="waveform_overlay", inputs=(str(recovery_csv),),
                    out=str(out)))
    assert out.exists() and out.stat().st_size > 0


def test_schema_mismatch_names_columns(recovery_csv, tmp_path):
    out = tmp_path / "x.png"
    spec = PlotSpec(kind="mse_curve", inputs=(str(recovery_csv),), out=str(out))
    with pytest.raises(SpecError) as exc:
        render(spec)
    assert "algorithm" in str(exc.value)  # diagnostics name the columns
    assert not out.exists()


def test_empty_grid_is_an_error(tmp_path):
    p = tmp_path / "empty.csv"
    p.write_text("algorithm,lambda,of,snr_db,mse_db,mse_std_db,trials,fail_rate\n")
    out = tmp_path / "x.png"
    with pytest.raises(SpecError, match="no data rows"):
        render(PlotSpec(kind="mse_curve", inputs=(str(p),), out=str(out)))
    assert not out.exists()


def test_same_csv_twice_is_byte_identical(sweep_csv, tmp_path):
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    spec_a = PlotSpec(kind="mse_curve", inputs=(str(sweep_csv),), out=str(a))
    spec_b = PlotSpec(kind="mse_curve", inputs=(str(sweep_csv),), out=str(b))
    render(spec_a)
    render(spec_b)
    assert a.read_bytes() == b.read_bytes()


def test_svg_output_deterministic(sweep_csv, tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    render(PlotSpec(kind="mse_curve", inputs=(str(sweep_csv),), out=str(a)))
    render(PlotSpec(kind="mse_curve", inputs=(str(sweep_csv),), out=str(b)))
    assert a.read_bytes() == b.read_bytes()
