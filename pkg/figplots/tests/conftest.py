import json

import pytest

SWEEP_HEADER = "algorithm,lambda,of,snr_db,mse_db,mse_std_db,trials,fail_rate"

SWEEP_ROWS = [
    "b2r2,0.1,4.0,20.0,-21.5,0.8,50,0.0",
    "b2r2,0.1,10.0,20.0,-37.2,0.5,50,0.0",
    "b2r2,0.1,30.0,20.0,-46.1,0.4,50,0.0",
    "hod,0.1,4.0,20.0,12.3,1.9,50,0.0",
    "hod,0.1,10.0,20.0,4.8,2.2,50,0.0",
    "hod,0.1,30.0,20.0,-46.0,0.4,50,0.0",
]

GRID_ROWS = [
    f"b2r2,0.2,{of},{snr},{-(snr + of)},0.5,20,0.0"
    for of in (2.0, 6.0, 10.0) for snr in (10.0, 30.0, 50.0)
]

LITERATURE = "algorithm,lambda,of,snr_db,mse_db,source\ncpf,0.1,10.0,20.0,-40.0,literature\n"

RECOVERY = "n,true,folded,recovered,residual\n" + "\n".join(
    f"{n},{0.1 * n},{0.05 * n},{0.1 * n},0.0" for n in range(-4, 4)) + "\n"


@pytest.fixture
def sweep_csv(tmp_path):
    p = tmp_path / "sweep.csv"
    p.write_text(SWEEP_HEADER + "\n" + "\n".join(SWEEP_ROWS) + "\n")
    return p


@pytest.fixture
def grid_csv(tmp_path):
    p = tmp_path / "grid.csv"
    p.write_text(SWEEP_HEADER + "\n" + "\n".join(GRID_ROWS) + "\n")
    return p


@pytest.fixture
def literature_csv(tmp_path):
    p = tmp_path / "cpf.csv"
    p.write_text(LITERATURE)
    return p


@pytest.fixture
def recovery_csv(tmp_path):
    p = tmp_path / "recovery.csv"
    p.write_text(RECOVERY)
    return p


def write_spec(tmp_path, **fields):
    p = tmp_path / "spec.json"
    p.write_text(json.dumps(fields))
    return p
