import json
import math
import os
from pathlib import Path

import pytest

import qhhg

CONFIGS = Path(os.environ.get("QHHG_CONFIG_DIR", Path(__file__).resolve().parents[2] / "configs"))
G0, OMEGA0 = 4e-8, 0.005


def test_version():
    assert qhhg.__version__.count(".") == 2


def test_bessel_and_band():
    assert qhhg.bessel_j(1, 1.0) == pytest.approx(0.44005058574493355, rel=1e-14)
    band = qhhg.BandModel.zno()
    assert band.l_max == 5
    assert qhhg.lattice_coupling(band, G0, OMEGA0) == pytest.approx(6.0189e-6, rel=1e-4)
    assert qhhg.occupied_cos_sum(band, 0) == pytest.approx(10.0)


def test_cutoffs():
    band = qhhg.BandModel.zno()
    coh = qhhg.DrivingField.coherent(complex(math.sqrt(7.35e11), 0.0))
    bsv = qhhg.DrivingField.bsv(14.3548)
    assert qhhg.cutoff_order(band, coh, G0, OMEGA0) == pytest.approx(25.8, abs=0.1)
    assert qhhg.cutoff_order(band, bsv, G0, OMEGA0) == pytest.approx(67.3, abs=0.5)


def test_floquet_selection_rule():
    band = qhhg.BandModel.zno()
    orders, weights = qhhg.floquet_peaks(band, qhhg.DrivingField.thermal(1e9), G0, OMEGA0, 11)
    assert orders == [1, 3, 5, 7, 9, 11]
    assert all(w > 0 for w in weights)


def test_radial_grid_mass():
    nodes, weights = qhhg.radial_grid(qhhg.DrivingField.fock(100))
    assert len(nodes) == len(weights)
    assert sum(weights) == pytest.approx(1.0, abs=1e-10)


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        qhhg.DrivingField.thermal(-1.0)
    with pytest.raises(ValueError):
        qhhg.run_config_text("run.kind = nonsense\n")


def test_app_report():
    r = qhhg.app_report(100, 1.0)
    assert r["photon_number_app"] == pytest.approx(101.0, rel=1e-6)
    assert r["mandel_q_exact"] == -1.0


def test_run_cutoff_config(tmp_path):
    files = qhhg.run_config(str(CONFIGS / "zno_cutoff.cfg"), str(tmp_path))
    assert files[-1].endswith("manifest.json")
    data = json.loads((tmp_path / "cutoff.json").read_text())
    assert data["cutoff"]["coherent"] == pytest.approx(25.8, abs=0.1)
