"""Intraband high-harmonic generation driven by quantum light."""

import json as _json

from ._qhhg import (  # noqa: F401
    BandModel,
    ConfigError,
    DrivingField,
    FieldKind,
    NumericalError,
    __version__,
    app_report_json,
    bessel_j,
    bessel_remainder_bound,
    c_coefficient,
    correlation_g,
    cutoff_order,
    density,
    dispersion,
    floquet_peaks,
    harmonic_signal_exact,
    harmonic_signal_perturbative,
    k_constant,
    lattice_coupling,
    moments,
    occupied_cos_sum,
    perturbative_limit,
    radial_density,
    radial_grid,
    run_config_text,
    set_thread_count,
)


def app_report(fock_n=100, bsv_r=1.0):
    """APP validation report as a dict."""
    return _json.loads(app_report_json(fock_n, bsv_r))


def run_config(path, out_dir=""):
    """Run a config file; returns the paths written."""
    with open(path, encoding="utf-8") as fh:
        return run_config_text(fh.read(), out_dir)
