#include "qhhg/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include "json.hpp"
#include <numbers>

#include "qhhg/analysis.hpp"
#include "qhhg/appcheck.hpp"
#include "qhhg/efield.hpp"
#include "qhhg/parallel.hpp"
#include "qhhg/spectrum.hpp"

namespace qhhg {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::vector<std::string>& header) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot write '" + path.string() + "'");
    row_strings(header);
  }
  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }
  void row(const std::vector<double>& cells) {
    std::vector<std::string> s;
    s.reserve(cells.size());
    for (double v : cells) s.push_back(format_double(v));
    row_strings(s);
  }

 private:
  std::ofstream out_;
};

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

// Largest relative change among entries above floor * max(reference).
double max_relative_change(const std::vector<double>& reference, const std::vector<double>& other,
                           double floor) {
  double top = 0.0;
  for (double v : reference) top = std::max(top, std::abs(v));
  double worst = 0.0;
  for (std::size_t i = 0; i < reference.size() && i < other.size(); ++i) {
    if (std::abs(reference[i]) <= floor * top) continue;
    worst = std::max(worst, std::abs(other[i] - reference[i]) / std::abs(reference[i]));
  }
  return worst;
}

std::vector<double> heights_only(const std::vector<std::pair<int, double>>& h) {
  std::vector<double> out;
  for (const auto& [n, v] : h) out.push_back(v);
  return out;
}

QuadratureSpec doubled(const QuadratureSpec& q) {
  QuadratureSpec d = q;
  d.radial_nodes *= 2;
  return d;
}

void run_spectrum(const RunConfig& cfg, const fs::path& dir, RunSummary& summary, json& manifest) {
  const DrivingField& field = *cfg.field;
  const TimeGrid grid = TimeGrid::covering(cfg.pulse, cfg.samples_per_cycle);
  const Spectrum s = quantum_spectrum(cfg.band, cfg.pulse, field, grid, cfg.quad, cfg.zero_pad);
  {
    CsvWriter csv(dir / "spectrum.csv", {"omega_au", "harmonic_order", "density"});
    for (std::size_t m = 0; m < s.omega.size(); ++m) {
      csv.row({s.omega[m], s.omega[m] / cfg.pulse.omega0, s.density[m]});
    }
  }
  const int n_max = std::min(cfg.spectrum_n_max,
                             static_cast<int>(std::floor(s.omega.back() / cfg.pulse.omega0 - 0.5)));
  const auto heights = harmonic_peak_heights(s, cfg.pulse.omega0, n_max);
  {
    CsvWriter csv(dir / "peaks.csv", {"n", "height"});
    for (const auto& [n, h] : heights) csv.row_strings({std::to_string(n), format_double(h)});
  }
  summary.files.push_back((dir / "spectrum.csv").string());
  summary.files.push_back((dir / "peaks.csv").string());
  const RadialGrid radial = radial_grid(field, cfg.quad.rel_tail, cfg.quad.radial_nodes);
  manifest["nodes"] = s.quadrature_nodes;
  manifest["convergence"]["tail_mass"] = radial.tail_mass;
  manifest["convergence"]["captured_mass"] = radial.captured_mass;
  manifest["convergence"]["span_sigma"] = radial.span_k;
  manifest["spectrum"] = {{"zero_pad", s.zero_pad}, {"dt_au", s.dt},
                          {"resolution_au", s.resolution()}, {"convention", s.convention},
                          {"band_hash", s.band_hash}, {"field_kind", s.field_kind}};
  if (cfg.convergence_check) {
    const auto ref = heights_only(heights);
    if (!field.is_point_mass()) {
      const Spectrum d = quantum_spectrum(cfg.band, cfg.pulse, field, grid, doubled(cfg.quad), cfg.zero_pad);
      manifest["convergence"]["radial_doubling_delta"] =
          max_relative_change(ref, heights_only(harmonic_peak_heights(d, cfg.pulse.omega0, n_max)), 1e-12);
    }
    const TimeGrid fine = TimeGrid::covering(cfg.pulse, 2 * cfg.samples_per_cycle);
    const Spectrum d = quantum_spectrum(cfg.band, cfg.pulse, field, fine, cfg.quad, cfg.zero_pad);
    manifest["convergence"]["samples_doubling_delta"] =
        max_relative_change(ref, heights_only(harmonic_peak_heights(d, cfg.pulse.omega0, n_max)), 1e-12);
  }
}

void run_floquet(const RunConfig& cfg, const fs::path& dir, RunSummary& summary, json& manifest) {
  const DrivingField& field = *cfg.field;
  const FloquetPeaks p = floquet_peaks(cfg.band, field, cfg.pulse.g0, cfg.pulse.omega0, cfg.floquet_n_max, cfg.quad);
  {
    CsvWriter csv(dir / "floquet.csv", {"n", "weight"});
    for (std::size_t i = 0; i < p.orders.size(); ++i) {
      csv.row_strings({std::to_string(p.orders[i]), format_double(p.weights[i])});
    }
  }
  summary.files.push_back((dir / "floquet.csv").string());
  const RadialGrid radial = radial_grid(field, cfg.quad.rel_tail, cfg.quad.radial_nodes);
  manifest["nodes"] = radial.nodes.size();
  manifest["convergence"]["tail_mass"] = radial.tail_mass;
  manifest["convergence"]["captured_mass"] = radial.captured_mass;
  manifest["convergence"]["span_sigma"] = radial.span_k;
  if (cfg.convergence_check && !field.is_point_mass()) {
    const FloquetPeaks d = floquet_peaks(cfg.band, field, cfg.pulse.g0, cfg.pulse.omega0,
                                         cfg.floquet_n_max, doubled(cfg.quad));
    manifest["convergence"]["radial_doubling_delta"] = max_relative_change(p.weights, d.weights, 1e-12);
  }
}

void run_cutoff(const RunConfig& cfg, const fs::path& dir, RunSummary& summary, json& manifest) {
  json out;
  out["mean_photons"] = cfg.mean_photons;
  out["lattice_coupling"] = lattice_coupling(cfg.band, cfg.pulse.g0, cfg.pulse.omega0);
  out["l_max"] = cfg.band.l_max();
  for (FieldKind kind : {FieldKind::Coherent, FieldKind::Thermal, FieldKind::Fock, FieldKind::BSV}) {
    const DrivingField f = DrivingField::from_mean_photons(kind, cfg.mean_photons);
    const Moments m = moments(f);
    out["cutoff"][to_string(kind)] = cutoff_order(cfg.band, f, cfg.pulse.g0, cfg.pulse.omega0);
    out["mu_p"][to_string(kind)] = m.mu;
    out["sigma_p"][to_string(kind)] = m.sigma;
  }
  write_json(dir / "cutoff.json", out);
  summary.files.push_back((dir / "cutoff.json").string());
  manifest["convergence"]["moments"] = "closed form";
}

void run_scaling(const RunConfig& cfg, const fs::path& dir, RunSummary& summary, json& manifest) {
  const FieldKind kind = cfg.field->kind;
  const ScalingCurve c = scaling_curve(cfg.band, kind, cfg.scaling_order, cfg.pulse.g0, cfg.pulse.omega0,
                                       cfg.scaling_min_photons, cfg.scaling_max_photons,
                                       cfg.scaling_points, cfg.quad);
  {
    CsvWriter csv(dir / "scaling.csv", {"mean_photons", "exact", "perturbative", "inside_perturbative_range"});
    for (std::size_t i = 0; i < c.mean_photons.size(); ++i) {
      csv.row_strings({format_double(c.mean_photons[i]), format_double(c.exact_signal[i]),
                       format_double(c.perturbative_signal[i]), c.inside_range[i] ? "1" : "0"});
    }
  }
  summary.files.push_back((dir / "scaling.csv").string());
  manifest["validity_threshold"] = c.validity_threshold;
  manifest["safety_factor"] = kPerturbativeSafety;
  const DrivingField probe = DrivingField::from_mean_photons(kind, cfg.scaling_max_photons);
  const RadialGrid radial = radial_grid(probe, cfg.quad.rel_tail, cfg.quad.radial_nodes);
  manifest["nodes"] = radial.nodes.size();
  manifest["convergence"]["tail_mass"] = radial.tail_mass;
  manifest["convergence"]["captured_mass"] = radial.captured_mass;
  if (cfg.convergence_check && !probe.is_point_mass()) {
    const double a = harmonic_signal_exact(cfg.band, probe, cfg.scaling_order, cfg.pulse.g0, cfg.pulse.omega0, cfg.quad);
    const double b = harmonic_signal_exact(cfg.band, probe, cfg.scaling_order, cfg.pulse.g0, cfg.pulse.omega0, doubled(cfg.quad));
    manifest["convergence"]["radial_doubling_delta"] = std::abs(b - a) / std::abs(a);
  }
}

// Mean changes are measured against the std scale as well, since the mean of
// a phase-symmetric field is pure rounding noise.
json trace_delta(const FieldTrace& ref, const FieldTrace& other, std::size_t stride) {
  double scale = 0.0;
  for (std::size_t k = 0; k < ref.grid.size(); ++k) {
    scale = std::max({scale, std::abs(ref.mean[k]), ref.std[k]});
  }
  double dmean = 0.0;
  std::vector<double> std_ref, std_o;
  for (std::size_t k = 0; k < ref.grid.size(); ++k) {
    dmean = std::max(dmean, std::abs(other.mean[k * stride] - ref.mean[k]));
    std_ref.push_back(ref.std[k]);
    std_o.push_back(other.std[k * stride]);
  }
  return {{"mean", scale > 0.0 ? dmean / scale : 0.0},
          {"std", max_relative_change(std_ref, std_o, 1e-3)}};
}

void run_efield(const RunConfig& cfg, const fs::path& dir, RunSummary& summary, json& manifest) {
  const DrivingField& field = *cfg.field;
  const TimeGrid grid = TimeGrid::covering(cfg.pulse, cfg.samples_per_cycle);
  auto compute = [&](const TimeGrid& g, const QuadratureSpec& q) {
    return cfg.efield_generated ? generated_field_stats(cfg.band, cfg.pulse, field, g, q)
                                : driving_field_stats(field, cfg.pulse.omega0, cfg.pulse.g0, g, q);
  };
  const FieldTrace t = compute(grid, cfg.quad);
  {
    CsvWriter csv(dir / "efield.csv", {"t_au", "t_fs", "mean", "std"});
    for (std::size_t k = 0; k < grid.size(); ++k) {
      csv.row({grid.times[k], grid.times[k] * kAtomicTimeFs, t.mean[k], t.std[k]});
    }
  }
  summary.files.push_back((dir / "efield.csv").string());
  const double ramp = cfg.pulse.ramp_cycles * cfg.pulse.period();
  const double flat_end = cfg.pulse.duration() - ramp;
  bool nonzero = false;
  for (std::size_t k = 0; k < grid.size(); ++k) nonzero = nonzero || t.std[k] > 0.0 || t.mean[k] != 0.0;
  if (nonzero) {
    const auto widths = peak_width_report(t, ramp, flat_end);
    CsvWriter csv(dir / "efield_peaks.csv", {"t_au", "t_fs", "height", "fwhm_fs", "bounded_by_neighbor"});
    for (const auto& p : widths) {
      csv.row_strings({format_double(p.t_au), format_double(p.t_fs), format_double(p.height),
                       format_double(p.fwhm_fs), p.bounded_by_neighbor ? "1" : "0"});
    }
    summary.files.push_back((dir / "efield_peaks.csv").string());
  }
  manifest["nodes"] = t.quadrature_nodes;
  manifest["field"] = cfg.efield_generated ? "generated" : "driving";
  manifest["neglected"] = "zero-point fluctuations and driving/generated cross terms";
  manifest["convergence"]["tail_mass"] = t.tail_mass;
  manifest["convergence"]["captured_mass"] = t.captured_mass;
  if (cfg.convergence_check && !field.is_point_mass()) {
    manifest["convergence"]["radial_doubling_delta"] = trace_delta(t, compute(grid, doubled(cfg.quad)), 1);
  }
  if (cfg.convergence_check) {
    const TimeGrid fine = TimeGrid::covering(cfg.pulse, 2 * cfg.samples_per_cycle);
    manifest["convergence"]["samples_doubling_delta"] = trace_delta(t, compute(fine, cfg.quad), 2);
  }
}

void run_validate_app(const RunConfig& cfg, const fs::path& dir, RunSummary& summary, json& manifest) {
  const AppReport r = app_report(cfg.app_fock_n, cfg.app_bsv_r, cfg.quad);
  {
    std::ofstream out(dir / "app_report.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write app_report.json");
    out << to_json(r) << '\n';
  }
  summary.files.push_back((dir / "app_report.json").string());
  const RadialGrid radial = radial_grid(DrivingField::fock(cfg.app_fock_n), cfg.quad.rel_tail, cfg.quad.radial_nodes);
  manifest["nodes"] = radial.nodes.size();
  manifest["convergence"]["tail_mass"] = radial.tail_mass;
  manifest["convergence"]["captured_mass"] = radial.captured_mass;
}

}  // namespace

RunSummary run(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  RunSummary summary;
  summary.out_dir = cfg.out_dir;
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  json manifest;
  json echo = json::object();
  for (const auto& [k, v] : cfg.entries) echo[k] = v;
  manifest["config"] = echo;
  manifest["run_kind"] = to_string(cfg.kind);
  manifest["code_version"] = QHHG_VERSION;
  manifest["threads"] = thread_count();
  manifest["band_hash"] = cfg.band.hash();
  manifest["convergence"] = json::object();
  switch (cfg.kind) {
    case RunKind::Spectrum: run_spectrum(cfg, dir, summary, manifest); break;
    case RunKind::Floquet: run_floquet(cfg, dir, summary, manifest); break;
    case RunKind::Cutoff: run_cutoff(cfg, dir, summary, manifest); break;
    case RunKind::Scaling: run_scaling(cfg, dir, summary, manifest); break;
    case RunKind::Efield: run_efield(cfg, dir, summary, manifest); break;
    case RunKind::ValidateApp: run_validate_app(cfg, dir, summary, manifest); break;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  manifest["wall_time_s"] = wall;
  json files = json::array();
  for (const auto& f : summary.files) files.push_back(fs::path(f).filename().string());
  manifest["files"] = files;
  write_json(dir / "manifest.json", manifest);
  summary.files.push_back((dir / "manifest.json").string());
  return summary;
}

}  // namespace qhhg
