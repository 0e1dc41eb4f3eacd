// Acceptance checks 1-12; one PASS/FAIL line each, exit status 1 if any fail.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "qhhg/analysis.hpp"
#include "qhhg/appcheck.hpp"
#include "qhhg/efield.hpp"
#include "qhhg/fft.hpp"
#include "qhhg/numerics.hpp"
#include "qhhg/parallel.hpp"
#include "qhhg/run.hpp"
#include "qhhg/specfun.hpp"
#include "qhhg/spectrum.hpp"
#include "support.hpp"

using namespace qhhg;
namespace fs = std::filesystem;

namespace {

// ZnO drive
constexpr double kG0 = 4e-8;
constexpr double kOmega0 = 0.005;
constexpr double kPhotons = 7.35e11;
constexpr double kBsvR = 14.3548;

// tolerances
constexpr double kFloquetPulseDeviation = 0.10;   // 1
constexpr double kFloquetPulseSeconds = 60.0;     // 1
constexpr int kFloquetPulseMaxOrder = 23;         // 1
constexpr double kEvenOddRatio = 1e-8;            // 2
constexpr double kOddFloor = 1e-16;               // 2: odd peaks below this x max are roundoff
constexpr double kCutoffCoherent = 25.8, kCutoffCoherentTol = 0.1;  // 3
constexpr double kCutoffFockTol = 0.1;                              // 3
constexpr double kCutoffThermal = 58.7, kCutoffThermalTol = 0.5;    // 3
constexpr double kCutoffBsv = 67.3, kCutoffBsvTol = 0.5;            // 3
constexpr int kTailOrder = 33;                    // 4
constexpr double kTailOrders = 6.0;               // 4
constexpr double kSlope = 5.0, kSlopeTol = 0.05;  // 5
constexpr double kThermalRatio = 120.0, kThermalRatioTol = 0.02;  // 5
constexpr double kDivergeAt10x = 0.5, kAgreeAtHalf = 0.05;        // 6
constexpr double kJacobiAngerTol = 1e-8;          // 7
constexpr int kJacobiAngerPoints = 4096;          // 7
constexpr int kRemainderSweep = 10000;            // 8
constexpr double kBoundAtNinth = 1e-2;            // 8
constexpr double kMeanOverStd = 1e-10;            // 9
constexpr double kRipple = 0.20;                  // 9
constexpr double kBsvFrequencyTol = 0.02;         // 9
constexpr double kMinFwhmFs = 0.8;                // 9
constexpr double kEfieldSeconds = 300.0;          // 9
constexpr double kAppRelTol = 1e-6;               // 10
constexpr double kSolidAngleTol = 1e-10;          // 11
constexpr double kConvergenceTol = 0.01;          // 12
constexpr double kConvergenceFloor = 1e-12;       // 12: quantities below this x max are not compared

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

PulseSpec zno_pulse() { return PulseSpec{}; }

PulseSpec periodic_pulse(int cycles) {
  PulseSpec p;
  p.envelope = EnvelopeKind::None;
  p.flat_cycles = cycles;
  p.ramp_cycles = 0;
  return p;
}

DrivingField field_of(FieldKind k) {
  return k == FieldKind::BSV ? DrivingField::bsv(kBsvR) : DrivingField::from_mean_photons(k, kPhotons);
}

const FieldKind kKinds[] = {FieldKind::Coherent, FieldKind::Thermal, FieldKind::Fock, FieldKind::BSV};

Outcome floquet_pulse_consistency() {
  const auto t0 = std::chrono::steady_clock::now();
  const BandModel band = BandModel::zno();
  const PulseSpec p = zno_pulse();
  const auto field = field_of(FieldKind::Coherent);
  const Spectrum s = quantum_spectrum(band, p, field, TimeGrid::covering(p, 512), {}, 2);
  const auto heights = harmonic_peak_heights(s, kOmega0, kFloquetPulseMaxOrder);
  const FloquetPeaks fl = floquet_peaks(band, field, kG0, kOmega0, kFloquetPulseMaxOrder);
  const double elapsed = seconds_since(t0);
  double rmin = 1e300, rmax = 0.0;
  int nmin = 0, nmax = 0;
  for (auto [n, h] : heights) {
    if (n % 2 == 0) continue;
    const double r = h / *fl.weight(n);
    if (r < rmin) { rmin = r; nmin = n; }
    if (r > rmax) { rmax = r; nmax = n; }
  }
  // the best single constant is (rmax + rmin)/2; its worst deviation follows
  const double dev = (rmax - rmin) / (rmax + rmin);
  return {dev < kFloquetPulseDeviation && elapsed < kFloquetPulseSeconds,
          fmt("max deviation %.3g (limit %.2g) with ratio range [%.3g at n=%d, %.3g at n=%d]; %.1f s",
              dev, kFloquetPulseDeviation, rmin, nmin, rmax, nmax, elapsed)};
}

Outcome selection_rule() {
  const BandModel band = BandModel::zno();
  const PulseSpec p = periodic_pulse(8);
  const TimeGrid g = TimeGrid::covering(p, 512);
  bool pass = true;
  std::string detail;
  for (FieldKind k : kKinds) {
    const Spectrum s = quantum_spectrum(band, p, field_of(k), g, {}, 1);
    const auto h = harmonic_peak_heights(s, kOmega0, 80);
    double top = 0.0;
    for (auto [n, v] : h) top = std::max(top, v);
    double worst = 0.0;
    for (int n = 2; n <= 80; n += 2) {
      const double odd = std::min(h[n - 2].second, n < 80 ? h[n].second : h[n - 2].second);
      if (odd < kOddFloor * top) continue;
      worst = std::max(worst, h[n - 1].second / odd);
    }
    pass = pass && worst < kEvenOddRatio;
    detail += fmt("%s %.2g; ", to_string(k).c_str(), worst);
  }
  return {pass, "worst even/odd window ratio (periodic drive): " + detail + fmt("limit %.0g", kEvenOddRatio)};
}

Outcome cutoffs() {
  const BandModel band = BandModel::zno();
  auto cut = [&](FieldKind k) { return cutoff_order(band, field_of(k), kG0, kOmega0); };
  const double c = cut(FieldKind::Coherent), f = cut(FieldKind::Fock), t = cut(FieldKind::Thermal),
               b = cut(FieldKind::BSV);
  const bool pass = std::abs(c - kCutoffCoherent) <= kCutoffCoherentTol && std::abs(c - f) <= kCutoffFockTol &&
                    std::abs(t - kCutoffThermal) <= kCutoffThermalTol && std::abs(b - kCutoffBsv) <= kCutoffBsvTol &&
                    std::max(c, f) < t && t < b;
  return {pass, fmt("coherent %.4f, fock %.4f, thermal %.4f, bsv %.4f", c, f, t, b)};
}

Outcome tail_contrast() {
  const BandModel band = BandModel::zno();
  auto w = [&](FieldKind k) { return *floquet_peaks(band, field_of(k), kG0, kOmega0, kTailOrder).weight(kTailOrder); };
  const double c = w(FieldKind::Coherent), t = w(FieldKind::Thermal), b = w(FieldKind::BSV);
  const double ot = std::log10(t / c), ob = std::log10(b / c);
  return {ot >= kTailOrders && ob >= kTailOrders,
          fmt("n=%d weights coherent %.3g, thermal %.3g (%.2f orders), bsv %.3g (%.2f orders); need %.0f",
              kTailOrder, c, t, ot, b, ob, kTailOrders)};
}

Outcome power_scaling() {
  const BandModel band = BandModel::zno();
  bool pass = true;
  std::string detail = "slopes ";
  for (FieldKind k : kKinds) {
    const double thr = perturbative_limit(band, k, 5, kG0, kOmega0).mean_photons;
    double lo = 1e300, hi = -1e300;
    double prev_n = 0.0, prev_s = 0.0;
    for (int i = 0; i <= 8; ++i) {
      const double photons = 0.1 * thr * std::pow(10.0, -0.25 * i);
      const double s = harmonic_signal_exact(band, DrivingField::from_mean_photons(k, photons), 5, kG0, kOmega0);
      if (i > 0) {
        const double slope = std::log(prev_s / s) / std::log(prev_n / photons);
        lo = std::min(lo, slope);
        hi = std::max(hi, slope);
      }
      prev_n = photons;
      prev_s = s;
    }
    pass = pass && std::abs(lo - kSlope) <= kSlopeTol && std::abs(hi - kSlope) <= kSlopeTol;
    detail += fmt("%s [%.4f, %.4f]; ", to_string(k).c_str(), lo, hi);
  }
  const double thr = perturbative_limit(band, FieldKind::Thermal, 5, kG0, kOmega0).mean_photons;
  double rlo = 1e300, rhi = 0.0;
  for (double frac : {1e-3, 1e-2, 1e-1}) {
    const double photons = frac * thr;
    const double r = harmonic_signal_exact(band, DrivingField::thermal(photons), 5, kG0, kOmega0) /
                     harmonic_signal_exact(band, DrivingField::coherent({std::sqrt(photons), 0.0}), 5, kG0, kOmega0);
    rlo = std::min(rlo, r);
    rhi = std::max(rhi, r);
  }
  pass = pass && std::abs(rlo / kThermalRatio - 1.0) <= kThermalRatioTol &&
         std::abs(rhi / kThermalRatio - 1.0) <= kThermalRatioTol;
  return {pass, detail + fmt("thermal/coherent ratio [%.2f, %.2f]", rlo, rhi)};
}

Outcome perturbative_threshold() {
  const BandModel band = BandModel::zno();
  const double thr = perturbative_limit(band, FieldKind::Coherent, 5, kG0, kOmega0).mean_photons;
  auto gap = [&](double photons) {
    const auto f = DrivingField::coherent({std::sqrt(photons), 0.0});
    const double e = harmonic_signal_exact(band, f, 5, kG0, kOmega0);
    return std::abs(e - harmonic_signal_perturbative(band, f, 5, kG0, kOmega0)) / e;
  };
  const double at10 = gap(10.0 * thr), at_half = gap(0.5 * thr);
  return {at10 > kDivergeAt10x && at_half < kAgreeAtHalf,
          fmt("threshold %.4g; relative gap %.4f at 10x (need > %.2f), %.2e at 0.5x (need < %.2f)", thr, at10,
              kDivergeAt10x, at_half, kAgreeAtHalf)};
}

Outcome jacobi_anger() {
  double worst = 0.0;
  for (double z : {0.5, 2.0, 10.0, 40.0}) {
    std::vector<double> f(kJacobiAngerPoints);
    for (int k = 0; k < kJacobiAngerPoints; ++k) {
      f[k] = std::sin(z * std::sin(2.0 * std::numbers::pi * k / kJacobiAngerPoints));
    }
    const auto x = real_dft(f);
    for (int n = 1; 2 * n - 1 < std::min(kJacobiAngerPoints / 2, kBesselMaxOrder); ++n) {
      const double coeff = -x[2 * n - 1].imag() / kJacobiAngerPoints;
      worst = std::max(worst, std::abs(coeff - bessel_j(2 * n - 1, z)));
    }
  }
  return {worst < kJacobiAngerTol, fmt("max |coefficient - J_{2n-1}(z)| = %.2e", worst)};
}

Outcome remainder_bound() {
  qhhg::testing::Rng rng(20240601);
  double worst = 0.0;
  for (int i = 0; i < kRemainderSweep; ++i) {
    const int n = rng.integer(1, 50);
    const double x = rng.uniform(0.0, n);
    const double lead = std::exp(n * std::log(0.5 * x) - std::lgamma(n + 1.0));
    const double bound = bessel_remainder_bound(n, x);
    if (bound > 0.0) worst = std::max(worst, std::abs(bessel_j(n, x) - lead) / bound);
  }
  double ninth = 0.0;
  for (int n = 1; n <= kBesselMaxOrder; ++n) ninth = std::max(ninth, bessel_remainder_bound(n, n / 9.0));
  return {worst <= 1.0 && ninth < kBoundAtNinth,
          fmt("max remainder/bound %.4f over %d points; max bound at x=n/9 %.3e", worst, kRemainderSweep, ninth)};
}

double flat_ripple(const FieldTrace& f, double lo, double hi) {
  double mn = 1e300, mx = 0.0;
  for (std::size_t k = 0; k < f.grid.size(); ++k) {
    if (f.grid.times[k] < lo || f.grid.times[k] > hi) continue;
    mn = std::min(mn, f.std[k]);
    mx = std::max(mx, f.std[k]);
  }
  return (mx - mn) / mx;
}

double dominant_frequency(const FieldTrace& f, double lo, double hi) {
  std::vector<double> v;
  for (std::size_t k = 0; k < f.grid.size(); ++k) {
    if (f.grid.times[k] >= lo && f.grid.times[k] < hi) v.push_back(f.std[k] * f.std[k]);
  }
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  for (double& x : v) x -= mean;
  const auto spec = real_dft(v);
  std::size_t best = 1;
  for (std::size_t m = 1; m < spec.size(); ++m) {
    if (std::abs(spec[m]) > std::abs(spec[best])) best = m;
  }
  const double dt = f.grid.times[1] - f.grid.times[0];
  return 2.0 * std::numbers::pi * static_cast<double>(best) / (static_cast<double>(v.size()) * dt);
}

Outcome efield() {
  const auto t0 = std::chrono::steady_clock::now();
  const BandModel band = BandModel::zno();
  const PulseSpec p = zno_pulse();
  const TimeGrid g = TimeGrid::covering(p, 512);
  const double lo = p.ramp_cycles * p.period(), hi = (p.ramp_cycles + p.flat_cycles) * p.period();
  bool pass = true;
  std::string detail;
  double min_fwhm = 1e300;
  std::string min_kind;
  for (FieldKind k : kKinds) {
    const FieldTrace f = generated_field_stats(band, p, field_of(k), g);
    double max_mean = 0.0, max_std = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      max_mean = std::max(max_mean, std::abs(f.mean[i]));
      max_std = std::max(max_std, f.std[i]);
    }
    if (k == FieldKind::Coherent) {
      pass = pass && max_std == 0.0;
      detail += fmt("coherent max std %.1g; ", max_std);
    } else if (k == FieldKind::BSV) {
      const double w = dominant_frequency(f, lo, hi);
      pass = pass && std::abs(w / (2.0 * kOmega0) - 1.0) <= kBsvFrequencyTol;
      detail += fmt("bsv std^2 peak at %.4f w0; ", w / kOmega0);
    } else {
      const double ripple = flat_ripple(f, lo, hi);
      pass = pass && max_mean < kMeanOverStd * max_std && ripple < kRipple;
      detail += fmt("%s mean/std %.1e ripple %.3f; ", to_string(k).c_str(), max_mean / max_std, ripple);
    }
    for (const auto& pk : peak_width_report(f, lo, hi)) {
      if (pk.fwhm_fs < min_fwhm) {
        min_fwhm = pk.fwhm_fs;
        min_kind = to_string(k);
      }
    }
  }
  const double elapsed = seconds_since(t0);
  pass = pass && min_fwhm >= kMinFwhmFs && elapsed < kEfieldSeconds;
  return {pass, detail + fmt("narrowest FWHM %.3f fs (%s, need >= %.1f); %.0f s", min_fwhm, min_kind.c_str(),
                             kMinFwhmFs, elapsed)};
}

Outcome app_suite() {
  using qhhg::testing::rel_diff;
  double worst = 0.0;
  for (std::int64_t n : {1LL, 100LL, 10000LL, 735000000000LL}) {
    const AppReport r = app_report(n, 1.0);
    const double nn = static_cast<double>(n);
    worst = std::max(worst, rel_diff(r.photon_number_app, nn + 1.0));
    worst = std::max(worst, rel_diff(r.fock_second_moment_app, nn * nn + 3.0 * nn + 2.0));
  }
  bool floor_ok = true;
  double mq = 0.0, exact_var = 0.0;
  for (double rr : {0.3, 1.0, 3.0, kBsvR}) {
    const AppReport r = app_report(100, rr);
    const double ch = std::cosh(rr);
    worst = std::max(worst, rel_diff(r.bsv_a2_app, -std::tanh(rr) * ch * ch));
    // 1 - tanh r written as 2 e^{-2r} / (1 + e^{-2r}) to avoid cancellation
    const double one_minus_tanh = 2.0 * std::exp(-2.0 * rr) / (1.0 + std::exp(-2.0 * rr));
    const double closed = 0.5 * ch * ch * one_minus_tanh + 0.25;
    worst = std::max(worst, rel_diff(r.min_quad_variance_app, closed));
    worst = std::max(worst, rel_diff(r.min_quad_variance_app_numeric, closed));
    floor_ok = floor_ok && r.min_quad_variance_app >= 0.25;
    mq = r.mandel_q_exact;
    if (rr == 1.0) exact_var = r.min_quad_variance_exact;
  }
  return {worst < kAppRelTol && floor_ok,
          fmt("worst relative gap %.2e; APP variance >= 1/4: %s; exact references Mandel-Q %.0f, "
              "min variance %.6f at r=1",
              worst, floor_ok ? "yes" : "no", mq, exact_var)};
}

Outcome solid_angle() {
  double worst = 0.0;
  std::string got_text;
  for (const std::array<double, 3>& j : {std::array<double, 3>{0, 0, 1}, std::array<double, 3>{1, 0, 0},
                                         std::array<double, 3>{0.3, -0.5, 0.8}}) {
    const auto got = polarization_solid_angle_sum(j);
    for (int d = 0; d < 3; ++d) worst = std::max(worst, std::abs(got[d] + 8.0 * std::numbers::pi / 3.0 * j[d]));
    if (got_text.empty()) got_text = fmt("z-hat -> (%.12f, %.12f, %.12f)", got[0], got[1], got[2]);
  }
  return {worst < kSolidAngleTol,
          fmt("%s; target -8pi/3 = %.12f; max |error| %.3g", got_text.c_str(), -8.0 * std::numbers::pi / 3.0, worst)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

double worst_shift(const std::vector<double>& a, const std::vector<double>& b) {
  double top = 0.0;
  for (double v : a) top = std::max(top, std::abs(v));
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i]) > kConvergenceFloor * top) worst = std::max(worst, std::abs(b[i] - a[i]) / std::abs(a[i]));
  }
  return worst;
}

std::vector<double> heights_of(const Spectrum& s, int n_max) {
  std::vector<double> out;
  for (auto [n, h] : harmonic_peak_heights(s, kOmega0, n_max)) {
    if (n % 2 == 1) out.push_back(h);
  }
  return out;
}

Outcome determinism_convergence() {
  const BandModel band = BandModel::zno();
  // byte-identical artifacts across repeats and thread counts
  const fs::path base = fs::temp_directory_path() / "qhhg_acceptance";
  bool identical = true;
  for (const char* kind : {"floquet", "spectrum"}) {
    RunConfig cfg = parse_config(std::string("run.kind = ") + kind +
                                 "\nfield.kind = thermal\nfield.mean_photons = 7.35e11\n"
                                 "run.convergence_check = false\ngrid.samples_per_cycle = 128\n");
    std::vector<std::string> outputs;
    for (unsigned threads : {1u, 3u}) {
      set_thread_count(threads);
      cfg.out_dir = (base / (std::string(kind) + std::to_string(threads))).string();
      fs::remove_all(cfg.out_dir);
      const RunSummary s = run(cfg);
      std::string all;
      for (const auto& f : s.files) {
        if (f.ends_with(".csv")) all += slurp(f);
      }
      outputs.push_back(all);
    }
    identical = identical && !outputs[0].empty() && outputs[0] == outputs[1];
  }
  set_thread_count(1);

  double worst = 0.0;
  std::string where;
  auto note = [&](double shift, const char* what) {
    if (shift > worst) {
      worst = shift;
      where = what;
    }
  };
  QuadratureSpec q1, q2;
  q2.radial_nodes = 2 * q1.radial_nodes;
  for (FieldKind k : kKinds) {
    const auto f = field_of(k);
    note(worst_shift(floquet_peaks(band, f, kG0, kOmega0, 61, q1).weights,
                     floquet_peaks(band, f, kG0, kOmega0, 61, q2).weights),
         "floquet weights, radial nodes");
    note(worst_shift({harmonic_signal_exact(band, f, 5, kG0, kOmega0, q1)},
                     {harmonic_signal_exact(band, f, 5, kG0, kOmega0, q2)}),
         "harmonic 5 signal, radial nodes");
  }
  const PulseSpec p = zno_pulse();
  const auto coherent = field_of(FieldKind::Coherent);
  note(worst_shift(heights_of(quantum_spectrum(band, p, coherent, TimeGrid::covering(p, 512)), 61),
                   heights_of(quantum_spectrum(band, p, coherent, TimeGrid::covering(p, 1024)), 61)),
       "coherent pulse peaks, samples per cycle");
  const auto bsv = field_of(FieldKind::BSV);
  const TimeGrid g = TimeGrid::covering(p, 512);
  note(worst_shift(heights_of(quantum_spectrum(band, p, bsv, g, q1), 61),
                   heights_of(quantum_spectrum(band, p, bsv, g, q2), 61)),
       "bsv pulse peaks, radial nodes");
  return {identical && worst < kConvergenceTol,
          fmt("CSV byte-identical across repeats/threads: %s; largest doubling shift %.2e (%s)",
              identical ? "yes" : "no", worst, where.c_str())};
}

}  // namespace

int main() {
  set_thread_count(1);
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"Floquet/pulse consistency", floquet_pulse_consistency},
      {"odd-harmonic selection rule", selection_rule},
      {"cutoff reproduction", cutoffs},
      {"spectral tail contrast", tail_contrast},
      {"power-scaling law", power_scaling},
      {"perturbative-validity threshold", perturbative_threshold},
      {"Jacobi-Anger identity", jacobi_anger},
      {"Bessel remainder bound", remainder_bound},
      {"E-field characteristics", efield},
      {"APP closed forms", app_suite},
      {"solid-angle polarization constant", solid_angle},
      {"determinism and convergence", determinism_convergence},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %2d %-4s %s: %s\n", index, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 12 criteria pass\n", 12 - failed);
  return failed == 0 ? 0 : 1;
}
