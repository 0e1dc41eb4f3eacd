#include "qhhg/appcheck.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include "json.hpp"
#include <numbers>
#include <stdexcept>

#include "qhhg/numerics.hpp"

namespace qhhg {

double app_normal_moment(const DrivingField& field, int k, const QuadratureSpec& quad) {
  if (k < 1) throw std::invalid_argument("app_normal_moment: k must be >= 1");
  const RadialGrid grid = radial_grid(field, quad.rel_tail, quad.radial_nodes);
  LogSumExp acc;
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    if (grid.weights[i] > 0.0 && grid.nodes[i] > 0.0) {
      acc.add(std::log(grid.weights[i]) + 2.0 * k * std::log(grid.nodes[i]));
    }
  }
  const double v = std::exp(acc.value());
  if (!std::isfinite(v)) throw NumericalError("app_normal_moment: non-finite moment");
  return v;
}

double mandel_q(const DrivingField& fock, MandelMode mode, const QuadratureSpec& quad) {
  if (fock.kind != FieldKind::Fock || fock.n < 1) {
    throw std::invalid_argument("mandel_q: needs a Fock field with n >= 1");
  }
  const double n = static_cast<double>(fock.n);
  switch (mode) {
    case MandelMode::AppClosedForm: return 3.0 + 2.0 / n;
    case MandelMode::Exact: return -1.0;
    case MandelMode::AppIntegral: {
      const double mu = app_normal_moment(fock, 1, quad);
      const double m2 = app_normal_moment(fock, 2, quad);
      return (m2 - mu * mu) / mu;
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double min_quadrature_variance(const DrivingField& bsv, VarianceMode mode) {
  if (bsv.kind != FieldKind::BSV) throw std::invalid_argument("min_quadrature_variance: needs a BSV field");
  const double r = bsv.r;
  if (mode == VarianceMode::Exact) return 0.25 * std::exp(-2.0 * r);
  // 1/2 cosh^2 r (1 - tanh r) = (1 + e^{-2r}) / 4 without cancellation
  return 0.25 * (1.0 + std::exp(-2.0 * std::abs(r))) + 0.25;
}

LadderMoments ladder_moments(const DrivingField& field, const QuadratureSpec& quad) {
  const PhaseGrid grid = phase_grid(field, quad);
  NeumaierSum w, ar, ai, a2r, a2i, n;
  for (std::size_t i = 0; i < grid.alpha.size(); ++i) {
    const double wi = grid.weights[i];
    const auto z = grid.alpha[i];
    const auto z2 = z * z;
    w.add(wi);
    ar.add(wi * z.real());
    ai.add(wi * z.imag());
    a2r.add(wi * z2.real());
    a2i.add(wi * z2.imag());
    n.add(wi * std::norm(z));
  }
  const double total = w.value();
  LadderMoments m;
  m.a = {ar.value() / total, ai.value() / total};
  m.a2 = {a2r.value() / total, a2i.value() / total};
  m.ada = n.value() / total;
  return m;
}

double quadrature_variance(const LadderMoments& m, double theta) {
  const std::complex<double> phase = std::polar(1.0, -2.0 * theta);
  return 0.25 * (2.0 * (phase * (m.a2 - m.a * m.a)).real() + 2.0 * (m.ada - std::norm(m.a)) + 1.0);
}

NumericMinimum min_quadrature_variance_numeric(const DrivingField& bsv, const QuadratureSpec& quad) {
  if (bsv.kind != FieldKind::BSV) throw std::invalid_argument("min_quadrature_variance_numeric: needs a BSV field");
  const LadderMoments m = ladder_moments(bsv, quad);
  const auto [theta, value] = boost::math::tools::brent_find_minima(
      [&](double th) { return quadrature_variance(m, th); }, -0.5 * std::numbers::pi,
      0.5 * std::numbers::pi, std::numeric_limits<double>::digits / 2);
  return {theta, value};
}

AppReport app_report(std::int64_t fock_n, double bsv_r, const QuadratureSpec& quad) {
  AppReport r;
  r.fock_n = fock_n;
  r.bsv_r = bsv_r;
  const DrivingField fock = DrivingField::fock(fock_n);
  const double n = static_cast<double>(fock_n);
  r.photon_number_app = app_normal_moment(fock, 1, quad);
  r.photon_number_closed = n;
  r.photon_number_exact = n;
  r.fock_second_moment_app = app_normal_moment(fock, 2, quad);
  r.fock_second_moment_closed = n * n + 3.0 * n + 2.0;
  r.mandel_q_app = mandel_q(fock, MandelMode::AppClosedForm, quad);
  r.mandel_q_app_integral = mandel_q(fock, MandelMode::AppIntegral, quad);
  r.mandel_q_exact = mandel_q(fock, MandelMode::Exact, quad);

  const DrivingField bsv = DrivingField::bsv(bsv_r);
  const LadderMoments m = ladder_moments(bsv, quad);
  const double ch = std::cosh(bsv_r);
  r.bsv_photon_number_app = m.ada;
  r.bsv_photon_number_closed = ch * ch;
  r.bsv_a_abs_app = std::abs(m.a);
  r.bsv_a2_app = m.a2.real();
  r.bsv_a2_closed = -std::tanh(bsv_r) * ch * ch;
  r.min_quad_variance_app = min_quadrature_variance(bsv, VarianceMode::App);
  const NumericMinimum nm = min_quadrature_variance_numeric(bsv, quad);
  r.min_quad_variance_app_numeric = nm.value;
  r.min_quad_variance_theta = nm.theta;
  r.min_quad_variance_exact = min_quadrature_variance(bsv, VarianceMode::Exact);
  return r;
}

std::string to_json(const AppReport& r) {
  nlohmann::json j;
  j["fock_n"] = r.fock_n;
  j["bsv_r"] = r.bsv_r;
  j["photon_number_app"] = r.photon_number_app;
  j["photon_number_closed"] = r.photon_number_closed;
  j["photon_number_exact"] = r.photon_number_exact;
  j["fock_second_moment_app"] = r.fock_second_moment_app;
  j["fock_second_moment_closed"] = r.fock_second_moment_closed;
  j["mandel_q_app"] = r.mandel_q_app;
  j["mandel_q_app_integral"] = r.mandel_q_app_integral;
  j["mandel_q_exact"] = r.mandel_q_exact;
  j["bsv_photon_number_app"] = r.bsv_photon_number_app;
  j["bsv_photon_number_closed"] = r.bsv_photon_number_closed;
  j["bsv_a_abs_app"] = r.bsv_a_abs_app;
  j["bsv_a2_app"] = r.bsv_a2_app;
  j["bsv_a2_closed"] = r.bsv_a2_closed;
  j["min_quad_variance_app"] = r.min_quad_variance_app;
  j["min_quad_variance_app_numeric"] = r.min_quad_variance_app_numeric;
  j["min_quad_variance_theta"] = r.min_quad_variance_theta;
  j["min_quad_variance_exact"] = r.min_quad_variance_exact;
  j["provenance"] = {
      {"photon_number_app", "radial quadrature of the Fock Q function, |alpha|^2"},
      {"photon_number_closed", "closed-form chain with <a+a> = n"},
      {"photon_number_exact", "number state"},
      {"mandel_q_app", "3 + 2/n, closed-form chain"},
      {"mandel_q_app_integral", "(M2 - mu^2)/mu from quadrature moments"},
      {"mandel_q_exact", "number state, -1"},
      {"min_quad_variance_app", "1/2 cosh^2 r (1 - tanh r) + 1/4"},
      {"min_quad_variance_app_numeric", "Brent minimum over theta of the quadrature-moment variance"},
      {"min_quad_variance_exact", "e^{-2r}/4"},
  };
  return j.dump(2);
}

}  // namespace qhhg
