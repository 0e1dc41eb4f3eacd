#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include "qhhg/phasespace.hpp"

namespace qhhg {

/// Integral of the density times |alpha|^(2k) on the radial grid, summed in
/// the log domain.
double app_normal_moment(const DrivingField& field, int k, const QuadratureSpec& quad = {});

enum class MandelMode { AppClosedForm, AppIntegral, Exact };

/// Fock-state Mandel parameter: 3 + 2/n from the closed-form chain with
/// <a+a> = n, (M2 - mu^2)/mu from the moment integrals, or the exact -1.
double mandel_q(const DrivingField& fock, MandelMode mode, const QuadratureSpec& quad = {});

enum class VarianceMode { App, Exact };

/// Minimum quadrature variance of squeezed vacuum:
/// 1/2 cosh^2 r (1 - tanh r) + 1/4 under the APP, e^{-2r}/4 exactly.
double min_quadrature_variance(const DrivingField& bsv, VarianceMode mode);

/// <a>, <a^2>, <a+ a> of the phase-space density by 2-D quadrature.
struct LadderMoments {
  std::complex<double> a;
  std::complex<double> a2;
  double ada = 0.0;
};

LadderMoments ladder_moments(const DrivingField& field, const QuadratureSpec& quad = {});

/// Quadrature variance 1/4 [2 Re(e^{-2i theta}(<a^2> - <a>^2)) + 2(<a+a> - |<a>|^2) + 1].
double quadrature_variance(const LadderMoments& m, double theta);

struct NumericMinimum {
  double theta = 0.0;
  double value = 0.0;
};

/// Brent minimization of quadrature_variance over theta in [-pi/2, pi/2].
NumericMinimum min_quadrature_variance_numeric(const DrivingField& bsv,
                                               const QuadratureSpec& quad = {});

struct AppReport {
  std::int64_t fock_n = 0;
  double bsv_r = 0.0;
  double photon_number_app = 0.0;    // Fock, integral
  double photon_number_closed = 0.0;  // Fock, closed-form chain (= n)
  double photon_number_exact = 0.0;
  double fock_second_moment_app = 0.0;
  double fock_second_moment_closed = 0.0;
  double mandel_q_app = 0.0;  // closed-form chain
  double mandel_q_app_integral = 0.0;
  double mandel_q_exact = 0.0;
  double bsv_photon_number_app = 0.0;
  double bsv_photon_number_closed = 0.0;
  double bsv_a_abs_app = 0.0;
  double bsv_a2_app = 0.0;
  double bsv_a2_closed = 0.0;
  double min_quad_variance_app = 0.0;
  double min_quad_variance_app_numeric = 0.0;
  double min_quad_variance_theta = 0.0;
  double min_quad_variance_exact = 0.0;
};

AppReport app_report(std::int64_t fock_n, double bsv_r, const QuadratureSpec& quad = {});

/// Pretty JSON with sorted keys and a provenance entry per mode.
std::string to_json(const AppReport& report);

}  // namespace qhhg
