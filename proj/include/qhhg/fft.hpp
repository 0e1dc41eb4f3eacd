#pragma once

#include <complex>
#include <vector>

namespace qhhg {

/// Forward real-to-complex DFT, X_m = sum_k x_k e^{-2 pi i m k / L},
/// m = 0..L/2. Plans are created once per length and reused; safe to call
/// from several threads.
std::vector<std::complex<double>> real_dft(const std::vector<double>& x);

}  // namespace qhhg
