#include "qhhg/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace qhhg {

namespace {

struct PlanCache {
  std::mutex mutex;
  std::map<std::size_t, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [n, plan] : plans) fftw_destroy_plan(plan);
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

}  // namespace

std::vector<std::complex<double>> real_dft(const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  const std::size_t m = n / 2 + 1;
  std::unique_ptr<double, FftwFree> in(fftw_alloc_real(n));
  std::unique_ptr<fftw_complex, FftwFree> out(fftw_alloc_complex(m));
  if (!in || !out) throw std::bad_alloc();
  fftw_plan plan;
  {
    // the FFTW planner is not re-entrant; execution with new arrays is
    std::lock_guard<std::mutex> lock(cache().mutex);
    auto it = cache().plans.find(n);
    if (it == cache().plans.end()) {
      plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
      if (plan == nullptr) throw std::runtime_error("fftw: planning failed");
      cache().plans.emplace(n, plan);
    } else {
      plan = it->second;
    }
  }
  std::memcpy(in.get(), x.data(), n * sizeof(double));
  fftw_execute_dft_r2c(plan, in.get(), out.get());
  std::vector<std::complex<double>> result(m);
  for (std::size_t k = 0; k < m; ++k) result[k] = {out.get()[k][0], out.get()[k][1]};
  return result;
}

}  // namespace qhhg
