#pragma once

#include <cstddef>
#include <functional>

namespace qhhg {

/// Worker count used by parallel_for; 0 restores the hardware default.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls f(i) for i in [0, count) on a static block partition. Callers write
/// per-index outputs and reduce serially, so results never depend on the
/// number of threads.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f);

}  // namespace qhhg
