#include "fft_backend.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace qwp::detail {
namespace {

struct PlanKey {
  std::size_t n;
  bool inverse;
  bool operator==(const PlanKey& o) const { return n == o.n && inverse == o.inverse; }
};

struct PlanKeyHash {
  std::size_t operator()(const PlanKey& k) const {
    return std::hash<std::size_t>{}(k.n * 2 + (k.inverse ? 1 : 0));
  }
};

// FFTW planning is not thread safe; execution of an existing plan is.  Plans
// are created once per (size, direction) with FFTW_UNALIGNED so they can be
// re-executed on any buffer.
std::mutex g_plan_mutex;
std::unordered_map<PlanKey, fftw_plan, PlanKeyHash> g_plans;

fftw_plan get_plan(std::size_t n, bool inverse) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  PlanKey key{n, inverse};
  auto it = g_plans.find(key);
  if (it != g_plans.end()) return it->second;
  std::vector<std::complex<double>> scratch(n);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf,
                                    inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
  g_plans.emplace(key, plan);
  return plan;
}

}  // namespace

void fft(const std::complex<double>* in, std::complex<double>* out, std::size_t n,
         bool inverse) {
  if (n == 0) return;
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  // The cached plans are in-place, so stage through `out`.
  if (in != out) std::copy(in, in + n, out);
  fftw_plan plan = get_plan(n, inverse);
  auto* buf = reinterpret_cast<fftw_complex*>(out);
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace qwp::detail
