#include "hypcomp/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "hypcomp/error.hpp"

namespace hypcomp {

namespace {

// FFTW planning is not thread-safe; executing a plan on new arrays is.
class PlanCache {
 public:
  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    auto* in = fftw_alloc_complex(n);
    auto* out = fftw_alloc_complex(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in, out, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::vector<Complex>& in, std::vector<Complex>& out, int sign) {
  fftw_plan plan = cache().get(in.size(), sign);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1u;
  return p;
}

std::vector<Complex> analysis_dft(std::span<const Complex> samples) {
  std::vector<Complex> in(samples.begin(), samples.end());
  std::vector<Complex> out(in.size());
  if (in.empty()) return out;
  execute(in, out, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(in.size());
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<Complex> synthesis_dft(std::span<const Complex> coeffs, std::size_t size) {
  if (coeffs.size() > size) {
    throw Error(ErrorKind::Config, "synthesis size smaller than coefficient count");
  }
  std::vector<Complex> in(size, Complex{});
  std::copy(coeffs.begin(), coeffs.end(), in.begin());
  std::vector<Complex> out(size);
  if (size == 0) return out;
  execute(in, out, FFTW_BACKWARD);
  return out;
}

}  // namespace hypcomp
