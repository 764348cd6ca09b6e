#include "mblab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace mblab::fft {
namespace {

using PlanKey = std::tuple<std::size_t, std::size_t, int>;

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t rows, std::size_t cols, int sign) {
    std::lock_guard lock(mutex_);
    const PlanKey key{rows, cols, sign};
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    // Planning needs scratch arrays; FFTW_ESTIMATE does not touch them.
    const std::size_t n = rows * cols;
    auto* scratch = fftw_alloc_complex(n);
    fftw_plan plan = rows == 1
        ? fftw_plan_dft_1d(static_cast<int>(cols), scratch, scratch, sign,
                           FFTW_ESTIMATE | FFTW_UNALIGNED)
        : fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols),
                           scratch, scratch, sign,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::span<cplx> data, std::size_t rows, std::size_t cols,
             int sign) {
  if (data.size() != rows * cols)
    throw std::invalid_argument("fft: buffer size does not match shape");
  if (data.empty()) return;
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(cache().get(rows, cols, sign), ptr, ptr);
}

}  // namespace

void forward(std::span<cplx> data) {
  execute(data, 1, data.size(), FFTW_FORWARD);
}

void inverse(std::span<cplx> data) {
  execute(data, 1, data.size(), FFTW_BACKWARD);
}

void forward_2d(std::span<cplx> data, std::size_t rows, std::size_t cols) {
  execute(data, rows, cols, FFTW_FORWARD);
}

void inverse_2d(std::span<cplx> data, std::size_t rows, std::size_t cols) {
  execute(data, rows, cols, FFTW_BACKWARD);
}

}  // namespace mblab::fft
