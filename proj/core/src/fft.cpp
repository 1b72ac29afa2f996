#include "cnls/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

#include "cnls/errors.hpp"

namespace cnls {
namespace {
// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Fft::Plans {
  fftw_complex* buffer = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  explicit Plans(std::size_t n) {
    std::lock_guard lock(planner_mutex());
    buffer = fftw_alloc_complex(n);
    const int len = static_cast<int>(n);
    fwd = fftw_plan_dft_1d(len, buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(len, buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buffer);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

Fft::Fft(std::size_t n) : n_(n) {
  if (n == 0) throw ArgumentError("Fft: length must be positive");
  plans_ = std::make_unique<Plans>(n);
}
Fft::~Fft() = default;
Fft::Fft(Fft&&) noexcept = default;
Fft& Fft::operator=(Fft&&) noexcept = default;

void Fft::forward(std::span<Complex> data) {
  if (data.size() != n_) throw ArgumentError("Fft::forward: length mismatch");
  auto* buf = reinterpret_cast<Complex*>(plans_->buffer);
  std::copy(data.begin(), data.end(), buf);
  fftw_execute(plans_->fwd);
  std::copy(buf, buf + n_, data.begin());
}

void Fft::backward(std::span<Complex> data) {
  if (data.size() != n_) throw ArgumentError("Fft::backward: length mismatch");
  auto* buf = reinterpret_cast<Complex*>(plans_->buffer);
  std::copy(data.begin(), data.end(), buf);
  fftw_execute(plans_->bwd);
  std::copy(buf, buf + n_, data.begin());
}

std::vector<Complex> spectral_second_derivative(const SpatialGrid& grid,
                                                std::span<const Complex> f, Fft& fft) {
  std::vector<Complex> work(f.begin(), f.end());
  fft.forward(work);
  const auto k = grid.k();
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (std::size_t j = 0; j < work.size(); ++j) {
    work[j] *= -k[j] * k[j] * scale;
  }
  fft.backward(work);
  return work;
}

}  // namespace cnls
