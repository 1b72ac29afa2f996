#pragma once

#include <cstddef>
#include <memory>
#include <span>

#include "cnls/grid.hpp"

namespace cnls {

/// In-place complex FFT of fixed length backed by FFTW. Plans are created with
/// FFTW_ESTIMATE so results are bitwise reproducible for a given length.
/// Instances are not shareable between threads; each thread owns its own.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;
  Fft(Fft&&) noexcept;
  Fft& operator=(Fft&&) noexcept;

  std::size_t size() const noexcept { return n_; }

  /// Unnormalized forward transform, exponent -i.
  void forward(std::span<Complex> data);
  /// Unnormalized inverse transform, exponent +i (no 1/N).
  void backward(std::span<Complex> data);

 private:
  struct Plans;
  std::size_t n_;
  std::unique_ptr<Plans> plans_;
};

/// Spectral second derivative on a periodic grid.
std::vector<Complex> spectral_second_derivative(const SpatialGrid& grid,
                                                std::span<const Complex> f, Fft& fft);

}  // namespace cnls
