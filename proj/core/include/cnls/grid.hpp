#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cnls {

using Complex = std::complex<double>;

/// Uniform periodic grid on [-L, L) with N points and the matching discrete
/// wavenumbers in FFT order (0, dk, ..., -dk).
class SpatialGrid {
 public:
  SpatialGrid(double half_length, std::size_t points);

  std::size_t size() const noexcept { return x_.size(); }
  double half_length() const noexcept { return half_length_; }
  double dx() const noexcept { return dx_; }
  double max_wavenumber() const noexcept;

  std::span<const double> x() const noexcept { return x_; }
  std::span<const double> k() const noexcept { return k_; }

  friend bool operator==(const SpatialGrid& a, const SpatialGrid& b) noexcept {
    return a.half_length_ == b.half_length_ && a.x_.size() == b.x_.size();
  }

 private:
  double half_length_;
  double dx_;
  std::vector<double> x_;
  std::vector<double> k_;
};

/// Two complex fields sampled on a grid at one time.
struct FieldPair {
  SpatialGrid grid;
  double t = 0.0;
  std::vector<Complex> psi1;
  std::vector<Complex> psi2;

  FieldPair(SpatialGrid g, double time);

  /// Throws InvariantError if the arrays do not match the grid.
  void check_shape() const;
};

/// Discrete L2 norm squared: sum |psi|^2 dx.
double norm_squared(std::span<const Complex> psi, double dx);

bool is_power_of_two(std::size_t n) noexcept;

}  // namespace cnls
