#include "cnls/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cnls/errors.hpp"

namespace cnls {

SpatialGrid::SpatialGrid(double half_length, std::size_t points)
    : half_length_(half_length), dx_(0.0) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw ArgumentError("SpatialGrid: half length must be positive and finite");
  }
  if (points < 8 || points % 2 != 0) {
    throw ArgumentError("SpatialGrid: need an even number of points >= 8, got " +
                        std::to_string(points));
  }
  dx_ = 2.0 * half_length / static_cast<double>(points);
  x_.resize(points);
  k_.resize(points);
  const double dk = std::numbers::pi / half_length;
  const auto n = static_cast<std::ptrdiff_t>(points);
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    x_[j] = -half_length + static_cast<double>(j) * dx_;
    k_[j] = dk * static_cast<double>(j < n / 2 ? j : j - n);
  }
}

double SpatialGrid::max_wavenumber() const noexcept { return std::numbers::pi / dx_; }

FieldPair::FieldPair(SpatialGrid g, double time)
    : grid(std::move(g)), t(time), psi1(grid.size()), psi2(grid.size()) {}

void FieldPair::check_shape() const {
  if (psi1.size() != grid.size() || psi2.size() != grid.size()) {
    throw InvariantError("FieldPair: field arrays do not match grid size");
  }
}

double norm_squared(std::span<const Complex> psi, double dx) {
  double sum = 0.0;
  for (const Complex& z : psi) sum += std::norm(z);
  return sum * dx;
}

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace cnls
