#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace l2ext {

using Complex = std::complex<double>;

// A point of C^m. Entries are finite; construction rejects NaN/inf.
class Point {
public:
  Point() = default;
  explicit Point(std::vector<Complex> coords);
  Point(std::initializer_list<Complex> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  const Complex& operator[](std::size_t i) const { return coords_[i]; }
  Complex& operator[](std::size_t i) { return coords_[i]; }

  std::span<const Complex> coords() const noexcept { return coords_; }
  std::span<Complex> coords() noexcept { return coords_; }

  // Coordinates [first, first + count).
  std::span<const Complex> slice(std::size_t first, std::size_t count) const {
    return std::span<const Complex>(coords_).subspan(first, count);
  }

  static Point zeros(std::size_t dim) { return Point(std::vector<Complex>(dim)); }

  friend bool operator==(const Point&, const Point&) = default;

private:
  std::vector<Complex> coords_;
};

// |v|^2 for a block of coordinates.
inline double norm_sq(std::span<const Complex> v) noexcept {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return s;
}

inline double norm(std::span<const Complex> v) noexcept { return std::sqrt(norm_sq(v)); }

} // namespace l2ext
