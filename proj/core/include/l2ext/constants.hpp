#pragma once

#include <cstdint>

namespace l2ext {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// n! as an exact integer (n <= 20).
std::uint64_t factorial(int n);

struct BallConstants {
  double sigma; // volume of the unit ball in C^k, pi^k / k!
  double mu;    // volume of the sphere S^{2k-1}, 2 pi^k / (k-1)!
};

// Exact factorials times integer powers of pi; k in [1, 20].
BallConstants sigma_mu(int k);

} // namespace l2ext
