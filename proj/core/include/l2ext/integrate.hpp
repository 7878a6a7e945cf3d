#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "l2ext/geometry.hpp"
#include "l2ext/point.hpp"
#include "l2ext/weights.hpp"

namespace l2ext {

struct QuadratureResult {
  double value = 0.0;
  // 99% confidence half-width for Monte Carlo, residual (+ tail) bound for
  // deterministic rules.
  double error_estimate = 0.0;
  std::int64_t samples_or_nodes = 0;
  std::optional<std::uint64_t> seed;
  bool converged = true;
  std::int64_t rejected = 0;  // MC samples that fell outside the region
  std::int64_t nonfinite = 0; // MC samples where the integrand hit a +-inf sentinel
  std::string warning;
};

// z-score of the two-sided 99% normal interval.
inline constexpr double kZ99 = 2.5758293035489004;

// ---------------------------------------------------------------------------
// Deterministic quadrature

struct AdaptiveOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  std::int64_t node_cap = 1'000'000;
};

// Globally adaptive 21-point Gauss-Kronrod on [a, b]. Integrable endpoint
// singularities are fine (nodes never touch the endpoints).
QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                    const AdaptiveOptions& opts = {});

// mu_k * int_0^{r_max} g(r) r^{2k-1} dr: the integral over the ball of radius
// r_max in C^k of a function depending only on |z|.
QuadratureResult radial_integrate(const std::function<double(double)>& g, int k, double r_max,
                                  const AdaptiveOptions& opts = {});

// ---------------------------------------------------------------------------
// Monte Carlo

struct McOptions {
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  // Fixed shard count keeps results independent of the worker count.
  int shards = 16;
  int threads = 0; // 0: hardware concurrency
  double max_rejection = 0.999;
};

struct McMoments {
  std::vector<double> value;      // box_volume * mean, per output
  std::vector<double> half_width; // 99% half-width, per output
  std::int64_t samples = 0;
  std::int64_t accepted = 0;
  std::int64_t nonfinite = 0;
  double box_volume = 0.0;
};

// Evaluates `fill` at uniform points of the centred box with the given
// complex half-widths. `fill` returns false for points outside the region
// (counted as rejections, contributing 0) and writes `outputs` values
// otherwise. Non-finite outputs are counted and contribute 0.
using MomentIntegrand = std::function<bool(std::span<const Complex>, std::span<double>)>;
McMoments mc_box_moments(std::span<const double> half_widths, int outputs,
                         const MomentIntegrand& fill, const McOptions& opts);

// Scalar form; nullopt means outside the region.
using BoxIntegrand = std::function<std::optional<double>(std::span<const Complex>)>;
QuadratureResult mc_box_integrate(std::span<const double> half_widths, const BoxIntegrand& f,
                                  const McOptions& opts);

// Unbiased estimate of the Lebesgue integral over the domain by rejection
// sampling from its bounding box. Reproducible for a fixed seed.
QuadratureResult mc_integrate(const DomainSpec& domain,
                              const std::function<double(const Point&)>& integrand,
                              std::int64_t samples, std::uint64_t seed);
QuadratureResult mc_integrate(const DomainSpec& domain,
                              const std::function<double(const Point&)>& integrand,
                              const McOptions& opts);

// ---------------------------------------------------------------------------
// Fubini identity for radial weights:
//   int_{|z'|^2 < c} e^{-k u(log|z'|^2)} dz'  =  int_{|w| < 1} e^{-2k psi(w)} dw,
// c = 1 - |z''|^2, evaluated for the slice profile that blows up at log c.

inline constexpr double kFubiniTruncation = -60.0;

struct FubiniSides {
  QuadratureResult lhs;
  QuadratureResult rhs;
  RadialProfile slice_profile;
};

// The catalog profile translated so that it blows up at log(1 - |z''|^2).
RadialProfile slice_adapted(const RadialProfile& u, double zpp_norm);

FubiniSides fubini_sides(const RadialProfile& u, int k, double zpp_norm);

// Monte Carlo volume of {(z', w) in C^k x C^k : |z'|^2 < c, |w|^2 < e^{-u(log|z'|^2)}}
// divided by sigma_k; equal to both Fubini sides.
QuadratureResult fubini_lift_volume(const RadialProfile& u, int k, double zpp_norm,
                                    const McOptions& opts);

} // namespace l2ext
