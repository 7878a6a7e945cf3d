#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <cmath>
#include <variant>
#include <span>
#include <string>
#include <vector>

#include "l2ext/geometry.hpp"
#include "l2ext/integrate.hpp"
#include "l2ext/point.hpp"
#include "l2ext/weights.hpp"

namespace l2ext {

// Directional form A(X) = log|X| + offset for X in C^k. The indicatrix
// {A < 0} is the ball of radius e^{-offset}.
struct AzukawaForm {
  int dim = 1;
  double offset = 0.0;

  double operator()(std::span<const Complex> X) const;
  double indicatrix_radius() const { return std::exp(-offset); }
};

// Closed-form pluricomplex Green functions with poles along V = {z' = 0}.
// Coordinates are ordered (z', v) where z' holds the k pole coordinates and
// v parametrizes V. Every catalog model has the form
//   G(z', v) = log|z'| + c(v),   B(v) = -c(v),
// so log|psi| - B = G holds with equality.
//
//   ball_point(n)        Omega = B^n, V = {0},          c = 0
//   ball_pair(k, m)      Omega = B^{k+m}, v = w in C^m, c = -1/2 log(1 - |w|^2)
//   radial_lift(u, k, n) Omega = lift of B^n under k u(log|z'|^2) with fiber C^k,
//                        v = (z'', w),                  c = psi_u(w)
class GreenModel {
public:
  enum class Kind { BallPoint, BallPair, RadialLift };

  static GreenModel ball_point(int n);
  static GreenModel ball_pair(int pole_dim, int v_dim);
  static GreenModel radial_lift(const RadialProfile& u, int k, int n);

  Kind kind() const noexcept { return kind_; }
  std::string name() const;
  int ambient_dim() const noexcept { return domain_.ambient_dim(); }
  int pole_dim() const noexcept { return k_; }
  int v_dim() const noexcept { return ambient_dim() - k_; }
  const DomainSpec& domain() const noexcept { return domain_; }
  SubvarietySpec subvariety() const { return SubvarietySpec(ambient_dim(), k_); }
  const std::optional<RadialProfile>& profile() const noexcept { return profile_; }

  // G(p); -inf on V. Throws DomainError outside the domain.
  double operator()(const Point& p) const;
  // B(p) with log|psi(p)| - B(p) <= G(p).
  double gap(const Point& p) const;

  // c(v) for a point (0, v) of V; throws DomainError if (0, v) is not in the domain.
  double offset(std::span<const Complex> v) const;
  AzukawaForm azukawa_form(std::span<const Complex> v) const;

  // Upper bound for the indicatrix radius over all of V.
  double max_indicatrix_radius() const;

private:
  GreenModel(Kind kind, DomainSpec domain, int k) : kind_(kind), domain_(std::move(domain)), k_(k) {}

  Kind kind_;
  DomainSpec domain_;
  int k_;
  int n_ = 0; // RadialLift base dimension
  std::optional<RadialProfile> profile_;
};

double eval_green(const GreenModel& m, const Point& p);
double gap_B(const GreenModel& m, const Point& p);

// A(X) at the base point (0, v). X must be non-zero.
double azukawa(const GreenModel& m, std::span<const Complex> v, std::span<const Complex> X);

struct AzukawaCheck {
  double closed_form = 0.0;
  std::vector<double> lambdas;
  std::vector<double> numeric; // G(lambda X, v) - log|lambda|
  double max_deviation = 0.0;
  bool converged = false;      // deviation at the smallest lambda <= tol
};

// Numeric limit G(lambda X, v) - log|lambda| along lambda in {1e-2, 1e-3, 1e-4}.
AzukawaCheck azukawa_verify(const GreenModel& m, std::span<const Complex> v,
                            std::span<const Complex> X, double tol = 1e-6);

struct ClosedForm {};
struct MonteCarlo {
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 0;
};
using VolumeMethod = std::variant<ClosedForm, MonteCarlo>;

// Euclidean volume of {X in C^k : A(X) < 0}. Throws NumericalError when the
// indicatrix is unbounded (A < 0 somewhere on |X| = 1e3).
QuadratureResult indicatrix_volume(const AzukawaForm& a, const VolumeMethod& method);

// e^{-k t} int_{Omega_t} chi, Omega_t = {G < t/2}, estimated by Monte Carlo
// after the substitution z' = e^{t/2} x (so the sampled region stays O(1)).
QuadratureResult sublevel_scaling(const GreenModel& m, const std::function<double(const Point&)>& chi,
                                  double t, const MonteCarlo& method);

// int_V vol(I_v) chi(0, v) dv for chi radial in each block of v, by nested
// radial quadrature. Supplies the t -> -inf limit of sublevel_scaling.
double indicatrix_integral(const GreenModel& m, const std::function<double(const Point&)>& chi);

} // namespace l2ext
