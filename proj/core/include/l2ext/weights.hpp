#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>

#include "l2ext/point.hpp"

namespace l2ext {

// Convex increasing profile u on (-inf, t_blowup) with u(-inf) = 0 and
// u -> +inf at t_blowup. Radial weights are phi(z) = k * u(log|z'|^2).
//
// Catalog:
//   log_singular        u(t) = -log(1 - e^t)
//   scaled_log(a)       u(t) = -a log(1 - e^{t/a})
//   epsilon_regularized u(t) = u_inner(t) - (eps/k) log(1 - e^t / c)
//                       (slice profile for |z''|^2 = 1 - c)
//
// Every entry may additionally be translated, u_shift(t) = u(t - shift),
// which moves the blow-up point by `shift`.
class RadialProfile {
public:
  enum class Kind { LogSingular, ScaledLog, EpsilonRegularized };

  static RadialProfile log_singular();
  static RadialProfile scaled_log(double a);
  // slice_radius_sq = c = 1 - |z''|^2 in (0, 1].
  static RadialProfile epsilon_regularized(const RadialProfile& inner, double eps, int k,
                                           double slice_radius_sq = 1.0);

  Kind kind() const noexcept { return kind_; }
  std::string name() const;

  // u(t); +inf for t >= blowup().
  double operator()(double t) const;
  double derivative(double t) const;
  // t <= blowup() with u(t) = s. s = 0 gives -inf, s = +inf gives blowup().
  double inverse(double s) const;

  double blowup() const noexcept;
  double shift() const noexcept { return shift_; }
  RadialProfile translated(double delta) const;

  double scale() const noexcept { return a_; }
  double epsilon() const noexcept { return eps_; }

private:
  RadialProfile() = default;

  double eval_unshifted(double t) const;
  double derivative_unshifted(double t) const;
  double inverse_unshifted(double s) const;
  double blowup_unshifted() const noexcept;

  Kind kind_ = Kind::LogSingular;
  double a_ = 1.0;
  double shift_ = 0.0;
  // EpsilonRegularized
  std::shared_ptr<const RadialProfile> inner_;
  double eps_ = 0.0;
  int k_ = 1;
  double slice_c_ = 1.0;
};

// Plurisubharmonic weight on (a subset of) C^n.
//   trivial            phi = 0
//   ball_standard(c)   phi = -c log(1 - |z|^2)
//   radial(u, k)       phi = k u(log|z'|^2), z' = first k coordinates
// plus an optional regularization term -eps log(1 - |z|^2).
class Weight {
public:
  enum class Kind { Trivial, BallStandard, Radial };

  static Weight trivial();
  static Weight ball_standard(double c);
  static Weight radial(RadialProfile u, int k);

  Kind kind() const noexcept { return kind_; }
  std::string name() const;

  // Number of leading coordinates forming z' (radial kind), 0 otherwise.
  int split() const noexcept { return k_; }
  double ball_coefficient() const noexcept { return c_; }
  const std::optional<RadialProfile>& profile() const noexcept { return profile_; }
  double regularization() const noexcept { return eps_; }

  // phi(p). Throws DomainError where phi is not defined (|z'| beyond the
  // profile blow-up, or |z| >= 1 for ball-type terms).
  double operator()(const Point& p) const;
  // Same, but returns +inf instead of throwing outside the domain.
  double value_or_inf(std::span<const Complex> z) const noexcept;

  // Every catalog weight is >= 0 with value 0 at the origin.
  double infimum() const noexcept { return 0.0; }

  // e^{-phi} written as F(|z'|^2) * (1 - |z|^2)^gamma; returns F and gamma.
  double radial_factor(double zp_norm_sq) const;
  double ball_exponent() const noexcept;

  Weight with_regularization(double eps) const;

private:
  Weight() = default;

  Kind kind_ = Kind::Trivial;
  double c_ = 0.0;
  int k_ = 0;
  std::optional<RadialProfile> profile_;
  double eps_ = 0.0;
};

double eval_weight(const Weight& w, const Point& p);

double profile_inverse(const RadialProfile& u, double s);

// psi(w) = -1/2 u^{-1}(-log|w|^2) for 0 <= |w| < 1. psi(0) = -blowup/2,
// psi is increasing in |w| and tends to +inf as |w| -> 1.
double fiber_psi(const RadialProfile& u, std::span<const Complex> w);
double fiber_psi_radius(const RadialProfile& u, double r);

// phi_eps = phi - eps log(1 - |z''|^2 - |z'|^2) on the unit ball.
Weight epsilon_regularize(const Weight& w, double eps);

// Slice profile of a regularized radial weight at fixed |z''|:
// u_eps(t) = u(t) - (eps/k) log(1 - e^t / (1 - |z''|^2)).
RadialProfile regularized_slice_profile(const Weight& w, double zpp_norm);

} // namespace l2ext
