#include "l2ext/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "l2ext/errors.hpp"

namespace l2ext {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// L(t) = -log(1 - e^t) on t < 0, the log_singular profile.
double log_singular_value(double t) {
  if (t >= 0.0) return kInf;
  if (t == -kInf) return 0.0;
  if (t < -0.6931471805599453) return -std::log1p(-std::exp(t));
  return -std::log(-std::expm1(t));
}

double log_singular_derivative(double t) {
  if (t >= 0.0) return kInf;
  return std::exp(t) / -std::expm1(t);
}

double log_singular_inverse(double s) {
  if (s == 0.0) return -kInf;
  if (s == kInf) return 0.0;
  const double e = std::exp(-s);
  if (e < 0.5) return std::log1p(-e);
  return std::log(-std::expm1(-s));
}

} // namespace

RadialProfile RadialProfile::log_singular() {
  return RadialProfile{};
}

RadialProfile RadialProfile::scaled_log(double a) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw InvalidArgument("scaled_log profile needs a > 0");
  RadialProfile u;
  u.kind_ = Kind::ScaledLog;
  u.a_ = a;
  return u;
}

RadialProfile RadialProfile::epsilon_regularized(const RadialProfile& inner, double eps, int k,
                                                 double slice_radius_sq) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw InvalidArgument("epsilon regularization needs eps > 0");
  if (k < 1) throw InvalidArgument("epsilon regularization needs k >= 1");
  if (!(slice_radius_sq > 0.0 && slice_radius_sq <= 1.0))
    throw InvalidArgument("slice radius^2 must lie in (0, 1]");
  RadialProfile u;
  u.kind_ = Kind::EpsilonRegularized;
  u.inner_ = std::make_shared<const RadialProfile>(inner);
  u.eps_ = eps;
  u.k_ = k;
  u.slice_c_ = slice_radius_sq;
  return u;
}

std::string RadialProfile::name() const {
  std::ostringstream os;
  switch (kind_) {
  case Kind::LogSingular: os << "log_singular"; break;
  case Kind::ScaledLog: os << "scaled_log(a=" << a_ << ")"; break;
  case Kind::EpsilonRegularized:
    os << "epsilon_regularized(" << inner_->name() << ", eps=" << eps_ << ", k=" << k_
       << ", c=" << slice_c_ << ")";
    break;
  }
  if (shift_ != 0.0) os << "+shift(" << shift_ << ")";
  return os.str();
}

double RadialProfile::blowup_unshifted() const noexcept {
  if (kind_ == Kind::EpsilonRegularized)
    return std::min(inner_->blowup(), std::log(slice_c_));
  return 0.0;
}

double RadialProfile::blowup() const noexcept { return blowup_unshifted() + shift_; }

RadialProfile RadialProfile::translated(double delta) const {
  RadialProfile u = *this;
  u.shift_ += delta;
  return u;
}

double RadialProfile::eval_unshifted(double t) const {
  switch (kind_) {
  case Kind::LogSingular: return log_singular_value(t);
  case Kind::ScaledLog: return a_ * log_singular_value(t / a_);
  case Kind::EpsilonRegularized: {
    if (t >= blowup_unshifted()) return kInf;
    return (*inner_)(t) + (eps_ / k_) * log_singular_value(t - std::log(slice_c_));
  }
  }
  return kInf;
}

double RadialProfile::derivative_unshifted(double t) const {
  switch (kind_) {
  case Kind::LogSingular: return log_singular_derivative(t);
  case Kind::ScaledLog: return log_singular_derivative(t / a_);
  case Kind::EpsilonRegularized: {
    if (t >= blowup_unshifted()) return kInf;
    return inner_->derivative(t) + (eps_ / k_) * log_singular_derivative(t - std::log(slice_c_));
  }
  }
  return kInf;
}

double RadialProfile::inverse_unshifted(double s) const {
  switch (kind_) {
  case Kind::LogSingular: return log_singular_inverse(s);
  case Kind::ScaledLog: return a_ * log_singular_inverse(s / a_);
  case Kind::EpsilonRegularized: break;
  }

  // No closed form: solve u(tb - x) = s for the distance x > 0 to the
  // blow-up point. u(tb - x) decreases from +inf to 0 as x grows.
  const double tb = blowup_unshifted();
  if (s == 0.0) return -kInf;
  if (s == kInf) return tb;
  auto g = [&](double x) { return eval_unshifted(tb - x); };

  double hi = 1.0;
  while (g(hi) > s) {
    hi *= 2.0;
    if (hi > 1e6) throw NumericalError("profile inverse: failed to bracket from above");
  }
  double lo = hi * 0.5;
  while (g(lo) <= s) {
    lo *= 0.5;
    if (lo < 1e-300) return tb;
  }
  // g(lo) > s >= g(hi)
  for (int it = 0; it < 400; ++it) {
    const double mid = (hi / lo > 2.0) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) > s) lo = mid; else hi = mid;
  }
  const double x = (std::abs(g(lo) - s) < std::abs(g(hi) - s)) ? lo : hi;
  return tb - x;
}

double RadialProfile::operator()(double t) const { return eval_unshifted(t - shift_); }

double RadialProfile::derivative(double t) const { return derivative_unshifted(t - shift_); }

double RadialProfile::inverse(double s) const {
  if (std::isnan(s) || s < 0.0) throw InvalidArgument("profile inverse needs s >= 0");
  return inverse_unshifted(s) + shift_;
}

double profile_inverse(const RadialProfile& u, double s) { return u.inverse(s); }

double fiber_psi_radius(const RadialProfile& u, double r) {
  if (std::isnan(r) || r < 0.0) throw InvalidArgument("fiber radius must be >= 0");
  if (r >= 1.0) throw DomainError("fiber_psi: |w| must be < 1");
  const double s = (r == 0.0) ? kInf : -2.0 * std::log(r);
  const double psi = -0.5 * u.inverse(s);
  return psi == 0.0 ? 0.0 : psi;
}

double fiber_psi(const RadialProfile& u, std::span<const Complex> w) {
  return fiber_psi_radius(u, norm(w));
}

// ---------------------------------------------------------------------------

Weight Weight::trivial() { return Weight{}; }

Weight Weight::ball_standard(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw InvalidArgument("ball_standard needs c >= 0");
  Weight w;
  w.kind_ = Kind::BallStandard;
  w.c_ = c;
  return w;
}

Weight Weight::radial(RadialProfile u, int k) {
  if (k < 1) throw InvalidArgument("radial weight needs k >= 1");
  Weight w;
  w.kind_ = Kind::Radial;
  w.k_ = k;
  w.profile_ = std::move(u);
  return w;
}

std::string Weight::name() const {
  std::ostringstream os;
  switch (kind_) {
  case Kind::Trivial: os << "trivial"; break;
  case Kind::BallStandard: os << "ball_standard(" << c_ << ")"; break;
  case Kind::Radial: os << "radial(" << profile_->name() << ", k=" << k_ << ")"; break;
  }
  if (eps_ > 0.0) os << "+eps(" << eps_ << ")";
  return os.str();
}

double Weight::value_or_inf(std::span<const Complex> z) const noexcept {
  double phi = 0.0;
  const double r2 = norm_sq(z);
  const bool ball_term = (kind_ == Kind::BallStandard && c_ > 0.0) || eps_ > 0.0;
  if (ball_term && r2 >= 1.0) return kInf;

  if (kind_ == Kind::BallStandard && c_ > 0.0) phi += -c_ * std::log1p(-r2);
  if (kind_ == Kind::Radial) {
    if (z.size() < static_cast<std::size_t>(k_)) return kInf;
    const double a = norm_sq(z.first(k_));
    if (a > 0.0) {
      const double u = (*profile_)(std::log(a));
      if (!std::isfinite(u)) return kInf;
      phi += k_ * u;
    }
  }
  if (eps_ > 0.0) phi += -eps_ * std::log1p(-r2);
  return phi;
}

double Weight::operator()(const Point& p) const {
  if (kind_ == Kind::Radial && p.dim() < static_cast<std::size_t>(k_))
    throw InvalidArgument("radial weight: point has fewer coordinates than the split");
  const double phi = value_or_inf(p.coords());
  if (!std::isfinite(phi)) throw DomainError("weight evaluated outside its domain");
  return phi;
}

double Weight::radial_factor(double zp_norm_sq) const {
  if (kind_ != Kind::Radial || zp_norm_sq == 0.0) return 1.0;
  const double u = (*profile_)(std::log(zp_norm_sq));
  if (!std::isfinite(u)) return 0.0;
  return std::exp(-k_ * u);
}

double Weight::ball_exponent() const noexcept {
  return (kind_ == Kind::BallStandard ? c_ : 0.0) + eps_;
}

Weight Weight::with_regularization(double eps) const {
  Weight w = *this;
  w.eps_ += eps;
  return w;
}

double eval_weight(const Weight& w, const Point& p) { return w(p); }

Weight epsilon_regularize(const Weight& w, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw InvalidArgument("epsilon_regularize needs eps > 0");
  return w.with_regularization(eps);
}

RadialProfile regularized_slice_profile(const Weight& w, double zpp_norm) {
  if (w.kind() != Weight::Kind::Radial || w.regularization() <= 0.0)
    throw InvalidArgument("slice profile needs a regularized radial weight");
  if (!(zpp_norm >= 0.0 && zpp_norm < 1.0)) throw InvalidArgument("|z''| must lie in [0, 1)");
  return RadialProfile::epsilon_regularized(*w.profile(), w.regularization(), w.split(),
                                            1.0 - zpp_norm * zpp_norm);
}

} // namespace l2ext
