#include "l2ext/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "l2ext/errors.hpp"

namespace l2ext {

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) throw InvalidArgument("factorial: n must lie in [0, 20]");
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

BallConstants sigma_mu(int k) {
  if (k < 1 || k > 20) throw InvalidArgument("sigma_mu: k must lie in [1, 20]");
  double pik = 1.0;
  for (int i = 0; i < k; ++i) pik *= kPi;
  return {pik / static_cast<double>(factorial(k)), 2.0 * pik / static_cast<double>(factorial(k - 1))};
}

namespace {

std::vector<Complex> axis_point(int dim, double r) {
  std::vector<Complex> c(static_cast<std::size_t>(dim));
  if (dim > 0) c[0] = r;
  return c;
}

double checked(const QuadratureResult& q, const char* what) {
  if (!q.converged) throw NumericalError(std::string(what) + ": quadrature did not converge");
  return q.value;
}

// int_{B^m} |f(v)|^2 h(|v|^2) dv for h depending on |v| only. Monomials are
// orthogonal against radial densities, so this is a sum of 1D radial moments.
double v_integral(const VPolynomial& f, int m, const std::function<double(double)>& h) {
  if (m == 0) {
    double s = 0.0;
    for (const auto& [beta, c] : f) s += std::norm(c);
    return s * h(0.0);
  }
  const double mu = sigma_mu(m).mu;
  double total = 0.0;
  for (const auto& [beta, c] : f) {
    if (c == Complex{}) continue;
    const int b = std::accumulate(beta.begin(), beta.end(), 0);
    double bf = 1.0;
    for (int e : beta) bf *= static_cast<double>(factorial(e));
    // pi^m beta! / (|beta|+m-1)! * int_0^1 a^{|beta|+m-1} h(a) da
    const double moment = 2.0 / mu *
                          checked(radial_integrate([&](double r) { return std::pow(r, 2 * b) * h(r * r); }, m, 1.0),
                                  "v_integral");
    total += std::norm(c) * std::pow(kPi, m) * bf / static_cast<double>(factorial(b + m - 1)) * moment;
  }
  return total;
}

// Point (0, v) with v = (sqrt(a), 0, ...) in C^{k+m}.
Point v_point(int k, int m, double a) {
  auto c = axis_point(k, 0.0);
  const auto v = axis_point(m, std::sqrt(a));
  c.insert(c.end(), v.begin(), v.end());
  return Point(std::move(c));
}

RadialProfile lift_profile(const RadialScenario& s) {
  const Weight& w = s.weight;
  if (w.regularization() == 0.0) {
    if (w.kind() == Weight::Kind::Radial && w.split() == s.k) return *w.profile();
    if (w.kind() == Weight::Kind::BallStandard && s.k == s.n && w.ball_coefficient() == s.k)
      return RadialProfile::log_singular();
  }
  throw UnsupportedError("no catalog Green model for the Hartogs lift of " + w.name() +
                         " (k=" + std::to_string(s.k) + ", n=" + std::to_string(s.n) + ")");
}

// int_{V~} |f(z'')|^2 density(0, z'', w) over V~ = B^{n-k} x B^k, with the
// density depending on |z''| and |w| only.
double lift_v_integral(const RadialScenario& s, const std::function<double(const std::vector<Complex>&)>& density) {
  const int m = s.n - s.k;
  auto inner = [&](double a) {
    return checked(radial_integrate(
                       [&](double rw) {
                         auto v = axis_point(m, std::sqrt(a));
                         const auto w = axis_point(s.k, rw);
                         v.insert(v.end(), w.begin(), w.end());
                         return density(v);
                       },
                       s.k, 1.0),
                   "lift_v_integral");
  };
  return v_integral(s.f, m, inner);
}

} // namespace

void validate(const RadialScenario& s) {
  if (s.k < 1 || s.k > s.n) throw InvalidArgument("scenario needs 1 <= k <= n");
  for (const auto& [beta, c] : s.f)
    if (beta.size() != static_cast<std::size_t>(s.n - s.k))
      throw InvalidArgument("scenario: f exponents must have length n - k");
}

GreenModel base_green_model(const RadialScenario& s) {
  validate(s);
  return GreenModel::ball_pair(s.k, s.n - s.k);
}

double green_gap_rhs(double c_jac, int k, double weighted_trace) {
  if (!(c_jac >= 1.0)) throw InvalidArgument("green_gap_rhs: C_jac must be >= 1");
  if (!(weighted_trace >= 0.0)) throw InvalidArgument("green_gap_rhs: weighted trace must be >= 0");
  return c_jac * sigma_mu(k).sigma * weighted_trace;
}

double weighted_trace(const RadialScenario& s) {
  const GreenModel g = base_green_model(s);
  const int m = s.n - s.k;
  return v_integral(s.f, m, [&](double a) {
    const Point p = v_point(s.k, m, a);
    return std::exp(-s.weight(p) + 2.0 * s.k * g.gap(p));
  });
}

double green_gap_rhs(const RadialScenario& s) {
  return green_gap_rhs(SubvarietySpec::jacobian_constant(), s.k, weighted_trace(s));
}

double indicatrix_rhs(const RadialScenario& s) {
  const GreenModel g = base_green_model(s);
  const int m = s.n - s.k;
  return v_integral(s.f, m, [&](double a) {
    const Point p = v_point(s.k, m, a);
    const double vol = indicatrix_volume(g.azukawa_form(p.slice(s.k, m)), ClosedForm{}).value;
    return vol * std::exp(-s.weight(p));
  });
}

GreenModel lift_green_model(const RadialScenario& s) {
  validate(s);
  return GreenModel::radial_lift(lift_profile(s), s.k, s.n);
}

double lift_trace(const RadialScenario& s) {
  const GreenModel g = lift_green_model(s);
  const int k = s.k;
  return lift_v_integral(s, [&](const std::vector<Complex>& v) {
    auto c = axis_point(k, 0.0);
    c.insert(c.end(), v.begin(), v.end());
    return std::exp(2.0 * k * g.gap(Point(std::move(c))));
  });
}

double lift_indicatrix_integral(const RadialScenario& s) {
  const GreenModel g = lift_green_model(s);
  return lift_v_integral(s, [&](const std::vector<Complex>& v) {
    return indicatrix_volume(g.azukawa_form(v), ClosedForm{}).value;
  });
}

double lift_route_rhs(const RadialScenario& s) {
  const double via_gap = green_gap_rhs(SubvarietySpec::jacobian_constant(), s.k, lift_trace(s));
  const double via_indicatrix = lift_indicatrix_integral(s);
  return std::min(via_gap, via_indicatrix) / sigma_mu(s.k).sigma;
}

double ball_lift_ratio(int n) {
  if (n < 1 || n > 12) throw InvalidArgument("ball_lift_ratio: n must lie in [1, 12]");
  // n! / (2n)! = 1 / ((n+1)(n+2)...(2n)), an exact integer denominator here.
  std::uint64_t denom = 1;
  for (int j = n + 1; j <= 2 * n; ++j) denom *= static_cast<std::uint64_t>(j);
  double pin = 1.0;
  for (int i = 0; i < n; ++i) pin *= kPi;
  return pin / static_cast<double>(denom);
}

QuadratureResult ball_lift_ratio_quadrature(int n) {
  return radial_integrate([n](double r) { return std::pow(1.0 - r * r, n); }, n, 1.0);
}

QuadratureResult ball_lift_ratio_mc(int n, std::int64_t samples, std::uint64_t seed) {
  return mc_integrate(
      DomainSpec::ball(1.0, n),
      [n](const Point& p) { return std::pow(1.0 - norm_sq(p.coords()), n); }, samples, seed);
}

StrictnessGap strictness_gap(const RadialScenario& s) {
  StrictnessGap g;
  g.left = lift_trace(s);
  g.right = green_gap_rhs(s);
  g.gap = g.right - g.left;
  g.strict = g.right > 0.0 && g.gap > 1e-12 * g.right;
  return g;
}

BoundReport bound_report(const RadialScenario& s, double minimal_norm_sq) {
  BoundReport r;
  r.scenario_id = s.id;
  const auto c = sigma_mu(s.k);
  r.sigma_k = c.sigma;
  r.mu_k = c.mu;
  r.green_gap_rhs = green_gap_rhs(s);
  r.indicatrix_rhs = indicatrix_rhs(s);
  r.minimal_norm_sq = minimal_norm_sq;
  try {
    r.lift_route_rhs = lift_route_rhs(s);
    r.strictness_margin = r.green_gap_rhs - lift_trace(s);
  } catch (const UnsupportedError&) {
    r.lift_route_rhs.reset();
    r.strictness_margin = 0.0;
  }
  return r;
}

void attach_bounds(ExtensionResult& ext, const BoundReport& report) {
  auto add = [&](const char* name, double b) {
    ext.bound_comparisons.push_back({name, b, b - ext.squared_norm});
  };
  add("green_gap_rhs", report.green_gap_rhs);
  add("indicatrix_rhs", report.indicatrix_rhs);
  if (report.lift_route_rhs) add("lift_route_rhs", *report.lift_route_rhs);
}

} // namespace l2ext
