#include "l2ext/green.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "l2ext/constants.hpp"
#include "l2ext/errors.hpp"

namespace l2ext {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Point make_point(std::span<const Complex> zp, std::span<const Complex> v) {
  std::vector<Complex> c(zp.begin(), zp.end());
  c.insert(c.end(), v.begin(), v.end());
  return Point(std::move(c));
}

// Point of C^dim with first coordinate r and zeros elsewhere.
std::vector<Complex> radial_point(int dim, double r) {
  std::vector<Complex> c(static_cast<std::size_t>(dim));
  if (dim > 0) c[0] = r;
  return c;
}

} // namespace

double AzukawaForm::operator()(std::span<const Complex> X) const {
  if (X.size() != static_cast<std::size_t>(dim))
    throw InvalidArgument("Azukawa form: direction has the wrong dimension");
  const double r = norm(X);
  if (r == 0.0) throw InvalidArgument("Azukawa form: direction must be non-zero");
  return std::log(r) + offset;
}

GreenModel GreenModel::ball_point(int n) {
  if (n < 1) throw InvalidArgument("ball_point needs n >= 1");
  return GreenModel(Kind::BallPoint, DomainSpec::ball(1.0, n), n);
}

GreenModel GreenModel::ball_pair(int pole_dim, int v_dim) {
  if (pole_dim < 1 || v_dim < 0) throw InvalidArgument("ball_pair needs k >= 1 and m >= 0");
  return GreenModel(Kind::BallPair, DomainSpec::ball(1.0, pole_dim + v_dim), pole_dim);
}

GreenModel GreenModel::radial_lift(const RadialProfile& u, int k, int n) {
  if (k < 1 || n < k) throw InvalidArgument("radial_lift needs 1 <= k <= n");
  GreenModel m(Kind::RadialLift,
               make_hartogs_lift(DomainSpec::ball(1.0, n), Weight::radial(u, k), k), k);
  m.n_ = n;
  m.profile_ = u;
  return m;
}

std::string GreenModel::name() const {
  std::ostringstream os;
  switch (kind_) {
  case Kind::BallPoint: os << "ball_point(n=" << k_ << ")"; break;
  case Kind::BallPair: os << "ball_pair(k=" << k_ << ", m=" << v_dim() << ")"; break;
  case Kind::RadialLift:
    os << "radial_lift(" << profile_->name() << ", k=" << k_ << ", n=" << n_ << ")";
    break;
  }
  return os.str();
}

double GreenModel::offset(std::span<const Complex> v) const {
  if (v.size() != static_cast<std::size_t>(v_dim()))
    throw InvalidArgument("Green model: base point has the wrong dimension");
  switch (kind_) {
  case Kind::BallPoint: return 0.0;
  case Kind::BallPair: {
    const double r2 = norm_sq(v);
    if (!(r2 < 1.0)) throw DomainError("ball_pair: base point outside the unit ball");
    return -0.5 * std::log1p(-r2);
  }
  case Kind::RadialLift: {
    const auto zpp = v.first(static_cast<std::size_t>(n_ - k_));
    const auto w = v.subspan(static_cast<std::size_t>(n_ - k_));
    if (!(norm_sq(zpp) < 1.0)) throw DomainError("radial_lift: z'' outside the unit ball");
    return fiber_psi(*profile_, w);
  }
  }
  return 0.0;
}

double GreenModel::operator()(const Point& p) const {
  if (!domain_.contains(p)) throw DomainError("Green function evaluated outside its domain");
  const double a = norm(p.slice(0, k_));
  const double c = offset(p.slice(k_, v_dim()));
  if (a == 0.0) return -kInf;
  return std::log(a) + c;
}

double GreenModel::gap(const Point& p) const {
  if (!domain_.contains(p)) throw DomainError("gap function evaluated outside its domain");
  return -offset(p.slice(k_, v_dim()));
}

AzukawaForm GreenModel::azukawa_form(std::span<const Complex> v) const {
  return AzukawaForm{k_, offset(v)};
}

double GreenModel::max_indicatrix_radius() const {
  if (kind_ == Kind::RadialLift) return std::exp(-fiber_psi_radius(*profile_, 0.0));
  return 1.0;
}

double eval_green(const GreenModel& m, const Point& p) { return m(p); }

double gap_B(const GreenModel& m, const Point& p) { return m.gap(p); }

double azukawa(const GreenModel& m, std::span<const Complex> v, std::span<const Complex> X) {
  return m.azukawa_form(v)(X);
}

AzukawaCheck azukawa_verify(const GreenModel& m, std::span<const Complex> v,
                            std::span<const Complex> X, double tol) {
  AzukawaCheck out;
  out.closed_form = azukawa(m, v, X);
  for (double lambda : {1e-2, 1e-3, 1e-4}) {
    std::vector<Complex> scaled(X.begin(), X.end());
    for (auto& x : scaled) x *= lambda;
    const double g = m(make_point(scaled, v));
    const double numeric = g - std::log(lambda);
    out.lambdas.push_back(lambda);
    out.numeric.push_back(numeric);
    out.max_deviation = std::max(out.max_deviation, std::abs(numeric - out.closed_form));
  }
  out.converged = std::abs(out.numeric.back() - out.closed_form) <= tol;
  return out;
}

QuadratureResult indicatrix_volume(const AzukawaForm& a, const VolumeMethod& method) {
  if (a.dim < 1) throw InvalidArgument("indicatrix_volume: dimension must be >= 1");
  // Probe |X| = 1e3 along every real and imaginary axis.
  for (int j = 0; j < a.dim; ++j) {
    for (Complex dir : {Complex(1e3, 0.0), Complex(0.0, 1e3)}) {
      std::vector<Complex> X(static_cast<std::size_t>(a.dim));
      X[static_cast<std::size_t>(j)] = dir;
      if (a(X) < 0.0) throw NumericalError("indicatrix_volume: indicatrix is unbounded");
    }
  }
  const double radius = a.indicatrix_radius();
  if (std::holds_alternative<ClosedForm>(method)) {
    QuadratureResult r;
    r.value = sigma_mu(a.dim).sigma * std::pow(radius, 2 * a.dim);
    return r;
  }
  const auto& mc = std::get<MonteCarlo>(method);
  McOptions opts;
  opts.samples = mc.samples;
  opts.seed = mc.seed;
  const std::vector<double> box(static_cast<std::size_t>(a.dim), radius * (1.0 + 1e-12));
  return mc_box_integrate(
      box,
      [&](std::span<const Complex> X) -> std::optional<double> {
        if (norm_sq(X) == 0.0) return 1.0;
        if (a(X) < 0.0) return 1.0;
        return std::nullopt;
      },
      opts);
}

QuadratureResult sublevel_scaling(const GreenModel& m, const std::function<double(const Point&)>& chi,
                                  double t, const MonteCarlo& method) {
  if (!(t < 0.0)) throw InvalidArgument("sublevel_scaling needs t < 0");
  const int k = m.pole_dim();
  const auto dim = static_cast<std::size_t>(m.ambient_dim());
  const double scale = std::exp(0.5 * t);

  auto box = m.domain().bounding_box();
  const double radius = m.max_indicatrix_radius() * (1.0 + 1e-12);
  for (int j = 0; j < k; ++j) box[static_cast<std::size_t>(j)] = radius;

  McOptions opts;
  opts.samples = method.samples;
  opts.seed = method.seed;
  auto r = mc_box_integrate(
      box,
      [&](std::span<const Complex> x) -> std::optional<double> {
        thread_local Point p;
        if (p.dim() != dim) p = Point::zeros(dim);
        auto c = p.coords();
        for (std::size_t j = 0; j < dim; ++j) c[j] = (j < static_cast<std::size_t>(k)) ? scale * x[j] : x[j];
        if (!m.domain().contains(c)) return std::nullopt;
        if (!(m(p) < 0.5 * t)) return std::nullopt;
        return chi(p);
      },
      opts);
  if (r.rejected == r.samples_or_nodes) {
    r.value = 0.0;
    r.error_estimate = 0.0;
    r.warning = "sublevel set is empty at this sampling resolution";
  }
  return r;
}

double indicatrix_integral(const GreenModel& m, const std::function<double(const Point&)>& chi) {
  const int k = m.pole_dim();
  const double sigma = sigma_mu(k).sigma;
  const std::vector<Complex> origin(static_cast<std::size_t>(k));
  auto integrand = [&](std::span<const Complex> v) {
    const double vol = sigma * std::pow(m.azukawa_form(v).indicatrix_radius(), 2 * k);
    return vol * chi(make_point(origin, v));
  };
  auto check = [](const QuadratureResult& q) {
    if (!q.converged) throw NumericalError("indicatrix_integral: quadrature did not converge");
    return q.value;
  };

  switch (m.kind()) {
  case GreenModel::Kind::BallPoint: return integrand({});
  case GreenModel::Kind::BallPair: {
    const int dim = m.v_dim();
    if (dim == 0) return integrand({});
    return check(radial_integrate([&](double r) { return integrand(radial_point(dim, r)); }, dim, 1.0));
  }
  case GreenModel::Kind::RadialLift: {
    const int zdim = m.v_dim() - k;
    auto inner = [&](double rz) {
      return check(radial_integrate(
          [&](double rw) {
            auto v = radial_point(zdim, rz);
            auto w = radial_point(k, rw);
            v.insert(v.end(), w.begin(), w.end());
            return integrand(v);
          },
          k, 1.0));
    };
    if (zdim == 0) return inner(0.0);
    return check(radial_integrate(inner, zdim, 1.0));
  }
  }
  return 0.0;
}

} // namespace l2ext
