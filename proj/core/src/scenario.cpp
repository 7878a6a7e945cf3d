#include "l2ext/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "l2ext/bergman.hpp"
#include "l2ext/bounds.hpp"
#include "l2ext/constants.hpp"
#include "l2ext/errors.hpp"
#include "l2ext/green.hpp"
#include "l2ext/integrate.hpp"
#include "l2ext/weights.hpp"

namespace l2ext {

using json = nlohmann::ordered_json;

namespace {

constexpr std::int64_t kDefaultMcSamples = 1'000'000;
constexpr std::int64_t kDefaultScalingSamples = 10'000'000;
// Hit-or-miss acceptance in the lift's bounding box is ~1.6% at k = 2.
constexpr std::int64_t kDefaultLiftSamples = 10'000'000;
constexpr std::int64_t kMaxSamples = 1'000'000'000;

const std::vector<std::pair<std::string, ScenarioKind>>& scenario_names() {
  static const std::vector<std::pair<std::string, ScenarioKind>> names{
      {"fubini_identity", ScenarioKind::FubiniIdentity},
      {"ball_lift_ratio", ScenarioKind::BallLiftRatio},
      {"radial_minimal", ScenarioKind::RadialMinimal},
      {"bound_comparison", ScenarioKind::BoundComparison},
      {"scaling_limit", ScenarioKind::ScalingLimit},
  };
  return names;
}

// ---------------------------------------------------------------------------
// Config parsing

template <class T>
T get_as(const json& j, const std::string& field);

template <>
int get_as<int>(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw UsageError(field, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < -1'000'000 || v > 1'000'000) throw UsageError(field, "integer out of range");
  return static_cast<int>(v);
}

template <>
std::int64_t get_as<std::int64_t>(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw UsageError(field, "expected an integer");
  return j.get<std::int64_t>();
}

template <>
double get_as<double>(const json& j, const std::string& field) {
  if (!j.is_number()) throw UsageError(field, "expected a number");
  return j.get<double>();
}

template <>
std::string get_as<std::string>(const json& j, const std::string& field) {
  if (!j.is_string()) throw UsageError(field, "expected a string");
  return j.get<std::string>();
}

std::uint64_t parse_seed(const json& j) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (v < 0) throw UsageError("seed", "must be non-negative");
    return static_cast<std::uint64_t>(v);
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("seed", "expected a non-negative 64-bit integer");
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw UsageError("seed", "does not fit in 64 bits");
    }
  }
  throw UsageError("seed", "expected a non-negative 64-bit integer");
}

std::vector<FTerm> parse_f(const json& j) {
  if (!j.is_array()) throw UsageError("f", "expected an array of {exponent, coef} terms");
  std::vector<FTerm> terms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& t = j[i];
    const std::string where = "f[" + std::to_string(i) + "]";
    if (!t.is_object()) throw UsageError(where, "expected an object");
    FTerm term;
    for (const auto& [key, val] : t.items()) {
      if (key == "exponent") {
        if (!val.is_array()) throw UsageError(where + ".exponent", "expected an integer array");
        for (const auto& e : val) {
          const int v = get_as<int>(e, where + ".exponent");
          if (v < 0) throw UsageError(where + ".exponent", "exponents must be >= 0");
          term.exponent.push_back(v);
        }
      } else if (key == "coef") {
        if (val.is_number()) {
          term.re = val.get<double>();
          term.im = 0.0;
        } else if (val.is_array() && val.size() == 2 && val[0].is_number() && val[1].is_number()) {
          term.re = val[0].get<double>();
          term.im = val[1].get<double>();
        } else {
          throw UsageError(where + ".coef", "expected a number or [re, im]");
        }
      } else {
        throw UsageError(where + "." + key, "unknown field");
      }
    }
    terms.push_back(std::move(term));
  }
  return terms;
}

void apply_param(ScenarioConfig& c, const std::string& key, const json& val) {
  if (key == "n") c.n = get_as<int>(val, key);
  else if (key == "k") c.k = get_as<int>(val, key);
  else if (key == "weight") c.weight = get_as<std::string>(val, key);
  else if (key == "profile") c.profile = get_as<std::string>(val, key);
  else if (key == "profile_scale") c.profile_scale = get_as<double>(val, key);
  else if (key == "ball_coefficient") c.ball_coefficient = get_as<double>(val, key);
  else if (key == "epsilon") c.epsilon = get_as<double>(val, key);
  else if (key == "zpp_norm" || key == "z''_norm" || key == "z″_norm") c.zpp_norm = get_as<double>(val, key);
  else if (key == "degree" || key == "d") c.degree = get_as<int>(val, key);
  else if (key == "model") c.model = get_as<std::string>(val, key);
  else if (key == "t_ladder") {
    if (!val.is_array() || val.empty()) throw UsageError(key, "expected a non-empty number array");
    c.t_ladder.clear();
    for (const auto& t : val) c.t_ladder.push_back(get_as<double>(t, key));
  } else if (key == "f") c.f = parse_f(val);
  else throw UsageError(key, "unknown field");
}

void apply_tolerances(Tolerances& t, const json& j) {
  if (!j.is_object()) throw UsageError("tolerances", "expected an object");
  for (const auto& [key, val] : j.items()) {
    const std::string field = "tolerances." + key;
    const double v = get_as<double>(val, field);
    if (!(v > 0.0) || !std::isfinite(v)) throw UsageError(field, "must be positive");
    if (key == "exact_rel") t.exact_rel = v;
    else if (key == "identity_rel") t.identity_rel = v;
    else if (key == "mc_rel") t.mc_rel = v;
    else if (key == "transverse_abs") t.transverse_abs = v;
    else if (key == "convergence_rel") t.convergence_rel = v;
    else if (key == "limit_rel") t.limit_rel = v;
    else throw UsageError(field, "unknown field");
  }
}

// ---------------------------------------------------------------------------
// Scenario construction

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw UsageError(field, what);
}

RadialProfile make_profile(const ScenarioConfig& c, int k, double slice_c) {
  if (c.profile == "log_singular") return RadialProfile::log_singular();
  if (c.profile == "scaled_log") {
    require(c.profile_scale > 0.0 && c.profile_scale <= 100.0, "profile_scale", "must lie in (0, 100]");
    return RadialProfile::scaled_log(c.profile_scale);
  }
  if (c.profile == "epsilon_regularized") {
    require(c.epsilon > 0.0 && c.epsilon <= 10.0, "epsilon", "must lie in (0, 10] for epsilon_regularized");
    return RadialProfile::epsilon_regularized(RadialProfile::log_singular(), c.epsilon, k, slice_c);
  }
  throw UsageError("profile", "unknown profile '" + c.profile + "' (log_singular | scaled_log | epsilon_regularized)");
}

Weight make_weight(const ScenarioConfig& c) {
  require(c.epsilon >= 0.0 && c.epsilon <= 10.0, "epsilon", "must lie in [0, 10]");
  Weight w = Weight::trivial();
  if (c.weight == "trivial") {
    w = Weight::trivial();
  } else if (c.weight == "ball_standard") {
    require(c.ball_coefficient >= 0.0 && c.ball_coefficient <= 20.0, "ball_coefficient", "must lie in [0, 20]");
    w = Weight::ball_standard(c.ball_coefficient);
  } else if (c.weight == "radial") {
    // The regularized profile is the slice form of log_singular + epsilon.
    const RadialProfile u = c.profile == "epsilon_regularized" ? RadialProfile::log_singular() : make_profile(c, c.k, 1.0);
    if (c.profile == "epsilon_regularized") require(c.epsilon > 0.0, "epsilon", "must be > 0 for epsilon_regularized");
    w = Weight::radial(u, c.k);
  } else {
    throw UsageError("weight", "unknown weight '" + c.weight + "' (radial | ball_standard | trivial)");
  }
  return c.epsilon > 0.0 ? epsilon_regularize(w, c.epsilon) : w;
}

RadialScenario make_radial_scenario(const ScenarioConfig& c) {
  require(c.n >= 1 && c.n <= 6, "n", "must lie in [1, 6]");
  require(c.k >= 1 && c.k <= c.n, "k", "must lie in [1, n]");
  require(c.degree >= 2 && c.degree <= 16, "degree", "must lie in [2, 16]");
  RadialScenario s;
  s.id = scenario_name(c.scenario);
  s.n = c.n;
  s.k = c.k;
  s.weight = make_weight(c);
  for (std::size_t i = 0; i < c.f.size(); ++i) {
    const FTerm& t = c.f[i];
    const std::string where = "f[" + std::to_string(i) + "]";
    MultiIndex beta = t.exponent;
    if (beta.empty()) beta.assign(static_cast<std::size_t>(c.n - c.k), 0);
    require(beta.size() == static_cast<std::size_t>(c.n - c.k), where + ".exponent", "length must be n - k");
    require(std::isfinite(t.re) && std::isfinite(t.im), where + ".coef", "must be finite");
    s.f[beta] += Complex(t.re, t.im);
  }
  return s;
}

bool f_is_zero(const RadialScenario& s) {
  return std::all_of(s.f.begin(), s.f.end(), [](const auto& kv) { return kv.second == Complex{}; });
}

int f_degree(const RadialScenario& s) {
  int d = 0;
  for (const auto& [beta, c] : s.f) {
    int b = 0;
    for (int e : beta) b += e;
    if (c != Complex{}) d = std::max(d, b);
  }
  return d;
}

// Closed form of the minimal norm when it is exactly pi^n n!/(2n)! |f|^2:
// n = k with e^{-phi} = (1 - |z|^2)^n.
std::optional<double> closed_form_min_norm(const ScenarioConfig& c, const RadialScenario& s) {
  if (c.n != c.k || c.epsilon != 0.0 || c.n > 12) return std::nullopt;
  const bool log_radial = c.weight == "radial" && c.profile == "log_singular";
  const bool ball_n = c.weight == "ball_standard" && c.ball_coefficient == static_cast<double>(c.n);
  if (!log_radial && !ball_n) return std::nullopt;
  double f2 = 0.0;
  for (const auto& [beta, coef] : s.f) f2 += std::norm(coef);
  return ball_lift_ratio(c.n) * f2;
}

std::uint64_t binomial(int n, int r) {
  std::uint64_t b = 1;
  for (int i = 1; i <= r; ++i) b = b * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  return b;
}

std::int64_t mc_samples(const ScenarioConfig& c, std::int64_t fallback) {
  require(c.samples >= 0 && c.samples <= kMaxSamples, "samples", "must lie in [0, 1e9]");
  return c.samples > 0 ? c.samples : fallback;
}

// ---------------------------------------------------------------------------
// Report helpers

std::string json_text(const json& j) { return j.dump(); }

class Builder {
public:
  explicit Builder(Report& r) : r_(r) {}

  void param(const std::string& key, const json& v) { r_.params.emplace_back(key, json_text(v)); }
  void value(const std::string& name, double v, double err, const std::string& prov) {
    r_.values.push_back({name, v, err, prov});
  }
  void value(const std::string& name, const QuadratureResult& q, const std::string& prov) {
    value(name, q.value, q.error_estimate, prov);
  }
  // |lhs - rhs| <= tol * |rhs|
  void rel_equal(const std::string& name, double lhs, double rhs, double tol) {
    r_.assertions.push_back({name, std::abs(lhs - rhs) <= tol * std::abs(rhs), lhs, rhs, tol});
  }
  // lhs <= rhs (1 + tol)
  void rel_le(const std::string& name, double lhs, double rhs, double tol) {
    r_.assertions.push_back({name, lhs <= rhs + tol * std::abs(rhs), lhs, rhs, tol});
  }
  void abs_lt(const std::string& name, double lhs, double bound) {
    r_.assertions.push_back({name, lhs < bound, lhs, 0.0, bound});
  }
  void strictly_less(const std::string& name, double lhs, double rhs) {
    r_.assertions.push_back({name, lhs < rhs, lhs, rhs, 0.0});
  }
  void at_least(const std::string& name, double lhs, double rhs) {
    r_.assertions.push_back({name, lhs >= rhs, lhs, rhs, 0.0});
  }

private:
  Report& r_;
};

json f_json(const RadialScenario& s) {
  json arr = json::array();
  for (const auto& [beta, c] : s.f) arr.push_back({{"exponent", beta}, {"coef", {c.real(), c.imag()}}});
  return arr;
}

void echo_weight(Builder& b, const ScenarioConfig& c, const RadialScenario& s) {
  b.param("n", c.n);
  b.param("k", c.k);
  b.param("weight", s.weight.name());
  b.param("degree", c.degree);
  b.param("f", f_json(s));
}

std::string t_label(double t) {
  std::ostringstream os;
  os << std::setprecision(6) << t;
  return os.str();
}

// ---------------------------------------------------------------------------
// Scenarios

void run_fubini(const ScenarioConfig& c, Report& r) {
  Builder b(r);
  require(c.k >= 1 && c.k <= 6, "k", "must lie in [1, 6]");
  require(c.zpp_norm >= 0.0 && c.zpp_norm <= 0.95, "zpp_norm", "must lie in [0, 0.95]");
  const double slice_c = 1.0 - c.zpp_norm * c.zpp_norm;
  const RadialProfile u = make_profile(c, c.k, slice_c);
  b.param("profile", u.name());
  b.param("k", c.k);
  b.param("zpp_norm", c.zpp_norm);

  const FubiniSides sides = fubini_sides(u, c.k, c.zpp_norm);
  b.value("lhs", sides.lhs, "quadrature");
  b.value("rhs", sides.rhs, "quadrature");
  b.rel_equal("lhs_equals_rhs", sides.lhs.value, sides.rhs.value, c.tol.identity_rel);

  if (c.profile == "log_singular" && c.k <= 12) {
    // pi^k k!/(2k)! on the unit slice, scaled by c^k.
    const double exact = ball_lift_ratio(c.k) * std::pow(slice_c, c.k);
    b.value("closed_form", exact, 0.0, "closed_form");
    b.rel_equal("lhs_matches_closed_form", sides.lhs.value, exact, c.tol.identity_rel);
    b.rel_equal("rhs_matches_closed_form", sides.rhs.value, exact, c.tol.identity_rel);
  }

  if (c.seed) {
    McOptions o;
    o.samples = mc_samples(c, kDefaultLiftSamples);
    o.seed = *c.seed;
    b.param("samples", o.samples);
    const auto mc = fubini_lift_volume(u, c.k, c.zpp_norm, o);
    b.value("mc_lift_volume", mc, "monte_carlo");
    b.rel_equal("mc_lift_volume_matches", mc.value, sides.rhs.value, c.tol.mc_rel);
  } else {
    require(c.samples == 0, "seed", "required when samples is set");
  }
}

void run_ball_lift_ratio(const ScenarioConfig& c, Report& r) {
  Builder b(r);
  require(c.n >= 1 && c.n <= 12, "n", "must lie in [1, 12]");
  b.param("n", c.n);
  const double ratio = ball_lift_ratio(c.n);
  const auto quad = ball_lift_ratio_quadrature(c.n);
  b.value("ratio", ratio, 0.0, "closed_form");
  b.value("radial_quadrature", quad, "quadrature");
  b.rel_equal("ratio_matches_quadrature", ratio, quad.value, c.tol.exact_rel);
  if (c.n >= 2)
    b.strictly_less("ratio_below_one", ratio, 1.0);
  else
    b.at_least("ratio_at_least_one", ratio, 1.0);

  if (c.seed) {
    const std::int64_t samples = mc_samples(c, kDefaultMcSamples);
    b.param("samples", samples);
    const auto mc = ball_lift_ratio_mc(c.n, samples, *c.seed);
    b.value("mc_integral", mc, "monte_carlo");
    b.rel_equal("mc_matches_quadrature", mc.value, quad.value, c.tol.mc_rel);
  } else {
    require(c.samples == 0, "seed", "required when samples is set");
  }
}

struct SolvedExtension {
  ExtensionResult ext;
  double flat_norm = 0.0;
};

SolvedExtension solve_extension(const RadialScenario& s, int degree) {
  const MultiIndexBasis basis(s.n, degree, s.k);
  const GramMatrix gram = gram_matrix(DomainSpec::ball(1.0, s.n), s.weight, basis);
  SolvedExtension out{min_norm_extension(s.f, gram), 0.0};
  // Flat extension F(z', z'') = f(z'').
  Eigen::VectorXcd flat = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  for (const auto& [beta, coef] : s.f) {
    MultiIndex alpha(static_cast<std::size_t>(s.k), 0);
    alpha.insert(alpha.end(), beta.begin(), beta.end());
    flat(static_cast<Eigen::Index>(*basis.index_of(alpha))) = coef;
  }
  out.flat_norm = gram.norm_sq(flat);
  return out;
}

void run_radial_minimal(const ScenarioConfig& c, Report& r) {
  Builder b(r);
  const RadialScenario s = make_radial_scenario(c);
  echo_weight(b, c, s);
  if (f_degree(s) > c.degree)
    throw UsageError("degree", "f has degree " + std::to_string(f_degree(s)) + "; degree >= " +
                                   std::to_string(f_degree(s)) + " is needed");
  const int coarse = std::max(c.degree - 2, f_degree(s));

  const SolvedExtension fine = solve_extension(s, c.degree);
  const SolvedExtension low = solve_extension(s, coarse);
  const double m = fine.ext.squared_norm;
  b.value("minimal_norm2", m, 0.0, "linear_solve");
  b.value("minimal_norm2_coarse", low.ext.squared_norm, 0.0, "linear_solve");
  b.value("flat_extension_norm2", fine.flat_norm, 0.0, "quadrature");
  b.value("max_transverse_coefficient", fine.ext.max_transverse_coefficient(), 0.0, "linear_solve");
  b.value("constraint_residual", fine.ext.constraint_residual, 0.0, "linear_solve");

  b.abs_lt("transverse_coefficients_vanish", fine.ext.max_transverse_coefficient(), c.tol.transverse_abs);
  b.rel_equal("degree_convergence", m, low.ext.squared_norm, c.tol.convergence_rel);
  b.rel_equal("flat_extension_is_minimal", m, fine.flat_norm, c.tol.identity_rel);
  if (const auto exact = closed_form_min_norm(c, s)) {
    b.value("closed_form", *exact, 0.0, "closed_form");
    b.rel_equal("minimal_norm2_matches_closed_form", m, *exact, c.tol.identity_rel);
  }

  try {
    const double lift = lift_route_rhs(s);
    b.value("lift_route_rhs", lift, 0.0, "quadrature");
    if (s.n == s.k)
      b.rel_equal("lift_route_equals_minimal_norm2", lift, m, c.tol.identity_rel);
    else
      b.rel_le("minimal_norm2_below_lift_route", m, lift, c.tol.identity_rel);
  } catch (const UnsupportedError&) {
    b.param("lift_route_rhs", "unsupported");
  }
}

void run_bound_comparison(const ScenarioConfig& c, Report& r) {
  Builder b(r);
  const RadialScenario s = make_radial_scenario(c);
  echo_weight(b, c, s);
  if (f_degree(s) > c.degree)
    throw UsageError("degree", "f has degree " + std::to_string(f_degree(s)) + "; degree >= " +
                                   std::to_string(f_degree(s)) + " is needed");

  const SolvedExtension sol = solve_extension(s, c.degree);
  const double m = sol.ext.squared_norm;
  const BoundReport br = bound_report(s, m);
  b.value("sigma_k", br.sigma_k, 0.0, "closed_form");
  b.value("mu_k", br.mu_k, 0.0, "closed_form");
  b.value("minimal_norm2", m, 0.0, "linear_solve");
  b.value("green_gap_rhs", br.green_gap_rhs, 0.0, "quadrature");
  b.value("indicatrix_rhs", br.indicatrix_rhs, 0.0, "quadrature");

  const double tol = c.tol.identity_rel;
  b.rel_le("minimal_norm2_below_green_gap", m, br.green_gap_rhs, tol);
  b.rel_le("minimal_norm2_below_indicatrix", m, br.indicatrix_rhs, tol);
  b.rel_equal("green_gap_equals_indicatrix", br.green_gap_rhs, br.indicatrix_rhs, tol);

  if (!br.lift_route_rhs) {
    b.param("lift_route_rhs", "unsupported");
    return;
  }
  const double lift = *br.lift_route_rhs;
  b.value("lift_route_rhs", lift, 0.0, "quadrature");
  b.rel_le("minimal_norm2_below_lift_route", m, lift, tol);

  const StrictnessGap gap = strictness_gap(s);
  b.value("strictness_left", gap.left, 0.0, "quadrature");
  b.value("strictness_right", gap.right, 0.0, "quadrature");
  b.value("strictness_gap", gap.gap, 0.0, "derived");
  b.value("strict", gap.strict ? 1.0 : 0.0, 0.0, "derived");
  if (!f_is_zero(s)) b.strictly_less("strictness_gap_positive", 0.0, gap.gap);

  if (s.n == s.k) {
    b.rel_equal("lift_route_equals_minimal_norm2", lift, m, tol);
    b.rel_le("lift_route_below_indicatrix", lift, br.indicatrix_rhs, tol);
    if (!f_is_zero(s)) {
      const double factor = br.indicatrix_rhs / m;
      b.value("sharpness_factor", factor, 0.0, "derived");
      if (closed_form_min_norm(c, s)) {
        // sigma_k / (pi^k k!/(2k)!) = (2k)! / (k!)^2
        const auto exact = static_cast<double>(binomial(2 * s.k, s.k));
        b.value("sharpness_factor_exact", exact, 0.0, "closed_form");
        b.rel_equal("sharpness_factor_is_exact", factor, exact, tol);
      }
    }
  } else {
    b.value("lift_route_over_indicatrix", lift / br.indicatrix_rhs, 0.0, "derived");
  }
}

void run_scaling_limit(const ScenarioConfig& c, Report& r) {
  Builder b(r);
  require(c.seed.has_value(), "seed", "required for the Monte Carlo scenario scaling_limit");
  const std::int64_t samples = mc_samples(c, kDefaultScalingSamples);
  for (double t : c.t_ladder) require(std::isfinite(t) && t < 0.0 && t >= -60.0, "t_ladder", "entries must lie in [-60, 0)");

  std::optional<GreenModel> model;
  double limit = 0.0;
  double limit_tol = 0.0;
  if (c.model == "ball_point") {
    require(c.n >= 1 && c.n <= 6, "n", "must lie in [1, 6]");
    model = GreenModel::ball_point(c.n);
    b.param("model", "ball_point");
    b.param("n", c.n);
    limit = sigma_mu(c.n).sigma;
    b.value("limit_closed_form", limit, 0.0, "closed_form");
    limit_tol = c.tol.mc_rel;
  } else if (c.model == "ball_pair") {
    require(c.k >= 1 && c.k <= 4, "k", "must lie in [1, 4]");
    require(c.n > c.k && c.n <= 6, "n", "must lie in (k, 6]");
    const int m = c.n - c.k;
    model = GreenModel::ball_pair(c.k, m);
    b.param("model", "ball_pair");
    b.param("n", c.n);
    b.param("k", c.k);
    // sigma_k int_{B^m} (1 - |w|^2)^k = sigma_k pi^m k! / (k + m)!
    double pim = 1.0;
    for (int i = 0; i < m; ++i) pim *= kPi;
    const double exact = sigma_mu(c.k).sigma * pim * static_cast<double>(factorial(c.k)) /
                         static_cast<double>(factorial(c.k + m));
    limit = indicatrix_integral(*model, [](const Point&) { return 1.0; });
    b.value("limit_closed_form", exact, 0.0, "closed_form");
    b.value("limit_indicatrix_integral", limit, 0.0, "quadrature");
    b.rel_equal("indicatrix_integral_matches_closed_form", limit, exact, c.tol.identity_rel);
    limit_tol = c.tol.limit_rel;
  } else {
    throw UsageError("model", "unknown model '" + c.model + "' (ball_point | ball_pair)");
  }
  b.param("t_ladder", c.t_ladder);
  b.param("samples", samples);

  for (std::size_t i = 0; i < c.t_ladder.size(); ++i) {
    const double t = c.t_ladder[i];
    const auto q = sublevel_scaling(*model, [](const Point&) { return 1.0; }, t,
                                    MonteCarlo{samples, *c.seed + i});
    const std::string label = "scaled_volume[t=" + t_label(t) + "]";
    b.value(label, q, "monte_carlo");
    b.rel_equal(label + "_matches_limit", q.value, limit, limit_tol);
  }
}

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

} // namespace

std::string scenario_name(ScenarioKind kind) {
  for (const auto& [name, k] : scenario_names())
    if (k == kind) return name;
  return "unknown";
}

std::optional<ScenarioKind> parse_scenario_name(const std::string& name) {
  if (name == "example41") return ScenarioKind::BallLiftRatio;
  for (const auto& [n, k] : scenario_names())
    if (n == name) return k;
  return std::nullopt;
}

ScenarioConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError("config", std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config", "expected a JSON object");
  if (!j.contains("scenario")) throw UsageError("scenario", "missing");

  ScenarioConfig c;
  const auto name = get_as<std::string>(j["scenario"], "scenario");
  const auto kind = parse_scenario_name(name);
  if (!kind) throw UnsupportedError("unsupported scenario '" + name + "'; run `list` for the catalog");
  c.scenario = *kind;

  for (const auto& [key, val] : j.items()) {
    if (key == "scenario") continue;
    if (key == "samples") c.samples = get_as<std::int64_t>(val, key);
    else if (key == "seed") c.seed = parse_seed(val);
    else if (key == "tolerances") apply_tolerances(c.tol, val);
    else if (key == "params") {
      if (!val.is_object()) throw UsageError("params", "expected an object");
      for (const auto& [pk, pv] : val.items()) apply_param(c, pk, pv);
    } else apply_param(c, key, val);
  }
  if (c.samples < 0) throw UsageError("samples", "must be >= 0");
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

bool Report::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const auto& a) { return a.pass; });
}

const ReportValue* Report::value(const std::string& name) const {
  for (const auto& v : values)
    if (v.name == name) return &v;
  return nullptr;
}

const ReportAssertion* Report::assertion(const std::string& name) const {
  for (const auto& a : assertions)
    if (a.name == name) return &a;
  return nullptr;
}

Report run_scenario(const ScenarioConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  r.scenario = scenario_name(config.scenario);
  r.seed = config.seed;
  switch (config.scenario) {
  case ScenarioKind::FubiniIdentity: run_fubini(config, r); break;
  case ScenarioKind::BallLiftRatio: run_ball_lift_ratio(config, r); break;
  case ScenarioKind::RadialMinimal: run_radial_minimal(config, r); break;
  case ScenarioKind::BoundComparison: run_bound_comparison(config, r); break;
  case ScenarioKind::ScalingLimit: run_scaling_limit(config, r); break;
  }
  r.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string to_json(const Report& report, bool include_wall_clock) {
  json j;
  j["scenario"] = report.scenario;
  json params = json::object();
  for (const auto& [k, v] : report.params) params[k] = json::parse(v);
  j["params"] = params;
  json values = json::array();
  for (const auto& v : report.values)
    values.push_back({{"name", v.name}, {"value", v.value}, {"error", v.error}, {"provenance", v.provenance}});
  j["values"] = values;
  json asserts = json::array();
  for (const auto& a : report.assertions)
    asserts.push_back({{"name", a.name}, {"pass", a.pass}, {"lhs", a.lhs}, {"rhs", a.rhs}, {"tol", a.tol}});
  j["assertions"] = asserts;
  j["seed"] = report.seed ? json(*report.seed) : json(nullptr);
  j["version"] = report.version;
  if (include_wall_clock) j["wall_clock_seconds"] = report.wall_clock_seconds;
  return j.dump(2) + "\n";
}

std::string to_table(const Report& report) {
  std::ostringstream os;
  os << "scenario: " << report.scenario << "\n";
  for (const auto& [k, v] : report.params) os << "  " << k << " = " << v << "\n";
  os << "seed: " << (report.seed ? std::to_string(*report.seed) : "none") << "   version: " << report.version
     << "\n\n";

  auto emit = [&os](const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> w;
    for (const auto& row : rows)
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (w.size() <= i) w.push_back(0);
        w[i] = std::max(w[i], row[i].size());
      }
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i + 1 < row.size())
          os << std::left << std::setw(static_cast<int>(w[i])) << row[i] << "  ";
        else
          os << row[i];
      }
      os << "\n";
    }
    os << "\n";
  };

  std::vector<std::vector<std::string>> values{{"value", "estimate", "error", "provenance"}};
  for (const auto& v : report.values) values.push_back({v.name, fmt_num(v.value), fmt_num(v.error), v.provenance});
  emit(values);

  std::vector<std::vector<std::string>> asserts{{"assertion", "result", "lhs", "rhs", "tol"}};
  for (const auto& a : report.assertions)
    asserts.push_back({a.name, a.pass ? "PASS" : "FAIL", fmt_num(a.lhs), fmt_num(a.rhs), fmt_num(a.tol)});
  emit(asserts);

  os << (report.passed() ? "all assertions passed" : "FAILED assertions present") << "\n";
  std::ostringstream wc;
  wc << std::fixed << std::setprecision(3) << report.wall_clock_seconds;
  os << "wall clock: " << wc.str() << " s\n";
  return os.str();
}

std::string catalog_listing() {
  std::ostringstream os;
  os << "fubini_identity   profile in {log_singular, scaled_log, epsilon_regularized}, k in [1, 6],\n"
        "                  zpp_norm in [0, 0.95], profile_scale in (0, 100], epsilon in (0, 10];\n"
        "                  optional Monte Carlo oracle (samples, seed)\n"
        "ball_lift_ratio   n in [1, 12] (alias: example41); optional Monte Carlo oracle (samples, seed)\n"
        "radial_minimal    n in [1, 6], k in [1, n], degree in [2, 16],\n"
        "                  weight in {radial, ball_standard, trivial}, profile, epsilon in [0, 10], f terms\n"
        "bound_comparison  same parameters as radial_minimal\n"
        "scaling_limit     model in {ball_point (n in [1, 6]), ball_pair (k in [1, 4], n in (k, 6])},\n"
        "                  t_ladder entries in [-60, 0), samples (default 1e7), seed required\n";
  return os.str();
}

} // namespace l2ext
