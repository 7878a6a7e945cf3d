// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "l2ext/bergman.hpp"
#include "l2ext/bounds.hpp"
#include "l2ext/green.hpp"
#include "l2ext/integrate.hpp"
#include "l2ext/scenario.hpp"

using namespace l2ext;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Pinned tolerances.
constexpr double kIdentityRel = 1e-6;
constexpr double kExactRel = 1e-12;
constexpr double kMcRel = 0.01;
constexpr double kTransverseAbs = 1e-8;
constexpr double kLimitRel = 0.05;
constexpr double kAzukawaTol = 1e-6;

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  std::function<bool(std::string&)> body;
};

bool rel_close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

bool note(std::string& msg, bool ok, const std::string& what) {
  if (!ok) msg += (msg.empty() ? "" : "; ") + what;
  return ok;
}

Report run(const std::string& json) { return run_scenario(parse_config(json)); }

bool fubini(std::string& msg) {
  bool ok = true;
  const double exact[] = {kPi / 2, kPi * kPi / 12};
  for (int k = 1; k <= 2; ++k) {
    const FubiniSides s = fubini_sides(RadialProfile::log_singular(), k, 0.0);
    ok &= note(msg, rel_close(s.lhs.value, exact[k - 1], kIdentityRel), "lhs k=" + std::to_string(k));
    ok &= note(msg, rel_close(s.rhs.value, exact[k - 1], kIdentityRel), "rhs k=" + std::to_string(k));
    McOptions mc;
    mc.samples = 20'000'000;
    mc.seed = 100 + static_cast<std::uint64_t>(k);
    const QuadratureResult v = fubini_lift_volume(RadialProfile::log_singular(), k, 0.0, mc);
    ok &= note(msg, rel_close(v.value, exact[k - 1], kMcRel), "mc k=" + std::to_string(k));
  }
  return ok;
}

bool lift_ratio(std::string& msg) {
  bool ok = note(msg, rel_close(ball_lift_ratio(2), kPi * kPi / 12, kExactRel), "ratio(2)");
  ok &= note(msg, ball_lift_ratio(1) >= 1.0, "ratio(1) >= 1");
  for (int n = 2; n <= 6; ++n) {
    ok &= note(msg, ball_lift_ratio(n) < 1.0, "ratio(" + std::to_string(n) + ") < 1");
    ok &= note(msg, rel_close(ball_lift_ratio_quadrature(n).value, ball_lift_ratio(n), kExactRel),
               "quadrature n=" + std::to_string(n));
  }
  const QuadratureResult mc = ball_lift_ratio_mc(2, 1'000'000, 41);
  ok &= note(msg, rel_close(mc.value, ball_lift_ratio_quadrature(2).value, kMcRel), "mc n=2");
  return ok;
}

bool radial_minimal(std::string& msg) {
  bool ok = true;
  const char* cfgs[] = {R"({"scenario": "radial_minimal", "n": 1, "k": 1, "weight": "ball_standard", "ball_coefficient": 1, "d": 8})",
                        R"({"scenario": "radial_minimal", "n": 2, "k": 2, "weight": "ball_standard", "ball_coefficient": 2, "d": 8})"};
  const double exact[] = {kPi / 2, kPi * kPi / 12};
  for (int i = 0; i < 2; ++i) {
    const Report r = run(cfgs[i]);
    const std::string tag = i == 0 ? "disc" : "ball2";
    ok &= note(msg, r.value("max_transverse_coefficient")->value < kTransverseAbs, tag + " transverse");
    ok &= note(msg, rel_close(r.value("minimal_norm2")->value, exact[i], kIdentityRel), tag + " norm2");
  }
  return ok;
}

bool sharpness(std::string& msg) {
  bool ok = true;
  const VPolynomial one{{MultiIndex{}, Complex(1.0)}};
  const RadialScenario cases[] = {{"disc", 1, 1, Weight::ball_standard(1.0), one},
                                  {"ball2", 2, 2, Weight::ball_standard(2.0), one}};
  const double factor[] = {2.0, 6.0};
  for (int i = 0; i < 2; ++i) {
    const RadialScenario& s = cases[i];
    const GramMatrix g = gram_matrix(DomainSpec::ball(1.0, s.n), s.weight, MultiIndexBasis(s.n, 8, s.k));
    const double m = min_norm_extension(s.f, g).squared_norm;
    ok &= note(msg, rel_close(lift_route_rhs(s), m, kIdentityRel), s.id + " lift = min");
    ok &= note(msg, rel_close(indicatrix_rhs(s) / m, factor[i], kIdentityRel), s.id + " factor");
  }
  return ok;
}

bool scaling(std::string& msg) {
  bool ok = true;
  const auto one = [](const Point&) { return 1.0; };
  for (int k = 1; k <= 2; ++k) {
    const GreenModel m = GreenModel::ball_point(k);
    const double sigma = std::pow(kPi, k) / (k == 1 ? 1.0 : 2.0);
    for (const double t : {-4.0, -8.0, -12.0}) {
      const QuadratureResult r = sublevel_scaling(m, one, t, MonteCarlo{10'000'000, 500 + static_cast<std::uint64_t>(-t)});
      ok &= note(msg, rel_close(r.value, sigma, kMcRel),
                 "ball_point k=" + std::to_string(k) + " t=" + std::to_string(static_cast<int>(t)));
    }
  }
  const QuadratureResult p = sublevel_scaling(GreenModel::ball_pair(2, 2), one, -8.0, MonteCarlo{10'000'000, 508});
  ok &= note(msg, rel_close(p.value, std::pow(kPi, 4) / 24, kLimitRel), "ball_pair t=-8");
  return ok;
}

std::vector<GreenModel> catalog_models() {
  return {GreenModel::ball_point(1),
          GreenModel::ball_point(2),
          GreenModel::ball_pair(1, 1),
          GreenModel::ball_pair(2, 2),
          GreenModel::radial_lift(RadialProfile::log_singular(), 1, 1),
          GreenModel::radial_lift(RadialProfile::scaled_log(2.0), 1, 2),
          GreenModel::radial_lift(RadialProfile::log_singular(), 2, 2),
          GreenModel::radial_lift(RadialProfile::epsilon_regularized(RadialProfile::log_singular(), 0.1, 1), 1, 1)};
}

Point sample_point(const GreenModel& m, std::mt19937_64& gen) {
  const auto box = m.domain().bounding_box();
  std::vector<Complex> c(box.size());
  for (;;) {
    for (std::size_t j = 0; j < box.size(); ++j) {
      std::uniform_real_distribution<double> d(-box[j], box[j]);
      c[j] = {d(gen), d(gen)};
    }
    Point p(c);
    if (m.domain().contains(p) && norm_sq(p.slice(0, static_cast<std::size_t>(m.pole_dim()))) > 0.0) return p;
  }
}

bool green_properties(const GreenModel& m, std::mt19937_64& gen, std::string& msg) {
  std::normal_distribution<double> nd;
  const auto n = static_cast<std::size_t>(m.ambient_dim());
  const auto k = static_cast<std::size_t>(m.pole_dim());
  const auto vd = static_cast<std::size_t>(m.v_dim());
  bool neg = true, psh = true, homog = true, limit = true;
  for (int i = 0; i < 2000; ++i) neg &= eval_green(m, sample_point(m, gen)) < 0.0;
  for (int i = 0; i < 100; ++i) {
    const Point p = sample_point(m, gen);
    std::vector<Complex> dir(n);
    for (auto& d : dir) d = {nd(gen), nd(gen)};
    const double dn = norm(dir);
    double rho = 0.05;
    std::vector<Point> circle;
    for (; rho > 1e-4; rho *= 0.5) {
      circle.clear();
      for (int j = 0; j < 64; ++j) {
        std::vector<Complex> q(p.coords().begin(), p.coords().end());
        for (std::size_t a = 0; a < n; ++a) q[a] += std::polar(rho, 2 * kPi * j / 64) * dir[a] / dn;
        if (!m.domain().contains(q)) break;
        circle.emplace_back(q);
      }
      if (circle.size() == 64) break;
    }
    if (circle.size() != 64) continue;
    double mean = 0.0;
    for (const auto& q : circle) mean += eval_green(m, q) / 64.0;
    psh &= eval_green(m, p) <= mean + 1e-6;
  }
  for (int i = 0; i < 20; ++i) {
    std::vector<Complex> X(k), v(vd);
    for (auto& x : X) x = {nd(gen), nd(gen)};
    for (auto& x : v) x = {0.25 * nd(gen), 0.25 * nd(gen)};
    if (norm_sq(v) >= 0.5) continue;
    const Complex c(nd(gen), nd(gen));
    std::vector<Complex> Xc = X;
    for (auto& x : Xc) x *= c;
    homog &= std::abs(azukawa(m, v, Xc) - azukawa(m, v, X) - std::log(std::abs(c))) < 1e-12;
    limit &= azukawa_verify(m, v, X, kAzukawaTol).converged;
  }
  const std::string tag = m.name() + ": ";
  note(msg, neg, tag + "negativity");
  note(msg, psh, tag + "circle means");
  note(msg, homog, tag + "homogeneity");
  note(msg, limit, tag + "numeric limit");
  return neg && psh && homog && limit;
}

bool gram_properties(const Weight& w, int n, int k, std::string& msg) {
  const DomainSpec ball = DomainSpec::ball(1.0, n);
  const MultiIndexBasis basis(n, 4, k);
  const GramMatrix exact = gram_matrix(ball, w, basis);
  const Eigen::MatrixXcd& G = exact.entries();
  bool herm = (G - G.adjoint()).cwiseAbs().maxCoeff() == 0.0;
  bool pd = exact.cholesky().info() == Eigen::Success;
  bool offdiag = true;
  for (Eigen::Index i = 0; i < G.rows(); ++i)
    for (Eigen::Index j = 0; j < G.cols(); ++j)
      if (i != j) offdiag &= G(i, j) == Complex(0.0);
  GramOptions mc{GramMethod::MonteCarlo, 100'000, 17};
  const GramMatrix a = gram_matrix(ball, w, MultiIndexBasis(n, 2, k), mc);
  const GramMatrix b = gram_matrix(ball, w, MultiIndexBasis(n, 2, k), mc);
  const Eigen::MatrixXcd& M = a.entries();
  herm &= (M - M.adjoint()).cwiseAbs().maxCoeff() <= 1e-14 * M.cwiseAbs().maxCoeff();
  pd &= a.cholesky().info() == Eigen::Success;
  const bool det = a.entries() == b.entries();
  const std::string tag = w.name() + " n=" + std::to_string(n) + ": ";
  note(msg, herm, tag + "Hermitian");
  note(msg, pd, tag + "positive definite");
  note(msg, offdiag, tag + "off-diagonal exactness");
  note(msg, det, tag + "MC Gram determinism");
  return herm && pd && offdiag && det;
}

bool mc_determinism(std::string& msg) {
  const DomainSpec ball = DomainSpec::ball(1.0, 2);
  const auto f = [](const Point& p) { return 1.0 - norm_sq(p.coords()); };
  const QuadratureResult a = mc_integrate(ball, f, 300'000, 5);
  const QuadratureResult b = mc_integrate(ball, f, 300'000, 5);
  const QuadratureResult c = mc_integrate(ball, f, 300'000, 6);
  McOptions one_thread{300'000, 5, 16, 1};
  const QuadratureResult d = mc_integrate(ball, f, one_thread);
  const bool ok = a.value == b.value && a.error_estimate == b.error_estimate && a.value != c.value && a.value == d.value;
  return note(msg, ok, "mc_integrate determinism");
}

bool properties(std::string& msg) {
  std::mt19937_64 gen(2024);
  bool ok = true;
  for (const auto& m : catalog_models()) ok &= green_properties(m, gen, msg);
  ok &= gram_properties(Weight::trivial(), 2, 1, msg);
  ok &= gram_properties(Weight::ball_standard(1.5), 2, 1, msg);
  ok &= gram_properties(Weight::radial(RadialProfile::log_singular(), 1), 2, 1, msg);
  ok &= gram_properties(Weight::radial(RadialProfile::scaled_log(2.0), 2), 3, 2, msg);
  ok &= gram_properties(Weight::radial(RadialProfile::log_singular(), 2), 2, 2, msg);
  ok &= mc_determinism(msg);
  return ok;
}

} // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Fubini identity and lift-volume oracle", 10.0, fubini},
      {2, "ball lift ratio constants", 30.0, lift_ratio},
      {3, "radial minimal extension", 10.0, radial_minimal},
      {4, "sharpness chain", 1e9, sharpness},
      {5, "sublevel scaling", 60.0, scaling},
      {6, "property suites", 1e9, properties},
  };
  bool all = true;
  for (const auto& c : criteria) {
    std::string msg;
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.body(msg);
    } catch (const std::exception& e) {
      msg += std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      ok = false;
      msg += (msg.empty() ? "" : "; ") + std::string("over time budget");
    }
    all &= ok;
    std::printf("%s criterion %d: %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                msg.empty() ? "" : " ", msg.c_str());
  }
  return all ? 0 : 1;
}
