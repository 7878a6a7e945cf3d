#include "l2ext/bergman.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include <lapacke.h>

#include "l2ext/constants.hpp"
#include "l2ext/errors.hpp"
#include "l2ext/integrate.hpp"

namespace l2ext {
namespace {

double fact(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

int total(const MultiIndex& a, std::size_t first, std::size_t last) {
  return std::accumulate(a.begin() + static_cast<std::ptrdiff_t>(first),
                         a.begin() + static_cast<std::ptrdiff_t>(last), 0);
}

double fact_product(const MultiIndex& a, std::size_t first, std::size_t last) {
  double p = 1.0;
  for (std::size_t i = first; i < last; ++i) p *= fact(a[i]);
  return p;
}

std::string to_string(const MultiIndex& a) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ")";
  return os.str();
}

Complex ipow(Complex z, int e) {
  Complex r(1.0, 0.0);
  for (int i = 0; i < e; ++i) r *= z;
  return r;
}

// int_0^1 a^{j+K-1} h(a) da through the radial rule in C^K (a = r^2).
QuadratureResult simplex_moment(int j, int K, const std::function<double(double)>& h) {
  auto q = radial_integrate(
      [&](double r) { return std::pow(r, 2 * j) * h(r * r); }, K, 1.0);
  const double scale = 2.0 / sigma_mu(K).mu;
  q.value *= scale;
  q.error_estimate *= scale;
  return q;
}

// Squared weighted norm of z^alpha for the radial-exact catalog, or nullopt
// (with reason) when the 1D quadrature does not converge.
std::optional<double> exact_monomial_norm(const DomainSpec& domain, const Weight& w,
                                          const MultiIndex& alpha, std::string& reason) {
  const int n = domain.ambient_dim();
  auto finish = [&](const QuadratureResult& q, double factor) -> std::optional<double> {
    if (!q.converged || !std::isfinite(q.value)) {
      reason = "radial quadrature diverged (" + q.warning + ")";
      return std::nullopt;
    }
    return factor * q.value;
  };

  if (domain.kind() == DomainSpec::Kind::Ball) {
    const double R = domain.radius();
    const double gamma = w.ball_exponent();
    const bool radial = w.kind() == Weight::Kind::Radial;
    if (!radial && gamma == 0.0) {
      // Trivial weight: pi^n alpha! R^{2|alpha|+2n} / (|alpha|+n)!
      const int a = total(alpha, 0, alpha.size());
      return std::pow(kPi, n) * fact_product(alpha, 0, alpha.size()) * std::pow(R, 2 * a + 2 * n) /
             fact(a + n);
    }
    if (R != 1.0) throw UnsupportedError("radial-exact Gram: weighted balls must have radius 1");

    const int ks = radial ? w.split() : n;
    if (ks > n) throw InvalidArgument("weight split exceeds the ambient dimension");
    const int m = n - ks;
    const auto k = static_cast<std::size_t>(ks);
    const int ap = total(alpha, 0, k);
    auto F = [&](double a) { return w.radial_factor(a); };
    if (m == 0) {
      auto q = simplex_moment(ap, ks, [&](double a) { return F(a) * std::pow(1.0 - a, gamma); });
      return finish(q, std::pow(kPi, n) * fact_product(alpha, 0, k) / fact(ap + ks - 1));
    }
    // Dirichlet reduction over the z''-block: the b = |z''|^2 integral is a Beta function.
    const int bq = total(alpha, k, alpha.size());
    const double beta = std::beta(static_cast<double>(bq + m), gamma + 1.0);
    auto q = simplex_moment(ap, ks, [&](double a) {
      return F(a) * std::pow(1.0 - a, bq + m + gamma);
    });
    const double factor = std::pow(kPi, n) * fact_product(alpha, 0, k) *
                          fact_product(alpha, k, alpha.size()) /
                          (fact(ap + ks - 1) * fact(bq + m - 1)) * beta;
    return finish(q, factor);
  }

  if (domain.kind() == DomainSpec::Kind::Polydisc) {
    const auto& radii = domain.radii();
    auto flat = [&](std::size_t from) {
      double p = 1.0;
      for (std::size_t i = from; i < alpha.size(); ++i)
        p *= kPi * std::pow(radii[i], 2 * alpha[i] + 2) / (alpha[i] + 1);
      return p;
    };
    if (w.kind() == Weight::Kind::Trivial && w.regularization() == 0.0) return flat(0);
    if (w.kind() == Weight::Kind::Radial && w.split() == 1 && w.regularization() == 0.0 &&
        radii[0] <= 1.0) {
      auto q = radial_integrate(
          [&](double r) { return std::pow(r, 2 * alpha[0]) * w.radial_factor(r * r); }, 1, radii[0]);
      return finish(q, flat(1));
    }
  }
  throw UnsupportedError("radial-exact Gram is not available for " + domain.name() + " with " +
                         w.name() + "; use the Monte Carlo method");
}

GramMatrix monte_carlo_gram(const DomainSpec& domain, const Weight& weight,
                            const MultiIndexBasis& basis, const GramOptions& opts) {
  const std::size_t N = basis.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j) pairs.emplace_back(i, j);

  McOptions mc;
  mc.samples = opts.samples;
  mc.seed = opts.seed;
  const auto box = domain.bounding_box();
  const auto m = mc_box_moments(
      box, static_cast<int>(2 * pairs.size()),
      [&](std::span<const Complex> z, std::span<double> out) {
        if (!domain.contains(z)) return false;
        const double phi = weight.value_or_inf(z);
        const double ew = std::isfinite(phi) ? std::exp(-phi) : 0.0;
        const auto mono = basis.evaluate(z);
        for (std::size_t p = 0; p < pairs.size(); ++p) {
          const Complex v = std::conj(mono[pairs[p].first]) * mono[pairs[p].second] * ew;
          out[2 * p] = v.real();
          out[2 * p + 1] = v.imag();
        }
        return true;
      },
      mc);

  Eigen::MatrixXcd G(N, N);
  Eigen::MatrixXd hw(N, N);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    const auto ii = static_cast<Eigen::Index>(i);
    const auto jj = static_cast<Eigen::Index>(j);
    const Complex v(m.value[2 * p], i == j ? 0.0 : m.value[2 * p + 1]);
    G(ii, jj) = v;
    G(jj, ii) = std::conj(v);
    hw(ii, jj) = hw(jj, ii) = std::max(m.half_width[2 * p], m.half_width[2 * p + 1]);
  }
  return GramMatrix(basis, std::move(G), GramMethod::MonteCarlo, std::move(hw), {});
}

} // namespace

// ---------------------------------------------------------------------------

MultiIndexBasis::MultiIndexBasis(int n, int d, int split) : n_(n), d_(d), k_(split) {
  if (n < 1) throw InvalidArgument("basis needs n >= 1");
  if (d < 0) throw InvalidArgument("basis needs degree >= 0");
  if (split < 0 || split > n) throw InvalidArgument("basis split must lie in [0, n]");
  MultiIndex alpha(static_cast<std::size_t>(n), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
    if (pos == alpha.size()) {
      lookup_.emplace(alpha, indices_.size());
      indices_.push_back(alpha);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      alpha[pos] = e;
      rec(pos + 1, left - e);
    }
    alpha[pos] = 0;
  };
  rec(0, d);
}

std::optional<std::size_t> MultiIndexBasis::index_of(const MultiIndex& alpha) const {
  auto it = lookup_.find(alpha);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

bool MultiIndexBasis::restricts_to_v(std::size_t i) const {
  const auto& a = indices_[i];
  return std::all_of(a.begin(), a.begin() + k_, [](int e) { return e == 0; });
}

std::vector<Complex> MultiIndexBasis::evaluate(std::span<const Complex> z) const {
  if (z.size() != static_cast<std::size_t>(n_))
    throw InvalidArgument("basis evaluation: point has the wrong dimension");
  std::vector<Complex> out(indices_.size());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    Complex v(1.0, 0.0);
    for (std::size_t j = 0; j < z.size(); ++j)
      if (indices_[i][j] != 0) v *= ipow(z[j], indices_[i][j]);
    out[i] = v;
  }
  return out;
}

MultiIndexBasis MultiIndexBasis::subset(const std::vector<std::size_t>& keep) const {
  MultiIndexBasis b;
  b.n_ = n_;
  b.d_ = d_;
  b.k_ = k_;
  for (std::size_t i : keep) {
    b.lookup_.emplace(indices_.at(i), b.indices_.size());
    b.indices_.push_back(indices_.at(i));
  }
  return b;
}

GramMatrix::GramMatrix(MultiIndexBasis basis, Eigen::MatrixXcd entries, GramMethod method,
                       Eigen::MatrixXd half_widths, std::vector<ExcludedMonomial> excluded)
    : basis_(std::move(basis)), entries_(std::move(entries)), method_(method),
      half_widths_(std::move(half_widths)), excluded_(std::move(excluded)) {
  llt_.compute(entries_);
  bool pd = llt_.info() == Eigen::Success;
  if (pd) {
    // Relative pivots: rank-deficient sample Grams leave rounding-level pivots.
    const Eigen::VectorXcd diag = llt_.matrixLLT().diagonal();
    for (Eigen::Index i = 0; i < diag.size(); ++i)
      pd = pd && std::norm(diag(i)) > 1e-13 * entries_(i, i).real();
  }
  if (!pd) {
    throw NumericalError(method_ == GramMethod::MonteCarlo
                             ? "Gram matrix is not positive definite; increase the Monte Carlo samples"
                             : "Gram matrix is not positive definite");
  }
}

double GramMatrix::norm_sq(const Eigen::VectorXcd& c) const {
  return (c.adjoint() * entries_ * c)(0, 0).real();
}

GramMatrix gram_matrix(const DomainSpec& domain, const Weight& weight,
                       const MultiIndexBasis& basis, const GramOptions& opts) {
  if (basis.ambient_dim() != domain.ambient_dim())
    throw InvalidArgument("gram_matrix: basis and domain dimensions differ");
  if (opts.method == GramMethod::MonteCarlo) return monte_carlo_gram(domain, weight, basis, opts);

  std::vector<std::size_t> keep;
  std::vector<double> diag;
  std::vector<ExcludedMonomial> excluded;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::string reason;
    const auto v = exact_monomial_norm(domain, weight, basis[i], reason);
    if (v && *v > 0.0) {
      keep.push_back(i);
      diag.push_back(*v);
    } else {
      excluded.push_back({basis[i], "z^" + to_string(basis[i]) + ": " + (v ? std::string("zero norm") : reason)});
    }
  }
  const auto N = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(N, N);
  for (Eigen::Index i = 0; i < N; ++i) G(i, i) = diag[static_cast<std::size_t>(i)];
  return GramMatrix(basis.subset(keep), std::move(G), GramMethod::RadialExact,
                    Eigen::MatrixXd::Zero(N, N), std::move(excluded));
}

// ---------------------------------------------------------------------------

Complex ExtensionResult::coefficient(const MultiIndex& alpha) const {
  const auto i = basis.index_of(alpha);
  if (!i) return {};
  return coefficients(static_cast<Eigen::Index>(*i));
}

double ExtensionResult::max_transverse_coefficient() const {
  double m = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!basis.restricts_to_v(i)) m = std::max(m, std::abs(coefficients(static_cast<Eigen::Index>(i))));
  return m;
}

ExtensionResult min_norm_extension(const VPolynomial& f, const GramMatrix& gram) {
  const auto& basis = gram.basis();
  const int k = basis.split();
  const std::size_t vdim = static_cast<std::size_t>(basis.ambient_dim() - k);

  // Constraint rows: one per z'-free monomial of the basis.
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis.restricts_to_v(i)) rows.push_back(i);

  Eigen::VectorXcd target = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rows.size()));
  for (const auto& [beta, coeff] : f) {
    if (beta.size() != vdim) throw InvalidArgument("min_norm_extension: f exponent has the wrong length");
    MultiIndex alpha(static_cast<std::size_t>(k), 0);
    alpha.insert(alpha.end(), beta.begin(), beta.end());
    const auto idx = basis.index_of(alpha);
    if (!idx) {
      const int needed = std::accumulate(beta.begin(), beta.end(), 0);
      throw InvalidArgument("min_norm_extension: f has a monomial of degree " + std::to_string(needed) +
                            " outside the basis; degree >= " + std::to_string(needed) + " is needed");
    }
    const auto r = std::find(rows.begin(), rows.end(), *idx) - rows.begin();
    target(r) = coeff;
  }

  const auto N = static_cast<lapack_int>(basis.size());
  const auto M = static_cast<lapack_int>(rows.size());
  const lapack_int S = N + M;
  Eigen::MatrixXcd kkt = Eigen::MatrixXcd::Zero(S, S);
  kkt.topLeftCorner(N, N) = gram.entries();
  for (lapack_int r = 0; r < M; ++r) {
    const auto col = static_cast<Eigen::Index>(rows[static_cast<std::size_t>(r)]);
    kkt(N + r, col) = 1.0;
    kkt(col, N + r) = 1.0;
  }
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(S);
  rhs.tail(M) = target;

  std::vector<lapack_int> ipiv(static_cast<std::size_t>(S));
  const lapack_int info = LAPACKE_zhesv(LAPACK_COL_MAJOR, 'U', S, 1,
                                        reinterpret_cast<lapack_complex_double*>(kkt.data()), S,
                                        ipiv.data(), reinterpret_cast<lapack_complex_double*>(rhs.data()), S);
  if (info != 0)
    throw NumericalError("min_norm_extension: KKT factorization failed (info=" + std::to_string(info) + ")");

  ExtensionResult out{basis, rhs.head(N), 0.0, 0.0, {}};
  out.squared_norm = gram.norm_sq(out.coefficients);
  for (lapack_int r = 0; r < M; ++r) {
    const auto col = static_cast<Eigen::Index>(rows[static_cast<std::size_t>(r)]);
    out.constraint_residual = std::max(out.constraint_residual, std::abs(out.coefficients(col) - target(r)));
  }
  return out;
}

double kernel_diag_at(const GramMatrix& gram, const Point& p) {
  const auto mono = gram.basis().evaluate(p.coords());
  Eigen::VectorXcd v(static_cast<Eigen::Index>(mono.size()));
  for (std::size_t i = 0; i < mono.size(); ++i) v(static_cast<Eigen::Index>(i)) = std::conj(mono[i]);
  // K = v^H G^{-1} v = |L^{-1} v|^2
  const Eigen::VectorXcd y = gram.cholesky().matrixL().solve(v);
  return y.squaredNorm();
}

} // namespace l2ext
