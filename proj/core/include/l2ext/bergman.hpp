#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "l2ext/geometry.hpp"
#include "l2ext/point.hpp"
#include "l2ext/weights.hpp"

namespace l2ext {

using MultiIndex = std::vector<int>;

// Monomials z^alpha in C^n with |alpha| <= d, in lexicographic order of alpha.
// The first `split` exponents belong to z' (the coordinates cut out by V),
// the rest to z''.
class MultiIndexBasis {
public:
  MultiIndexBasis(int n, int d, int split);

  int ambient_dim() const noexcept { return n_; }
  int degree() const noexcept { return d_; }
  int split() const noexcept { return k_; }
  std::size_t size() const noexcept { return indices_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }

  std::optional<std::size_t> index_of(const MultiIndex& alpha) const;
  // True when alpha has no z' factor, i.e. the monomial survives restriction to V.
  bool restricts_to_v(std::size_t i) const;

  // z^alpha_i for every basis element.
  std::vector<Complex> evaluate(std::span<const Complex> z) const;

  // Basis restricted to a subset of its monomials (keeps n, d, split).
  MultiIndexBasis subset(const std::vector<std::size_t>& keep) const;

private:
  MultiIndexBasis() = default;

  int n_ = 0;
  int d_ = 0;
  int k_ = 0;
  std::vector<MultiIndex> indices_;
  std::map<MultiIndex, std::size_t> lookup_;
};

enum class GramMethod { RadialExact, MonteCarlo };

struct GramOptions {
  GramMethod method = GramMethod::RadialExact;
  std::int64_t samples = 200'000; // MonteCarlo only
  std::uint64_t seed = 0;
};

struct ExcludedMonomial {
  MultiIndex alpha;
  std::string reason;
};

// Hermitian positive definite Gram matrix of the weighted inner product,
//   G(i, j) = int_Omega conj(z^alpha_i) z^alpha_j e^{-phi} dV,
// so that ||sum_j c_j z^alpha_j||^2 = c^H G c.
class GramMatrix {
public:
  GramMatrix(MultiIndexBasis basis, Eigen::MatrixXcd entries, GramMethod method,
             Eigen::MatrixXd half_widths, std::vector<ExcludedMonomial> excluded);

  const MultiIndexBasis& basis() const noexcept { return basis_; }
  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
  GramMethod method() const noexcept { return method_; }
  // 99% MC half-width per entry (max over real/imaginary part); zero for exact.
  const Eigen::MatrixXd& half_widths() const noexcept { return half_widths_; }
  const std::vector<ExcludedMonomial>& excluded() const noexcept { return excluded_; }
  const Eigen::LLT<Eigen::MatrixXcd>& cholesky() const noexcept { return llt_; }

  double norm_sq(const Eigen::VectorXcd& c) const;

private:
  MultiIndexBasis basis_;
  Eigen::MatrixXcd entries_;
  GramMethod method_;
  Eigen::MatrixXd half_widths_;
  std::vector<ExcludedMonomial> excluded_;
  Eigen::LLT<Eigen::MatrixXcd> llt_;
};

// Radial-exact: unit ball with any catalog weight, a ball of any radius or a
// polydisc with the trivial weight, or a polydisc with a k = 1 radial weight.
// Entries are 1D radial quadratures; off-diagonals are exactly zero.
// MonteCarlo: any bounded domain, all entries from one shared sample set.
GramMatrix gram_matrix(const DomainSpec& domain, const Weight& weight,
                       const MultiIndexBasis& basis, const GramOptions& opts = {});

// Holomorphic polynomial on V = {z' = 0}, keyed by z''-exponents.
using VPolynomial = std::map<MultiIndex, Complex>;

struct BoundComparison {
  std::string name;
  double bound = 0.0;
  double margin = 0.0; // bound - squared_norm
};

struct ExtensionResult {
  MultiIndexBasis basis;
  Eigen::VectorXcd coefficients;
  double squared_norm = 0.0;
  double constraint_residual = 0.0;
  std::vector<BoundComparison> bound_comparisons;

  Complex coefficient(const MultiIndex& alpha) const;
  // max |c_alpha| over monomials with a z' factor.
  double max_transverse_coefficient() const;
};

// Minimizes c^H G c subject to F(0, z'') = f(z''): the coefficient of every
// z'-free monomial is pinned to f's coefficient (or 0). Solved through the
// KKT system [G A^H; A 0] with a Hermitian indefinite factorization.
ExtensionResult min_norm_extension(const VPolynomial& f, const GramMatrix& gram);

// K(p, p) = sum_j |e_j(p)|^2 over a G-orthonormalized basis.
double kernel_diag_at(const GramMatrix& gram, const Point& p);

} // namespace l2ext
